#include "res1d/anderson.hpp"

#include <algorithm>
#include <cmath>

namespace res1d {

namespace {

double cocycle_log_growth(const DisorderLaw& law, std::uint64_t seed, double E, long length,
                          bool backward) {
  SplitMix64 rng(seed);
  // Propagate u_{n+1} = T_n u_n (or the inverse cocycle) with log
  // accumulation every 16 steps.
  double u0 = 1.0, u1 = 0.0;  // (u_cur, u_prev)
  double logacc = 0.0;
  for (long n = 0; n < length; ++n) {
    const double v = law.sample(rng);
    double a, b;
    if (!backward) {
      a = (E - v) * u0 - u1;  // next
      b = u0;
    } else {
      // T^{-1} = [[0, 1], [-1, E - v]] acting on (u_cur, u_prev).
      a = u1;
      b = -u0 + (E - v) * u1;
    }
    u0 = a;
    u1 = b;
    if ((n & 15) == 15) {
      const double norm = std::sqrt(u0 * u0 + u1 * u1);
      logacc += std::log(norm);
      u0 /= norm;
      u1 /= norm;
    }
  }
  const double norm = std::sqrt(u0 * u0 + u1 * u1);
  logacc += std::log(norm);
  return logacc / (static_cast<double>(length) + 1.0);
}

LyapunovEstimate lyapunov_impl(const AndersonEnsemble& ens, double E, long length, int replicas,
                               std::uint64_t stream_offset, bool backward) {
  if (length < 1000) throw ConfigInvalidError("lyapunov: length must be >= 1e3");
  std::vector<double> vals(static_cast<std::size_t>(replicas));
  for (int r = 0; r < replicas; ++r) {
    const std::uint64_t seed =
        substream_seed(ens.master_seed, stream_offset + static_cast<std::uint64_t>(r));
    vals[static_cast<std::size_t>(r)] = cocycle_log_growth(ens.law, seed, E, length, backward);
  }
  LyapunovEstimate est;
  for (double v : vals) est.rho += v;
  est.rho /= replicas;
  if (replicas > 1) {
    double var = 0.0;
    for (double v : vals) var += (v - est.rho) * (v - est.rho);
    var /= (replicas - 1.0);
    est.stderr_ = std::sqrt(var / replicas);
  }
  return est;
}

}  // namespace

LyapunovEstimate lyapunov(const AndersonEnsemble& ens, double E, long length, int replicas,
                          std::uint64_t stream_offset) {
  return lyapunov_impl(ens, E, length, replicas, stream_offset, false);
}

LyapunovEstimate lyapunov_backward(const AndersonEnsemble& ens, double E, long length, int replicas,
                                   std::uint64_t stream_offset) {
  return lyapunov_impl(ens, E, length, replicas, stream_offset, true);
}

double ids(const AndersonEnsemble& ens, double E, int L, int replicas, std::uint64_t stream_offset) {
  if (L < 1000) throw ConfigInvalidError("ids: L must be >= 1e3");
  double acc = 0.0;
  for (int r = 0; r < replicas; ++r) {
    const VecXd V = ens.potential().diagonal(L, stream_offset + static_cast<std::uint64_t>(r));
    acc += static_cast<double>(sturm_count(V, E)) / (L + 1.0);
  }
  return acc / replicas;
}

LyapunovCurve LyapunovCurve::build(const AndersonEnsemble& ens, double lo, double hi, double step,
                                   long rho_length, int rho_replicas, int ids_box,
                                   double ids_halfwidth) {
  LyapunovCurve c;
  for (double E = lo; E <= hi + 1e-12; E += step) c.grid_.push_back(E);

  // One shared large box per replica pair for all IDS evaluations.
  const int R = 4;
  std::vector<VecXd> boxes;
  for (int r = 0; r < R; ++r) {
    boxes.push_back(ens.potential().diagonal(ids_box, (3u << 20) + static_cast<std::uint64_t>(r)));
  }
  auto N_of = [&](double E) {
    double acc = 0.0;
    for (const auto& V : boxes) acc += static_cast<double>(sturm_count(V, E)) / (ids_box + 1.0);
    return acc / R;
  };

  for (double E : c.grid_) {
    const LyapunovEstimate le = lyapunov(ens, E, rho_length, rho_replicas);
    c.rho_.push_back(le.rho);
    c.rho_err_.push_back(le.stderr_);
    c.n_.push_back((N_of(E + ids_halfwidth) - N_of(E - ids_halfwidth)) / (2.0 * ids_halfwidth));
    c.ids_.push_back(N_of(E));
  }
  return c;
}

double LyapunovCurve::interp(const std::vector<double>& y, double E) const {
  if (grid_.empty()) throw Error("LyapunovCurve: empty grid");
  if (E <= grid_.front()) return y.front();
  if (E >= grid_.back()) return y.back();
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), E);
  const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  const double t = (E - grid_[i]) / (grid_[i + 1] - grid_[i]);
  return (1.0 - t) * y[i] + t * y[i + 1];
}

double LyapunovCurve::rho(double E) const { return interp(rho_, E); }
double LyapunovCurve::n(double E) const { return interp(n_, E); }

double LyapunovCurve::integral_n(double a, double b) const { return interp(ids_, b) - interp(ids_, a); }

double LyapunovCurve::integral_min_c_over_rho_n(double a, double b, double c) const {
  double acc = 0.0;
  const int steps = 400;
  for (int i = 0; i < steps; ++i) {
    const double x0 = a + (b - a) * i / steps;
    const double x1 = a + (b - a) * (i + 1.0) / steps;
    const double mid = 0.5 * (x0 + x1);
    acc += std::min(c / rho(mid), 1.0) * (interp(ids_, x1) - interp(ids_, x0));
  }
  return acc;
}

double LyapunovCurve::integral_n_over_rho(double a, double b) const {
  double acc = 0.0;
  const int steps = 400;
  for (int i = 0; i < steps; ++i) {
    const double x0 = a + (b - a) * i / steps;
    const double x1 = a + (b - a) * (i + 1.0) / steps;
    const double mid = 0.5 * (x0 + x1);
    acc += (interp(ids_, x1) - interp(ids_, x0)) / rho(mid);
  }
  return acc;
}

double LyapunovCurve::max_rho(double a, double b) const {
  double m = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (grid_[i] >= a && grid_[i] <= b) m = std::max(m, rho_[i]);
  }
  return m;
}

std::vector<LocalizationRecord> localization_diagnostics(const VecXd& V,
                                                         const DirichletSpectrum& spec,
                                                         double delta) {
  std::vector<LocalizationRecord> out;
  const int L = spec.L;
  for (int j = 0; j < spec.size(); ++j) {
    const LogProfile pr = eigenvector_log_profile(V, spec.lambda[j]);
    LocalizationRecord rec;
    rec.j = j;
    rec.lambda = spec.lambda[j];
    rec.center = pr.center;
    const int xc = pr.center;
    const double min_dist = delta * L;
    // log(|phi(x)| + |phi(x-1)|) against |x - x_c|, one side at a time.
    auto regress = [&](int dir, double& slope) -> bool {
      std::vector<double> xs, ys;
      for (int x = 1; x <= L; ++x) {
        if (dir > 0 && x <= xc) continue;
        if (dir < 0 && x > xc) continue;
        const double dist = std::abs(static_cast<double>(x) - xc);
        if (dist < min_dist) continue;
        const double y = log_sum_exp({pr.log_abs[static_cast<std::size_t>(x)],
                                      pr.log_abs[static_cast<std::size_t>(x - 1)]});
        if (!std::isfinite(y)) continue;
        xs.push_back(dist);
        ys.push_back(y);
      }
      if (xs.size() < 4) return false;
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
      }
      const double n = static_cast<double>(xs.size());
      slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      return true;
    };
    rec.right_ok = regress(+1, rec.slope_right);
    rec.left_ok = regress(-1, rec.slope_left);
    out.push_back(rec);
  }
  return out;
}

}  // namespace res1d
