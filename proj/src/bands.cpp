#include "res1d/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace res1d {

namespace {

double bisect(const std::function<double(double)>& g, double lo, double hi, double tol = 1e-13) {
  double flo = g(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = g(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BandStructure BandStructure::build(const PeriodicSpec& pot, double grid_step) {
  BandStructure bs;
  bs.pot_ = pot;
  const int p = pot.period;
  const double vmin = *std::min_element(pot.values.begin(), pot.values.end());
  const double vmax = *std::max_element(pot.values.begin(), pot.values.end());
  const double lo = vmin - 2.0 - 1e-9;
  const double hi = vmax + 2.0 + 1e-9;

  auto delta = [&](double E) { return discriminant_at(pot, E); };
  auto ddelta = [&](double E) { return discriminant_derivative_at(pot, E); };

  auto attempt = [&](double step) {
    std::vector<double> edges;
    const int n = static_cast<int>(std::ceil((hi - lo) / step));
    double prev = lo;
    double dprev = delta(prev);
    double ddprev = ddelta(prev);
    for (int i = 1; i <= n; ++i) {
      const double cur = std::min(lo + i * step, hi);
      const double dcur = delta(cur);
      const double ddcur = ddelta(cur);
      for (double s : {2.0, -2.0}) {
        if ((dprev - s) == 0.0 || ((dprev - s) < 0.0) != ((dcur - s) < 0.0)) {
          edges.push_back(bisect([&](double E) { return delta(E) - s; }, prev, cur));
        }
      }
      // Critical points touching |Delta| = 2 (closed gaps) leave no sign
      // change; hunt them through Delta'.
      if ((ddprev < 0.0) != (ddcur < 0.0)) {
        const double Ec = bisect(ddelta, prev, cur);
        const double dc = delta(Ec);
        if (std::abs(std::abs(dc) - 2.0) < 1e-9) {
          edges.push_back(Ec);
          edges.push_back(Ec);
        }
      }
      prev = cur;
      dprev = dcur;
      ddprev = ddcur;
    }
    std::sort(edges.begin(), edges.end());
    return edges;
  };

  for (int round = 0;; ++round) {
    const std::vector<double> edges = attempt(round == 0 ? grid_step : grid_step / 10.0);
    // Deduplicate while keeping doubled entries that mark touching points.
    std::vector<double> uniq;
    std::vector<int> mult;
    for (double e : edges) {
      if (!uniq.empty() && e - uniq.back() < 1e-9) {
        ++mult.back();
      } else {
        uniq.push_back(e);
        mult.push_back(1);
      }
    }
    std::vector<BandPiece> pieces;
    std::vector<double> cuts;  // piece boundaries in order
    for (std::size_t i = 0; i < uniq.size(); ++i) {
      cuts.push_back(uniq[i]);
      if (mult[i] >= 2) cuts.push_back(uniq[i]);
    }
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double a = cuts[i], b = cuts[i + 1];
      if (b - a < 1e-12) continue;
      const double mid = 0.5 * (a + b);
      if (std::abs(delta(mid)) < 2.0) {
        BandPiece piece;
        piece.lo = a;
        piece.hi = b;
        piece.orientation = (delta(a) > 0.0) ? +1 : -1;
        piece.index = static_cast<int>(pieces.size());
        pieces.push_back(piece);
      }
    }
    if (static_cast<int>(pieces.size()) == p || round == 1) {
      if (static_cast<int>(pieces.size()) > p) {
        throw GridTooCoarseError("band_spectrum: more monotone pieces than the period allows");
      }
      if (static_cast<int>(pieces.size()) < p && round == 1) {
        throw GridTooCoarseError("band_spectrum: missed band pieces after refinement");
      }
      if (static_cast<int>(pieces.size()) == p) {
        bs.bands_ = std::move(pieces);
        return bs;
      }
    }
  }
}

int BandStructure::band_of(double E) const {
  for (const auto& b : bands_) {
    if (E > b.lo && E < b.hi) return b.index;
  }
  return -1;
}

double BandStructure::t_of(double E, const BandPiece& b) const {
  const double u = std::clamp(discriminant(E) / 2.0, -1.0, 1.0);
  const double tau = std::acos(u);
  return (b.orientation > 0) ? tau : M_PI - tau;
}

double BandStructure::theta_p(double E) const {
  const int bi = band_of(E);
  if (bi < 0) throw BandEdgeError("theta_p: E not in a band interior");
  const BandPiece& b = bands_[static_cast<std::size_t>(bi)];
  if (std::min(E - b.lo, b.hi - E) < 1e-10 || std::abs(std::abs(discriminant(E)) - 2.0) < 1e-10) {
    throw BandEdgeError("theta_p: within 1e-10 of a band edge");
  }
  return (b.index * M_PI + t_of(E, b)) / pot_.period;
}

double BandStructure::dos(double E) const {
  const int bi = band_of(E);
  if (bi < 0) throw BandEdgeError("dos: E not in a band interior");
  const BandPiece& b = bands_[static_cast<std::size_t>(bi)];
  const double d = discriminant(E);
  const double s = 4.0 - d * d;
  if (s < 1e-20) throw BandEdgeError("dos: within 1e-10 of |Delta| = 2");
  const double tprime = -b.orientation * discriminant_derivative(E) / std::sqrt(s);
  return tprime / (pot_.period * M_PI);
}

Complex BandStructure::theta_p(Complex E, int band) const {
  const BandPiece& b = bands_.at(static_cast<std::size_t>(band));
  const Complex u = discriminant(E) / 2.0;
  const Complex tau = std::acos(u);
  const Complex t = (b.orientation > 0) ? tau : Complex(M_PI, 0.0) - tau;
  return (static_cast<double>(b.index) * M_PI + t) / static_cast<double>(pot_.period);
}

Complex BandStructure::dos(Complex E, int band) const {
  const BandPiece& b = bands_.at(static_cast<std::size_t>(band));
  const Complex u = discriminant(E) / 2.0;
  const Complex s = 2.0 * std::sqrt(Complex(1.0, 0.0) - u * u);
  const Complex tprime = -static_cast<double>(b.orientation) * discriminant_derivative(E) / s;
  return tprime / (pot_.period * M_PI);
}

double BandStructure::ids(double E) const {
  const int p = pot_.period;
  double acc = 0.0;
  for (const auto& b : bands_) {
    if (E >= b.hi) {
      acc += 1.0 / p;
    } else if (E > b.lo) {
      acc += t_of(E, b) / (M_PI * p);
    }
  }
  return acc;
}

double BandStructure::energy_of_t(int band, double t) const {
  const BandPiece& b = bands_.at(static_cast<std::size_t>(band));
  const double target = (b.orientation > 0 ? 2.0 : -2.0) * std::cos(t);
  // Delta is monotone on the piece; bracket then bisect.
  double lo = b.lo, hi = b.hi;
  const bool decreasing = b.orientation > 0;
  for (int it = 0; it < 100 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double d = discriminant(mid);
    const bool go_right = decreasing ? (d > target) : (d < target);
    if (go_right) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<GapEigenvalue> halfline_gap_eigenvalues(const PeriodicSpec& pot) {
  std::vector<GapEigenvalue> out;
  const int p = pot.period;
  if (p < 2) return out;
  const double vmin = *std::min_element(pot.values.begin(), pot.values.end());
  const double vmax = *std::max_element(pot.values.begin(), pot.values.end());
  auto entry = [&](double E) { return partial_products(pot.values, E, p - 1).a[static_cast<std::size_t>(p - 1)]; };
  const double lo = vmin - 2.0 - 1e-6, hi = vmax + 2.0 + 1e-6;
  const double step = 1e-3;
  double prev = lo, fprev = entry(prev);
  for (double cur = lo + step; cur < hi + step; cur += step) {
    const double fcur = entry(cur);
    if ((fprev < 0.0) != (fcur < 0.0)) {
      const double E = bisect(entry, prev, cur);
      const Partials<double> pp = partial_products(pot.values, E, p);
      const double ap = pp.a[static_cast<std::size_t>(p)];
      if (std::abs(ap) < 1.0 && std::abs(discriminant_at(pot, E)) > 2.0) {
        double norm = 0.0;
        for (int l = 0; l < p; ++l) norm += pp.a[static_cast<std::size_t>(l)] * pp.a[static_cast<std::size_t>(l)];
        out.push_back({E, (1.0 - ap * ap) / norm, ap});
      }
    }
    prev = cur;
    fprev = fcur;
  }
  return out;
}

FloquetWeights::FloquetWeights(const BandStructure& bs, int k) : bs_(&bs), k_(k) {
  // Dense per-band unwrap grids for arg alpha_{k+1}.
  const PeriodicSpec& pot = bs.potential();
  const int p = pot.period;
  for (const auto& band : bs.bands()) {
    Unwrap u;
    const int n = 2048;
    const double margin = 1e-6 * (band.hi - band.lo);
    double phase = 0.0;
    Complex prev_alpha;
    for (int i = 0; i < n; ++i) {
      const double E = band.lo + margin + (band.hi - band.lo - 2.0 * margin) * i / (n - 1.0);
      const Partials<double> pp = partial_products(pot.values, E, p);
      const Mat2<double> M = monodromy_matrix(pot, 0, E);
      const double delta = M.trace();
      const double uu = std::clamp(delta / 2.0, -1.0, 1.0);
      const Complex rho(uu, std::sqrt(std::max(1.0 - uu * uu, 0.0)));
      const Complex alpha = pp.a[static_cast<std::size_t>(k + 1)] * (M(0, 0) - 1.0 / rho) +
                            pp.b[static_cast<std::size_t>(k + 1)] * M(1, 0);
      if (i == 0) {
        phase = std::arg(alpha);
      } else {
        phase += std::arg(alpha / prev_alpha);
      }
      prev_alpha = alpha;
      u.E.push_back(E);
      u.phase.push_back(phase);
    }
    unwrap_.push_back(std::move(u));
  }
}

FloquetWeights::Values FloquetWeights::at(double E) const {
  const BandStructure& bs = *bs_;
  const int bi = bs.band_of(E);
  if (bi < 0) throw BandEdgeError("floquet weights: E not in a band interior");
  const PeriodicSpec& pot = bs.potential();
  const int p = pot.period;
  const Partials<double> pp = partial_products(pot.values, E, p);
  const Mat2<double> M = monodromy_matrix(pot, 0, E);
  const double delta = M.trace();
  const double uu = std::clamp(delta / 2.0, -1.0, 1.0);
  if (1.0 - uu * uu < 1e-20) throw BandEdgeError("floquet weights: band edge");
  const Complex rho(uu, std::sqrt(1.0 - uu * uu));
  const double apm1 = M(1, 0);

  std::vector<Complex> alpha(static_cast<std::size_t>(p) + 1);
  for (int m = 0; m <= p; ++m) {
    alpha[static_cast<std::size_t>(m)] =
        pp.a[static_cast<std::size_t>(m)] * (M(0, 0) - 1.0 / rho) + pp.b[static_cast<std::size_t>(m)] * apm1;
  }

  Values v;
  double f = 0.0;
  for (int m = 0; m < p; ++m) f += std::norm(alpha[static_cast<std::size_t>(m)]);
  f *= 2.0 / p;
  v.f = f;
  const Complex one_minus_rho2 = 1.0 - rho * rho;
  v.f0 = std::norm(one_minus_rho2) / f;
  const double alpha_k1_sq = std::norm(alpha[static_cast<std::size_t>(k_ + 1)]);
  v.fk = v.f0 * apm1 * apm1 / alpha_k1_sq;
  v.hk = hk(E);

  // Exact finite-period correction R_k; tilde_f = R_k / f.
  const Complex w = std::conj(alpha[static_cast<std::size_t>(k_ + 1)]) / alpha[static_cast<std::size_t>(k_ + 1)];
  double R = 0.0;
  for (int m = 0; m < p; ++m) {
    const Complex am = alpha[static_cast<std::size_t>(m)];
    const Complex r = am / std::conj(am);
    R += -2.0 * std::norm(am) * (r * (1.0 - w) / one_minus_rho2).real();
  }
  for (int m = 0; m <= k_; ++m) {
    const Complex am = alpha[static_cast<std::size_t>(m)];
    const Complex r = am / std::conj(am);
    R += 2.0 * std::norm(am) * (1.0 - (r * w).real());
  }
  v.tilde_f = R / f;
  return v;
}

double FloquetWeights::raw_phase(double E) const {
  const PeriodicSpec& pot = bs_->potential();
  const int p = pot.period;
  const Partials<double> pp = partial_products(pot.values, E, p);
  const Mat2<double> M = monodromy_matrix(pot, 0, E);
  const double delta = M.trace();
  const double uu = std::clamp(delta / 2.0, -1.0, 1.0);
  const Complex rho(uu, std::sqrt(std::max(1.0 - uu * uu, 0.0)));
  const Complex alpha = pp.a[static_cast<std::size_t>(k_ + 1)] * (M(0, 0) - 1.0 / rho) +
                        pp.b[static_cast<std::size_t>(k_ + 1)] * M(1, 0);
  return std::arg(alpha);
}

double FloquetWeights::hk(double E) const {
  const int bi = bs_->band_of(E);
  if (bi < 0) throw BandEdgeError("hk: E not in a band interior");
  const Unwrap& u = unwrap_[static_cast<std::size_t>(bi)];
  const auto it = std::lower_bound(u.E.begin(), u.E.end(), E);
  std::size_t i = (it == u.E.begin()) ? 0 : static_cast<std::size_t>(it - u.E.begin() - 1);
  // Anchor the principal value at the nearest grid point.
  const double anchor_phase = u.phase[i];
  const double dphi = std::arg(std::polar(1.0, raw_phase(E) - raw_phase(u.E[i])));
  const double phase = anchor_phase + dphi;
  const int o = bs_->bands()[static_cast<std::size_t>(bi)].orientation;
  return -o * phase;
}

double FloquetWeights::theta_pL(double E, int L) const {
  return bs_->theta_p(E) - hk(E) / (L - k_);
}

Complex FloquetWeights::f0_c(Complex E, int band) const {
  const PeriodicSpec& pot = bs_->potential();
  const int p = pot.period;
  const Partials<Complex> pp = partial_products(pot.values, E, p);
  const Mat2<Complex> M = monodromy_matrix(pot, 0, E);
  const Complex rho = std::exp(Complex(0.0, 1.0) * std::acos(M.trace() / 2.0));
  Complex f = 0.0;
  for (int m = 0; m < p; ++m) {
    const Complex al = pp.a[static_cast<std::size_t>(m)] * (M(0, 0) - 1.0 / rho) +
                       pp.b[static_cast<std::size_t>(m)] * M(1, 0);
    const Complex be = pp.a[static_cast<std::size_t>(m)] * (M(0, 0) - rho) +
                       pp.b[static_cast<std::size_t>(m)] * M(1, 0);
    f += al * be;
  }
  f *= 2.0 / p;
  (void)band;
  return (1.0 - rho * rho) * (1.0 - 1.0 / (rho * rho)) / f;
}

Complex FloquetWeights::fk_c(Complex E, int band) const {
  const PeriodicSpec& pot = bs_->potential();
  const int p = pot.period;
  const Partials<Complex> pp = partial_products(pot.values, E, p);
  const Mat2<Complex> M = monodromy_matrix(pot, 0, E);
  const Complex rho = std::exp(Complex(0.0, 1.0) * std::acos(M.trace() / 2.0));
  const Complex al = pp.a[static_cast<std::size_t>(k_ + 1)] * (M(0, 0) - 1.0 / rho) +
                     pp.b[static_cast<std::size_t>(k_ + 1)] * M(1, 0);
  const Complex be = pp.a[static_cast<std::size_t>(k_ + 1)] * (M(0, 0) - rho) +
                     pp.b[static_cast<std::size_t>(k_ + 1)] * M(1, 0);
  const Complex f0 = f0_c(E, band);
  return f0 * M(1, 0) * M(1, 0) / (al * be);
}

Complex FloquetWeights::hk_c(Complex E, int band) const {
  const PeriodicSpec& pot = bs_->potential();
  const int p = pot.period;
  const Partials<Complex> pp = partial_products(pot.values, E, p);
  const Mat2<Complex> M = monodromy_matrix(pot, 0, E);
  const Complex rho = std::exp(Complex(0.0, 1.0) * std::acos(M.trace() / 2.0));
  const Complex al = pp.a[static_cast<std::size_t>(k_ + 1)] * (M(0, 0) - 1.0 / rho) +
                     pp.b[static_cast<std::size_t>(k_ + 1)] * M(1, 0);
  const Complex be = pp.a[static_cast<std::size_t>(k_ + 1)] * (M(0, 0) - rho) +
                     pp.b[static_cast<std::size_t>(k_ + 1)] * M(1, 0);
  const int o = bs_->bands().at(static_cast<std::size_t>(band)).orientation;
  const double h0 = hk(E.real());
  Complex ratio = be / al;
  if (o < 0) ratio = 1.0 / ratio;
  // e^{2 i h} = (beta/alpha)^o; anchor at the real-axis unwrap.
  const Complex corr = std::log(ratio * std::polar(1.0, -2.0 * h0)) / Complex(0.0, 2.0);
  return h0 + corr;
}

}  // namespace res1d
