#include "res1d/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "res1d/csvio.hpp"

namespace res1d {

int sturm_count(const VecXd& V, double x) {
  const int n = static_cast<int>(V.size());
  int count = 0;
  double q = V[0] - x;
  if (q < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    if (q == 0.0) q = 1e-300;
    q = (V[i] - x) - 1.0 / q;
    if (q < 0.0) ++count;
  }
  return count;
}

VecXd sturm_eigenvalues(const VecXd& V, double tol) {
  const int n = static_cast<int>(V.size());
  const double vmin = V.minCoeff() - 2.0 - 1e-10;
  const double vmax = V.maxCoeff() + 2.0 + 1e-10;
  VecXd lam(n);
  for (int j = 0; j < n; ++j) {
    double lo = vmin, hi = vmax;
    // Invariant: count(lo) <= j < count(hi).
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;  // hit double resolution
      if (sturm_count(V, mid) <= j) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    lam[j] = 0.5 * (lo + hi);
  }
  return lam;
}

LogProfile eigenvector_log_profile(const VecXd& V, double lam) {
  const int n = static_cast<int>(V.size());
  LogProfile pr;
  pr.log_abs.assign(static_cast<std::size_t>(n), 0.0);
  pr.sign.assign(static_cast<std::size_t>(n), 0);

  // Forward sweep u(-1) = 0, u(0) = 1 and backward sweep u(L+1) = 0,
  // u(L) = 1, both rescaled on the fly.  Each sweep tracks the solution
  // that grows toward the localization center, so it is accurate there.
  std::vector<double> A(static_cast<std::size_t>(n));
  std::vector<int> As(static_cast<std::size_t>(n));
  std::vector<double> B(static_cast<std::size_t>(n));
  std::vector<int> Bs(static_cast<std::size_t>(n));

  auto sweep = [&](bool forward, std::vector<double>& logabs, std::vector<int>& sgn) {
    double uprev = 0.0, ucur = 1.0, shift = 0.0;
    const int start = forward ? 0 : n - 1;
    const int step = forward ? 1 : -1;
    logabs[static_cast<std::size_t>(start)] = 0.0;
    sgn[static_cast<std::size_t>(start)] = 1;
    int i = start;
    for (int k = 1; k < n; ++k) {
      const double unext = (lam - V[i]) * ucur - uprev;
      uprev = ucur;
      ucur = unext;
      i += step;
      const double mag = std::max(std::abs(ucur), std::abs(uprev));
      if (mag > 1e150) {
        const double s = std::log(mag);
        shift += s;
        const double f = std::exp(-s);
        ucur *= f;
        uprev *= f;
      } else if (mag > 0.0 && mag < 1e-150) {
        const double s = std::log(mag);
        shift += s;
        const double f = std::exp(-s);
        ucur *= f;
        uprev *= f;
      }
      logabs[static_cast<std::size_t>(i)] =
          (ucur == 0.0) ? -std::numeric_limits<double>::infinity() : shift + std::log(std::abs(ucur));
      sgn[static_cast<std::size_t>(i)] = (ucur > 0.0) ? 1 : (ucur < 0.0 ? -1 : 0);
    }
  };
  sweep(true, A, As);
  sweep(false, B, Bs);

  // Left-most maximum of A + B = 2 log|phi| + const.
  int xstar = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double s = A[static_cast<std::size_t>(i)] + B[static_cast<std::size_t>(i)];
    if (s > best + 1e-12) {
      best = s;
      xstar = i;
    }
  }
  pr.center = xstar;

  std::vector<double> rel(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rel[static_cast<std::size_t>(i)] = (i <= xstar)
                                           ? A[static_cast<std::size_t>(i)] - A[static_cast<std::size_t>(xstar)]
                                           : B[static_cast<std::size_t>(i)] - B[static_cast<std::size_t>(xstar)];
  }
  std::vector<double> twice(rel);
  for (double& t : twice) t *= 2.0;
  const double log_norm_sq = log_sum_exp(twice);
  const double log_phi_star = -0.5 * log_norm_sq;

  const int sl = As[static_cast<std::size_t>(xstar)];
  const int sr = Bs[static_cast<std::size_t>(xstar)];
  for (int i = 0; i < n; ++i) {
    pr.log_abs[static_cast<std::size_t>(i)] = rel[static_cast<std::size_t>(i)] + log_phi_star;
    if (i <= xstar) {
      pr.sign[static_cast<std::size_t>(i)] = As[static_cast<std::size_t>(i)] * sl;
    } else {
      pr.sign[static_cast<std::size_t>(i)] = Bs[static_cast<std::size_t>(i)] * sr;
    }
  }
  return pr;
}

namespace {

// Neumaier compensated sum.
struct Kahan {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double get() const { return s + c; }
};

}  // namespace

VecXd b_coefficients(const DirichletSpectrum& spec) {
  const int n = spec.size();
  VecXd b(n);
  for (int j = 0; j < n; ++j) {
    Kahan acc;
    for (int jp = 0; jp < n; ++jp) {
      if (jp == j) continue;
      // det = phi_j(0) phi_jp(L) - phi_jp(0) phi_j(L), in signed log-scale.
      const SignedLog t1 = spec.phi0[static_cast<std::size_t>(j)] * spec.phiL[static_cast<std::size_t>(jp)];
      const SignedLog t2 = spec.phi0[static_cast<std::size_t>(jp)] * spec.phiL[static_cast<std::size_t>(j)];
      const SignedLog det = sub(t1, t2);
      if (det.is_zero()) continue;
      const double det_sq = std::exp(2.0 * det.log_abs);
      acc.add(det_sq / (spec.lambda[jp] - spec.lambda[j]));
    }
    b[j] = acc.get();
  }
  return b;
}

DirichletSpectrum dirichlet_eigen(const VecXd& V) {
  DirichletSpectrum spec;
  const int n = static_cast<int>(V.size());
  spec.L = n - 1;
  spec.lambda = sturm_eigenvalues(V);
  for (int j = 0; j + 1 < n; ++j) {
    if (spec.lambda[j + 1] - spec.lambda[j] < 1e-14) {
      throw DegenerateSpacingError("dirichlet_eigen: coincident eigenvalues (Jacobi spectra are simple)");
    }
  }

  spec.phi0.resize(static_cast<std::size_t>(n));
  spec.phiL.resize(static_cast<std::size_t>(n));
  spec.log_aN.resize(n);
  spec.log_aZ.resize(n);
  spec.center.resize(n);
  for (int j = 0; j < n; ++j) {
    const LogProfile pr = eigenvector_log_profile(V, spec.lambda[j]);
    spec.phi0[static_cast<std::size_t>(j)] = SignedLog(pr.sign.front(), pr.log_abs.front());
    spec.phiL[static_cast<std::size_t>(j)] = SignedLog(pr.sign.back(), pr.log_abs.back());
    spec.log_aN[j] = 2.0 * pr.log_abs.back();
    // (aL + a0)/2 in log scale.
    const double l1 = 2.0 * pr.log_abs.back();
    const double l2 = 2.0 * pr.log_abs.front();
    spec.log_aZ[j] = log_sum_exp({l1, l2}) - std::log(2.0);
    spec.center[j] = pr.center;
  }

  spec.d.resize(n);
  for (int j = 0; j < n; ++j) {
    double dl = (j > 0) ? spec.lambda[j] - spec.lambda[j - 1] : std::numeric_limits<double>::infinity();
    double dr = (j + 1 < n) ? spec.lambda[j + 1] - spec.lambda[j] : std::numeric_limits<double>::infinity();
    spec.d[j] = std::min({dl, dr, 1.0});
  }

  spec.b = b_coefficients(spec);
  return spec;
}

DirichletSpectrum dirichlet_eigen(const PotentialSpec& pot, int L, std::uint64_t realization) {
  if (L < 0) throw ConfigInvalidError("dirichlet_eigen: L must be >= 0");
  return dirichlet_eigen(pot.diagonal(L, realization));
}

void write_spectrum_csv(const DirichletSpectrum& spec, const std::string& path) {
  CsvWriter csv(path);
  csv.header({"j", "lambda", "log_aN", "log_aZ", "sign_phi0", "log_phi0", "sign_phiL", "log_phiL", "b", "d"});
  for (int j = 0; j < spec.size(); ++j) {
    csv.row({CsvWriter::num(j), CsvWriter::num(spec.lambda[j]), CsvWriter::num(spec.log_aN[j]),
             CsvWriter::num(spec.log_aZ[j]), CsvWriter::num(spec.phi0[static_cast<std::size_t>(j)].sign),
             CsvWriter::num(spec.phi0[static_cast<std::size_t>(j)].log_abs),
             CsvWriter::num(spec.phiL[static_cast<std::size_t>(j)].sign),
             CsvWriter::num(spec.phiL[static_cast<std::size_t>(j)].log_abs), CsvWriter::num(spec.b[j]),
             CsvWriter::num(spec.d[j])});
  }
}

}  // namespace res1d
