#include "res1d/charfn.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace res1d {

namespace {

struct KahanC {
  Complex s{0.0, 0.0}, c{0.0, 0.0};
  void add(Complex x) {
    const Complex t = s + x;
    if (std::norm(s) >= std::norm(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  Complex get() const { return s + c; }
};

void check_pole(const DirichletSpectrum& spec, Complex E) {
  if (std::abs(E.imag()) > 1e-14) return;
  for (int j = 0; j < spec.size(); ++j) {
    if (std::abs(E.real() - spec.lambda[j]) < 1e-14) {
      throw PoleHitError("evaluation within 1e-14 of eigenvalue lambda_" + std::to_string(j));
    }
  }
}

}  // namespace

Complex s_l(const DirichletSpectrum& spec, Complex E) {
  check_pole(spec, E);
  KahanC acc;
  for (int j = 0; j < spec.size(); ++j) {
    const double a = std::exp(spec.log_aN[j]);
    if (a == 0.0) continue;
    acc.add(a / (spec.lambda[j] - E));
  }
  return acc.get();
}

Complex s_l_derivative(const DirichletSpectrum& spec, Complex E) {
  KahanC acc;
  for (int j = 0; j < spec.size(); ++j) {
    const double a = std::exp(spec.log_aN[j]);
    if (a == 0.0) continue;
    const Complex den = spec.lambda[j] - E;
    acc.add(a / (den * den));
  }
  return acc.get();
}

Complex s_l_without(const DirichletSpectrum& spec, int j0, Complex E) {
  KahanC acc;
  for (int j = 0; j < spec.size(); ++j) {
    if (j == j0) continue;
    const double a = std::exp(spec.log_aN[j]);
    if (a == 0.0) continue;
    acc.add(a / (spec.lambda[j] - E));
  }
  return acc.get();
}

namespace {

// The rank-one summand of Gamma_L at index j, scaled by w = 1/(lambda_j-E)
// or its derivative weight.
inline void add_summand(const DirichletSpectrum& spec, int j, Complex w, KahanC& g11, KahanC& g12,
                        KahanC& g22) {
  const double aL = std::exp(2.0 * spec.phiL[static_cast<std::size_t>(j)].log_abs);
  const double a0 = std::exp(2.0 * spec.phi0[static_cast<std::size_t>(j)].log_abs);
  const SignedLog cross = spec.phiL[static_cast<std::size_t>(j)] * spec.phi0[static_cast<std::size_t>(j)];
  const double c = cross.value();
  if (aL != 0.0) g11.add(aL * w);
  if (c != 0.0) g12.add(c * w);
  if (a0 != 0.0) g22.add(a0 * w);
}

}  // namespace

Mat2c gamma_l(const DirichletSpectrum& spec, Complex E) {
  check_pole(spec, E);
  KahanC g11, g12, g22;
  for (int j = 0; j < spec.size(); ++j) {
    add_summand(spec, j, 1.0 / (spec.lambda[j] - E), g11, g12, g22);
  }
  Mat2c G;
  G << g11.get(), g12.get(), g12.get(), g22.get();
  return G;
}

Mat2c gamma_l_derivative(const DirichletSpectrum& spec, Complex E) {
  KahanC g11, g12, g22;
  for (int j = 0; j < spec.size(); ++j) {
    const Complex den = spec.lambda[j] - E;
    add_summand(spec, j, 1.0 / (den * den), g11, g12, g22);
  }
  Mat2c G;
  G << g11.get(), g12.get(), g12.get(), g22.get();
  return G;
}

Mat2c gamma_l_without(const DirichletSpectrum& spec, int j0, Complex E) {
  KahanC g11, g12, g22;
  for (int j = 0; j < spec.size(); ++j) {
    if (j == j0) continue;
    add_summand(spec, j, 1.0 / (spec.lambda[j] - E), g11, g12, g22);
  }
  Mat2c G;
  G << g11.get(), g12.get(), g12.get(), g22.get();
  return G;
}

Complex CharFunction::operator()(Complex E) const {
  const Complex z = branch_z(E);
  if (geometry == Geometry::halfline) {
    return s_l(*spectrum, E) + z;
  }
  const Mat2c G = gamma_l(*spectrum, E);
  return (G(0, 0) + z) * (G(1, 1) + z) - G(0, 1) * G(1, 0);
}

Complex CharFunction::derivative(Complex E) const {
  const Complex z = branch_z(E);
  const Complex dz = branch_z_derivative(E, z);
  if (geometry == Geometry::halfline) {
    return s_l_derivative(*spectrum, E) + dz;
  }
  const Mat2c G = gamma_l(*spectrum, E);
  const Mat2c dG = gamma_l_derivative(*spectrum, E);
  return (dG(0, 0) + dz) * (G(1, 1) + z) + (G(0, 0) + z) * (dG(1, 1) + dz) - dG(0, 1) * G(1, 0) -
         G(0, 1) * dG(1, 0);
}

double CharFunction::residual_scale(Complex E) const {
  return std::max(1.0, std::abs(derivative(E)) * std::abs(E));
}

namespace {

// Accumulates sum of m_i exp(e_i) with max-exponent normalization.
struct LogSum {
  std::vector<Complex> m;
  std::vector<double> e;
  void add(Complex mant, double expo) {
    if (mant == Complex(0.0, 0.0) || !std::isfinite(expo)) return;
    m.push_back(mant);
    e.push_back(expo);
  }
  LogComplex get() const {
    if (m.empty()) return LogComplex{Complex(0.0, 0.0), 0.0};
    double M = -std::numeric_limits<double>::infinity();
    for (double x : e) M = std::max(M, x);
    Complex s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * std::exp(e[i] - M);
    return LogComplex{s, M};
  }
};

}  // namespace

LogComplex charfn_poleless(const DirichletSpectrum& spec, Geometry geometry, Complex E) {
  const int n = spec.size();
  // log P = sum log(lambda_k - E) split into magnitude and phase.
  double logP = 0.0;
  double argP = 0.0;
  std::vector<double> logfac(static_cast<std::size_t>(n));
  std::vector<double> argfac(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Complex f = spec.lambda[k] - E;
    logfac[static_cast<std::size_t>(k)] = std::log(std::abs(f));
    argfac[static_cast<std::size_t>(k)] = std::arg(f);
    logP += logfac[static_cast<std::size_t>(k)];
    argP += argfac[static_cast<std::size_t>(k)];
  }
  const Complex z = branch_z(E);

  LogSum sum;
  if (geometry == Geometry::halfline) {
    // G = sum_j a_j Q_j + z P with Q_j = P / (lambda_j - E).
    for (int j = 0; j < n; ++j) {
      const double expo = spec.log_aN[j] + logP - logfac[static_cast<std::size_t>(j)];
      sum.add(std::polar(1.0, argP - argfac[static_cast<std::size_t>(j)]), expo);
    }
    sum.add(z * std::polar(1.0, argP), logP);
  } else {
    // G = z^2 P + z sum_j 2 a_j^Z Q_j / ... all divided by one factor of P:
    // zeros agree with det(Gamma + z) since P != 0 off the real axis.
    sum.add(z * z * std::polar(1.0, argP), logP);
    for (int j = 0; j < n; ++j) {
      const double e2 = spec.log_aZ[j] + logP - logfac[static_cast<std::size_t>(j)];
      const Complex ph = std::polar(1.0, argP - argfac[static_cast<std::size_t>(j)]);
      sum.add(2.0 * z * ph, e2);
      if (spec.b[j] != 0.0) {
        sum.add((spec.b[j] > 0 ? 1.0 : -1.0) * ph,
                std::log(std::abs(spec.b[j])) + logP - logfac[static_cast<std::size_t>(j)]);
      }
    }
  }
  return sum.get();
}

}  // namespace res1d
