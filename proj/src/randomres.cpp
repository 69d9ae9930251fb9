#include "res1d/randomres.hpp"

#include <algorithm>
#include <cmath>

namespace res1d {

RandomResonances resonances_random(const DirichletSpectrum& spec, Geometry geometry,
                                   double window_lo, double window_hi) {
  RandomResonances out;
  CharFunction fn{geometry, &spec};
  auto F = [&](Complex E) { return fn(E); };
  auto dF = [&](Complex E) { return fn.derivative(E); };

  for (int j = 0; j < spec.size(); ++j) {
    const double lam = spec.lambda[j];
    if (lam <= std::max(window_lo, -2.0) || lam >= std::min(window_hi, 2.0)) continue;
    if (perturbative_valid(spec, j, geometry)) {
      out.resonances.push_back(perturbative_resonance(spec, j, geometry));
      continue;
    }
    // Fallback: Newton from just below the eigenvalue.
    ++out.fallback_count;
    const double h = std::max(0.25 * spec.d[j], 1e-8);
    Complex E(lam, -h);
    bool ok = newton_polish(F, dF, E) && E.imag() < 0.0 && std::abs(E.real() - lam) < 2.0 * spec.d[j];
    if (!ok) {
      ++out.invalid_count;
      continue;
    }
    Resonance r;
    r.geometry = geometry;
    r.method = Method::newton;
    r.energy = E;
    r.re = E.real();
    r.log_width = std::log(std::abs(E.imag()));
    r.logscale = false;
    r.residual = std::abs(F(E));
    out.resonances.push_back(r);
  }
  return out;
}

std::vector<RescaledPoint> rescale(const std::vector<Resonance>& rs, double E0, int L, double n0,
                                   double rho0, int realization) {
  if (!(n0 > 0.0)) throw ConfigInvalidError("rescale: n(E0) must be positive");
  std::vector<RescaledPoint> out;
  for (const auto& r : rs) {
    const double eta = (r.geometry == Geometry::halfline) ? 1.0 : 0.5;
    RescaledPoint p;
    p.x = n0 * L * (r.re - E0);
    p.y = -r.log_width / (2.0 * eta * rho0 * L);
    p.realization = realization;
    out.push_back(p);
  }
  return out;
}

std::vector<RescaledPoint> rescale_deep(const std::vector<Resonance>& rs, double E0, int L, int ell,
                                        double n0, double rho0, int realization,
                                        bool* scale_violation) {
  if (!(n0 > 0.0)) throw ConfigInvalidError("rescale_deep: n(E0) must be positive");
  if (scale_violation) {
    // ell should sit strictly between log L and L at this box size.
    *scale_violation = !(ell > 2.0 * std::log(static_cast<double>(L)) && ell < L / 4);
  }
  std::vector<RescaledPoint> out;
  for (const auto& r : rs) {
    const double eta = (r.geometry == Geometry::halfline) ? 1.0 : 0.5;
    RescaledPoint p;
    p.x = n0 * ell * (r.re - E0);
    p.y = -r.log_width / (2.0 * eta * rho0 * ell);
    p.realization = realization;
    out.push_back(p);
  }
  return out;
}

XiOmega::XiOmega(const AndersonEnsemble& ens, std::uint64_t realization, int L_aux)
    : XiOmega(ens.potential().diagonal(L_aux, realization)) {}

XiOmega::XiOmega(const VecXd& V_box) : spec_(dirichlet_eigen(V_box)) {
  weight_.reserve(static_cast<std::size_t>(spec_.size()));
  for (int j = 0; j < spec_.size(); ++j) {
    weight_.push_back(std::exp(2.0 * spec_.phi0[static_cast<std::size_t>(j)].log_abs));
  }
}

double XiOmega::validity_floor() const { return -std::exp(-spec_.L / 16.0); }

Complex XiOmega::operator()(Complex E) const {
  Complex acc = 0.0;
  for (int j = 0; j < spec_.size(); ++j) {
    acc += weight_[static_cast<std::size_t>(j)] / (spec_.lambda[j] - E);
  }
  return acc + branch_z(E);
}

Complex XiOmega::derivative(Complex E) const {
  Complex acc = 0.0;
  for (int j = 0; j < spec_.size(); ++j) {
    const Complex den = spec_.lambda[j] - E;
    acc += weight_[static_cast<std::size_t>(j)] / (den * den);
  }
  const Complex z = branch_z(E);
  return acc + branch_z_derivative(E, z);
}

std::vector<ContourZero> XiOmega::zeros(Rect region) const {
  auto F = [this](Complex E) { return (*this)(E); };
  auto dF = [this](Complex E) { return derivative(E); };
  return zeros_in_rectangle(F, dF, region);
}

DirichletSpectrum reversed_box_spectrum(const AndersonEnsemble& ens, std::uint64_t realization,
                                        int L) {
  VecXd V = ens.potential().diagonal(L, realization);
  VecXd W(V.size());
  for (int n = 0; n <= L; ++n) W[n] = V[L - n];
  return dirichlet_eigen(W);
}

}  // namespace res1d
