#ifndef RES1D_RANDOMRES_HPP
#define RES1D_RANDOMRES_HPP

#include <vector>

#include "res1d/anderson.hpp"
#include "res1d/resonances.hpp"
#include "res1d/types.hpp"

namespace res1d {

struct RandomResonances {
  std::vector<Resonance> resonances;  // log-scale widths always valid
  int fallback_count = 0;             // eigenvalues that needed poly/Newton
  int invalid_count = 0;              // no resonance attached (edge cases)
};

// One resonance per band-interior Dirichlet eigenvalue: the Theorem-12
// perturbative value (log-scale width) where valid, Newton fallback
// otherwise.  window restricts Re lambda.
RandomResonances resonances_random(const DirichletSpectrum& spec, Geometry geometry,
                                   double window_lo = -2.0, double window_hi = 2.0);

struct RescaledPoint {
  double x = 0.0;
  double y = 0.0;
  int realization = 0;
};

// Eq.-10-style rescaling: x = n(E0) L (Re z - E0),
// y = -log|Im z| / (2 eta rho(E0) L) with eta = 1 (half-line), 1/2 (line).
std::vector<RescaledPoint> rescale(const std::vector<Resonance>& rs, double E0, int L, double n0,
                                   double rho0, int realization = 0);

// Deep-scale variant with ell_L in place of L.  ell must satisfy
// ell/log L -> infinity and ell/L -> 0; scale_violation reports a breach.
std::vector<RescaledPoint> rescale_deep(const std::vector<Resonance>& rs, double E0, int L, int ell,
                                        double n0, double rho0, int realization = 0,
                                        bool* scale_violation = nullptr);

inline int default_ell(int L) {
  return static_cast<int>(std::ceil(std::pow(std::log(static_cast<double>(L)), 1.5)));
}

// Xi_omega(E) ~ S_{L_aux}(E) + e^{-i theta(E)} built from the delta_0
// spectral weights of the direct box (equivalently the boundary weights of
// the reversed-potential box).  Valid for Im E < -e^{-c L_aux}.
class XiOmega {
 public:
  XiOmega(const AndersonEnsemble& ens, std::uint64_t realization, int L_aux);
  explicit XiOmega(const VecXd& V_box);

  Complex operator()(Complex E) const;
  Complex derivative(Complex E) const;
  double validity_floor() const;  // -e^{-c L_aux} with c = 1/16

  // Zeros in the rectangle by subdivision + Newton.
  std::vector<ContourZero> zeros(Rect region) const;

  const DirichletSpectrum& box_spectrum() const { return spec_; }

 private:
  DirichletSpectrum spec_;
  std::vector<double> weight_;  // |phi_j(0)|^2
};

// Resonances of the reversed-potential operator (the deep-resonance
// normalization): identical to resonances of the direct box with the roles
// of the two ends swapped, i.e. weights |phi_j(0)|^2.
DirichletSpectrum reversed_box_spectrum(const AndersonEnsemble& ens, std::uint64_t realization,
                                        int L);

}  // namespace res1d

#endif
