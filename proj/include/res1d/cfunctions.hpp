#ifndef RES1D_CFUNCTIONS_HPP
#define RES1D_CFUNCTIONS_HPP

#include <memory>
#include <vector>

#include "res1d/floquet.hpp"
#include "res1d/theta.hpp"
#include "res1d/types.hpp"

namespace res1d {

// Borel transform of the delta_0 spectral measure of -Delta + W on N for a
// periodic W via a Dirichlet box of size L_aux (diagnostic / oracle route).
Complex borel_box(const VecXd& W, Complex E, int L_aux, double tol = 1e-8);

// The limit measures dN_k^- and dN_0^+ of a periodic potential, realized
// through their band densities f_k n and f_0 n plus gap atoms, and the
// derived g / c / Xi evaluators.  Evaluations use the boundary value from
// below on the real axis (the resonance side).
class CFunctions {
 public:
  CFunctions(const PeriodicSpec& pot, int k, int quad_nodes = 800);

  const BandStructure& band_structure() const { return *bs_; }
  const FloquetWeights& weights() const { return *fw_; }

  // Plain Borel transforms int dN(lambda) / (lambda - E); at real band
  // energies the value is the limit from below (P.V. - i pi n).
  Complex borel_minus(Complex E) const;  // dN_k^-
  Complex borel_plus(Complex E) const;   // dN_0^+

  // Analytic continuations of the band densities n_k^- = f_k n and
  // n_0^+ = f_0 n near band `band` (band < 0: locate from Re E).
  Complex n_minus(Complex E, int band = -1) const;
  Complex n_plus(Complex E, int band = -1) const;

  // Xi = Borel + z (z the continued exponential), g = i + Xi/(pi n).
  Complex xi_minus(Complex E) const { return borel_minus(E) + branch_z(E); }
  Complex xi_plus(Complex E) const { return borel_plus(E) + branch_z(E); }
  Complex g_minus(Complex E, int band = -1) const;
  Complex g_plus(Complex E, int band = -1) const;

  Complex c(Geometry geometry, Complex E, int band = -1) const;

  const std::vector<GapEigenvalue>& atoms_minus() const { return atoms_minus_; }
  const std::vector<GapEigenvalue>& atoms_plus() const { return atoms_plus_; }

 private:
  std::shared_ptr<BandStructure> bs_;
  std::shared_ptr<FloquetWeights> fw_;
  int k_;

  struct BandQuad {
    // Nodes in the t parameter, the energies lambda(t), and the densities
    // f_k, f_0 at the nodes (n dlambda = dt / (p pi); w carries 1/(p pi)).
    std::vector<double> t, w, lam, fk, f0;
    // Middle segment [mid_a, mid_b] rule in lambda carrying the density
    // values n_k^-, n_0^+ for the singularity subtraction.
    double mid_a = 0.0, mid_b = 0.0, ta = 0.0, tb = 0.0;
    std::vector<double> mid_lam, mid_w, mid_nk, mid_n0;
  };
  std::vector<BandQuad> quads_;
  std::vector<GapEigenvalue> atoms_minus_, atoms_plus_;
  int nodes_;

  Complex borel(Complex E, bool minus) const;
};

// Closest-to-the-axis resonance predictions on a band-interior window
// (quantization points plus the double cot^{-1} composition).
struct Prediction {
  long l = 0;            // quantization index
  double lambda = 0.0;   // Dirichlet eigenvalue from the quantization ladder
  Complex z_tilde;       // two-step prediction
  Complex z_first_order; // one-step value at real lambda
  bool dip_flag = false; // lambda within L^{-1/2} of a zero of c - i
};

std::vector<Prediction> predict_resonances(const CFunctions& cf, Geometry geometry, int L,
                                           double window_lo, double window_hi);

// Zeros of c - i (equivalently of the Xi functions) in the strip below a
// band-interior window; each zero attracts deep resonances of H_L.
struct DeepZero {
  Complex E;
  int order = 1;
  bool from_plus = false;  // line geometry: zero of Xi_0^+ rather than Xi_k^-
};
std::vector<DeepZero> deep_zeros(const CFunctions& cf, Geometry geometry, double window_lo,
                                 double window_hi, double depth = 2.5, double eta_top = 1e-4);

}  // namespace res1d

#endif
