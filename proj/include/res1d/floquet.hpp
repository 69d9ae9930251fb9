#ifndef RES1D_FLOQUET_HPP
#define RES1D_FLOQUET_HPP

#include <vector>

#include "res1d/monodromy.hpp"
#include "res1d/potential.hpp"
#include "res1d/types.hpp"

namespace res1d {

// One monotone piece of {|Delta| <= 2}: Delta runs from +2 to -2
// (orientation +1) or -2 to +2 (orientation -1).
struct BandPiece {
  double lo = 0.0, hi = 0.0;
  int orientation = +1;
  int index = 0;  // position in energy order
};

class BandStructure {
 public:
  static BandStructure build(const PeriodicSpec& pot, double grid_step = 1e-3);

  const PeriodicSpec& potential() const { return pot_; }
  int period() const { return pot_.period; }
  const std::vector<BandPiece>& bands() const { return bands_; }

  double discriminant(double E) const { return discriminant_at(pot_, E); }
  Complex discriminant(Complex E) const { return discriminant_at(pot_, E); }
  double discriminant_derivative(double E) const { return discriminant_derivative_at(pot_, E); }
  Complex discriminant_derivative(Complex E) const { return discriminant_derivative_at(pot_, E); }

  // Index of the band piece containing E (interior), or -1.
  int band_of(double E) const;

  // Monotone increasing quasi-momentum lift: p*theta_p = index*pi + t with
  // t in (0, pi) per piece.  Throws BandEdgeError within 1e-10 of an edge.
  double theta_p(double E) const;
  // Density of states n = theta_p' / pi and its analytic continuation.
  double dos(double E) const;
  Complex theta_p(Complex E, int band) const;
  Complex dos(Complex E, int band) const;

  // Integrated density of states (0 below spectrum, 1 above; flat on gaps).
  double ids(double E) const;

  // Inverse of the lift on a band piece: the energy with p*theta_p =
  // band.index*pi + t, t in (0, pi).
  double energy_of_t(int band, double t) const;

 private:
  PeriodicSpec pot_;
  std::vector<BandPiece> bands_;

  double t_of(double E, const BandPiece& b) const;
};

// Gap eigenvalue of -Delta + W on N (Dirichlet at -1) for a periodic W:
// a root of the (2,1) monodromy entry with |a_p| < 1, carrying the delta_0
// spectral weight (1 - a_p^2) / sum_{l<p} a_l^2.
struct GapEigenvalue {
  double energy = 0.0;
  double weight = 0.0;
  double floquet_multiplier = 0.0;  // a_p(E), |.| < 1
};
std::vector<GapEigenvalue> halfline_gap_eigenvalues(const PeriodicSpec& pot);

// The Floquet weight functions of the box data: f, f_0, f_k, h_k, tilde_f.
// All are attached to a residue class k (L = N p + k).
class FloquetWeights {
 public:
  FloquetWeights(const BandStructure& bs, int k);

  struct Values {
    double f = 0.0, f0 = 0.0, fk = 0.0, hk = 0.0, tilde_f = 0.0;
  };
  Values at(double E) const;  // band interior only

  double f(double E) const { return at(E).f; }
  double f0(double E) const { return at(E).f0; }
  double fk(double E) const { return at(E).fk; }
  double tilde_f(double E) const { return at(E).tilde_f; }

  // h_k unwrapped continuously along each band piece.
  double hk(double E) const;

  // theta_{p,L} = theta_p - h_k/(L-k) and the exact quantization ladder.
  double theta_pL(double E, int L) const;

  // Analytic continuations off the band interior (near band `band`).
  Complex f0_c(Complex E, int band) const;
  Complex fk_c(Complex E, int band) const;
  Complex hk_c(Complex E, int band) const;

  const BandStructure& band_structure() const { return *bs_; }
  int k() const { return k_; }

 private:
  const BandStructure* bs_;
  int k_;
  // Per-band unwrap anchors for h_k: dense grid of (E, unwrapped arg).
  struct Unwrap {
    std::vector<double> E, phase;
  };
  std::vector<Unwrap> unwrap_;

  double raw_phase(double E) const;  // arg alpha_{k+1}
};

}  // namespace res1d

#endif
