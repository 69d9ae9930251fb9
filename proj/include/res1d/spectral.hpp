#ifndef RES1D_SPECTRAL_HPP
#define RES1D_SPECTRAL_HPP

#include <string>
#include <vector>

#include "res1d/potential.hpp"
#include "res1d/signed_log.hpp"
#include "res1d/types.hpp"

namespace res1d {

// Dirichlet spectral data of H_L = -Delta + V restricted to [0, L] with
// Dirichlet conditions at -1 and L+1.  Boundary values are kept in signed
// log-scale: |phi_j(L)|^2 spans hundreds of decades for localized states.
struct DirichletSpectrum {
  int L = 0;
  VecXd lambda;                 // strictly increasing eigenvalues
  std::vector<SignedLog> phi0;  // phi_j(0)
  std::vector<SignedLog> phiL;  // phi_j(L)
  VecXd log_aN;                 // log |phi_j(L)|^2
  VecXd log_aZ;                 // log of (|phi_j(L)|^2 + |phi_j(0)|^2)/2
  VecXd b;                      // whole-line correction coefficients
  VecXd d;                      // spacings min(gap_left, gap_right, 1)
  VecXi center;                 // left-most maximum of |phi_j|

  int size() const { return static_cast<int>(lambda.size()); }
};

// Number of eigenvalues of tridiag(1, V, 1) strictly below x (Sturm/LDL
// count); bit-reproducible.
int sturm_count(const VecXd& V, double x);

// All eigenvalues by Sturm bisection to `tol` absolute.
VecXd sturm_eigenvalues(const VecXd& V, double tol = 1e-13);

// Signed log-scale eigenvector profile for the eigenvalue lam: the two
// transfer sweeps of the shooting method glued at the left-most maximum.
// Output vectors have length L+1 (log of |phi(n)|, sign of phi(n)); the
// profile is normalized to sum phi^2 = 1.
struct LogProfile {
  std::vector<double> log_abs;
  std::vector<int> sign;
  int center = 0;  // left-most maximum of |phi|
};
LogProfile eigenvector_log_profile(const VecXd& V, double lam);

// Full spectral data for the box (eigenvalues, boundary values, weights,
// b coefficients, spacings).  Throws DegenerateSpacingError when two
// eigenvalues coincide to within 1e-14.
DirichletSpectrum dirichlet_eigen(const VecXd& V);
DirichletSpectrum dirichlet_eigen(const PotentialSpec& pot, int L, std::uint64_t realization = 0);

// b_j = sum_{j' != j} det^2 / (lambda_j' - lambda_j) with the 2x2 boundary
// determinants; recomputed from scratch (used standalone in tests).
VecXd b_coefficients(const DirichletSpectrum& spec);

// CSV dump: j, lambda, log_aN, log_aZ, sign_phi0, log_phi0, sign_phiL,
// log_phiL, b, d.
void write_spectrum_csv(const DirichletSpectrum& spec, const std::string& path);

}  // namespace res1d

#endif
