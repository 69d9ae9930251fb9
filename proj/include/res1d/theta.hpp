#ifndef RES1D_THETA_HPP
#define RES1D_THETA_HPP

#include <vector>

#include "res1d/types.hpp"

namespace res1d {

// The determination theta(E) of arccos(E/2) continued from the upper
// half-plane through (-2,2), and z = e^{-i theta(E)}.  z(E) is the root of
// z^2 - E z + 1 = 0 with Im z > 0; sheets are told apart by |z| vs 1
// (|z| > 1 on the physical side Im E > 0, |z| < 1 on the continued side).
struct ThetaValue {
  Complex theta;
  Complex z;
  Sheet sheet;
};

// Root of z^2 - E z + 1 with Im z > 0.  Throws BranchCutError when E lies on
// (-inf,-2] u [2,+inf) within tolerance.
Complex branch_z(Complex E, double cut_tol = 1e-14);

// dz/dE = z / (2z - E) for the branch above.
Complex branch_z_derivative(Complex E, Complex z);

ThetaValue theta(Complex E, double cut_tol = 1e-14);

// Inverse of the determination of cot mapping [0,pi) x (0,-inf) onto
// C^+ \ {i}.  Requires Im w > 0 and w away from i.
Complex cot_inverse(Complex w);

// Free whole-line Green function <delta_n, (-Delta - E)^{-1} delta_m>
// = e^{i|n-m| theta(E)} / (2i sin theta(E)).
Complex free_resolvent_entry(long n, long m, Complex E);

// R_0^N(E) v on the site window [win_lo, win_hi] for a finitely supported v
// (v[j] is the value at site j, j = 0..v.size()-1).  Dirichlet at -1.
std::vector<Complex> free_halfline_apply(const std::vector<Complex>& v, Complex E, long win_lo,
                                         long win_hi);

}  // namespace res1d

#endif
