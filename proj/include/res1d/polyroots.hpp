#ifndef RES1D_POLYROOTS_HPP
#define RES1D_POLYROOTS_HPP

#include <vector>

#include "res1d/spectral.hpp"
#include "res1d/types.hpp"

namespace res1d {

// Coefficients of the characteristic polynomial in z = e^{-i theta(E)},
// ascending order (c[0] + c[1] z + ...).
//   halfline: prod_k (z^2 - lambda_k z + 1) - sum_j a_j prod_{k!=j} (...)
//   line:     z prod_k (...) - sum_j (2 a_j z + b_j) prod_{k!=j} (...)
// Guarded to L <= 60 (monomial-basis conditioning).
std::vector<double> char_poly(const DirichletSpectrum& spec, Geometry geometry);

// All roots of a real-coefficient polynomial via the balanced companion
// matrix (Eigen eigensolver).  Leading zero coefficients are trimmed.
std::vector<Complex> poly_roots(const std::vector<double>& coeffs);

Complex poly_eval(const std::vector<double>& coeffs, Complex z);

}  // namespace res1d

#endif
