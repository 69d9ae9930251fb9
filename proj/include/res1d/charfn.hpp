#ifndef RES1D_CHARFN_HPP
#define RES1D_CHARFN_HPP

#include "res1d/spectral.hpp"
#include "res1d/theta.hpp"
#include "res1d/types.hpp"

namespace res1d {

// S_L(E) = sum_j a_j^N / (lambda_j - E), compensated.  Throws PoleHitError
// within 1e-14 of an eigenvalue.
Complex s_l(const DirichletSpectrum& spec, Complex E);
Complex s_l_derivative(const DirichletSpectrum& spec, Complex E);

// S_{L,j}: the same sum with the j-th term removed.
Complex s_l_without(const DirichletSpectrum& spec, int j, Complex E);

// Gamma_L(E): 2x2 matrix of boundary resolvent data (Im z < 0 side usage).
Mat2c gamma_l(const DirichletSpectrum& spec, Complex E);
Mat2c gamma_l_derivative(const DirichletSpectrum& spec, Complex E);
Mat2c gamma_l_without(const DirichletSpectrum& spec, int j, Complex E);

// The characteristic function F whose zeros in the lower half-plane are the
// resonances: F = S_L + e^{-i theta} (half-line) or det(Gamma_L + e^{-i
// theta} Id) (line).
struct CharFunction {
  Geometry geometry = Geometry::halfline;
  const DirichletSpectrum* spectrum = nullptr;

  Complex operator()(Complex E) const;
  Complex derivative(Complex E) const;
  // Residual scale max(1, |F'(E)| |E|), used for the polish stopping rule.
  double residual_scale(Complex E) const;
};

// F(E) * prod_k (lambda_k - E) (half-line) or det(Gamma + z) * prod^2
// divided by one pole-free product (line), assembled without ever forming
// the poles: an entire function with exactly the resonances as zeros in
// the lower half-plane.
LogComplex charfn_poleless(const DirichletSpectrum& spec, Geometry geometry, Complex E);

}  // namespace res1d

#endif
