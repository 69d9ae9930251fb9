#ifndef RES1D_CONTOUR_HPP
#define RES1D_CONTOUR_HPP

#include <functional>

#include "res1d/types.hpp"

namespace res1d {

struct Rect {
  double re_lo = 0.0, re_hi = 0.0;
  double im_lo = 0.0, im_hi = 0.0;

  bool contains(Complex E) const {
    return E.real() >= re_lo && E.real() <= re_hi && E.imag() >= im_lo && E.imag() <= im_hi;
  }
  Complex center() const { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
};

struct WindingOptions {
  int initial_samples_per_edge = 32;
  long max_evaluations = 4000000;
  double min_modulus = 1e-280;  // zero-on-contour guard
};

// Winding number of F along the rectangle boundary (counterclockwise) by
// adaptive argument tracking.  For F analytic inside, this is the number of
// zeros with multiplicity.  Throws ContourUnstableError when a sample falls
// below min_modulus or the phase cannot be resolved within the budget.
int winding_rectangle(const std::function<Complex(Complex)>& F, const Rect& rect,
                      const WindingOptions& opts = {});

// winding_rectangle with automatic contour nudges (up to 5 retries with
// slightly perturbed rectangles) when the contour passes too close to a
// zero or pole.
int winding_rectangle_nudged(const std::function<Complex(Complex)>& F, Rect rect,
                             const WindingOptions& opts = {});

// Same walk for a mantissa/exponent valued function (pole-free
// characteristic products whose magnitude overflows doubles).
int winding_rectangle_log(const std::function<LogComplex(Complex)>& F, Rect rect,
                          const WindingOptions& opts = {});
int winding_rectangle_log_nudged(const std::function<LogComplex(Complex)>& F, Rect rect,
                                 const WindingOptions& opts = {});

// All zeros of F inside the rectangle by recursive subdivision of winding
// counts followed by Newton polish.  dF is the analytic derivative.
struct ContourZero {
  Complex z;
  int multiplicity = 1;
};
std::vector<ContourZero> zeros_in_rectangle(const std::function<Complex(Complex)>& F,
                                            const std::function<Complex(Complex)>& dF, Rect rect,
                                            double newton_tol = 1e-12);

// Damped Newton iteration; returns true on convergence (|step| below tol
// relative to |E| scale).
bool newton_polish(const std::function<Complex(Complex)>& F, const std::function<Complex(Complex)>& dF,
                   Complex& E, double tol = 1e-12, int max_iter = 80);

}  // namespace res1d

#endif
