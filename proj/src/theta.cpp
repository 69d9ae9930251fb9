#include "res1d/theta.hpp"

#include <cmath>

namespace res1d {

Complex branch_z(Complex E, double cut_tol) {
  if (std::abs(E.imag()) <= cut_tol && std::abs(E.real()) >= 2.0 - cut_tol) {
    throw BranchCutError("branch_z: E on the branch cut (-inf,-2] u [2,+inf)");
  }
  const Complex h = E / 2.0;
  Complex s = std::sqrt(h * h - 1.0);
  // Pick the sign making Im z > 0; when both candidates have tiny imaginary
  // part (real E inside (-2,2)) the +i sqrt(1-h^2) candidate is the boundary
  // value from above.
  Complex zp = h + s;
  Complex zm = h - s;
  Complex z = (zp.imag() >= zm.imag()) ? zp : zm;
  // Guard cancellation: the smaller root is better computed as 1/larger.
  if (std::abs(z) < 1.0) {
    const Complex big = (std::abs(zp) > std::abs(zm)) ? zp : zm;
    if (std::abs(big) > 1.0) {
      const Complex inv = 1.0 / big;
      if (inv.imag() > 0.0) z = inv;
    }
  }
  return z;
}

Complex branch_z_derivative(Complex E, Complex z) { return z / (2.0 * z - E); }

ThetaValue theta(Complex E, double cut_tol) {
  ThetaValue tv;
  tv.z = branch_z(E, cut_tol);
  // Im z > 0 keeps arg z in (0, pi); the principal log then lands
  // Re theta in (-pi, 0) and Im theta = log|z|.
  tv.theta = Complex(0.0, 1.0) * std::log(tv.z);
  tv.sheet = (std::abs(tv.z) >= 1.0) ? Sheet::physical : Sheet::second;
  return tv;
}

Complex cot_inverse(Complex w) {
  if (w.imag() <= 0.0) throw OutOfDomainError("cot_inverse: Im w must be positive");
  if (std::abs(w - Complex(0.0, 1.0)) < 1e-14) {
    throw OutOfDomainError("cot_inverse: logarithmic singularity at w = i");
  }
  // cot u = i (q+1)/(q-1) with q = e^{2iu}; q = (w+i)/(w-i).
  // Im w > 0 gives |q| > 1 hence Im u < 0.  Shift Re u into [0, pi).
  Complex q;
  const Complex num = w + Complex(0.0, 1.0);
  const Complex den = w - Complex(0.0, 1.0);
  Complex logq;
  const Complex s = 2.0 * Complex(0.0, 1.0) / den;  // q = 1 + s
  if (std::abs(s) < 1e-4) {
    // log(1+s) by series to keep relative accuracy for large |w|.
    const Complex s2 = s * s;
    logq = s - s2 / 2.0 + s2 * s / 3.0 - s2 * s2 / 4.0;
  } else {
    q = num / den;
    logq = std::log(q);
  }
  Complex u = logq / Complex(0.0, 2.0);
  if (u.real() < 0.0) u += M_PI;
  return u;
}

Complex free_resolvent_entry(long n, long m, Complex E) {
  const Complex z = branch_z(E);
  const long d = std::labs(n - m);
  // e^{i theta} = 1/z, 2i sin theta = 1/z - z.
  const Complex einv = 1.0 / z;
  Complex phase = 1.0;
  for (long k = 0; k < d; ++k) phase *= einv;
  return phase / (einv - z);
}

std::vector<Complex> free_halfline_apply(const std::vector<Complex>& v, Complex E, long win_lo,
                                         long win_hi) {
  const ThetaValue tv = theta(E);
  const Complex th = tv.theta;
  const Complex sin_th = std::sin(th);
  const Complex eith = 1.0 / tv.z;  // e^{i theta}
  // A = sum_{j>=0} e^{i j theta} v_j.
  Complex A = 0.0;
  {
    Complex ph = 1.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      A += ph * v[j];
      ph *= eith;
    }
  }
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(win_hi - win_lo + 1));
  for (long n = win_lo; n <= win_hi; ++n) {
    Complex first = 0.0;
    const long jmax = std::min<long>(n, static_cast<long>(v.size()) - 1);
    for (long j = 0; j <= jmax; ++j) {
      first += v[static_cast<std::size_t>(j)] * std::sin(static_cast<double>(n - j) * th);
    }
    first /= sin_th;
    const Complex second = eith * std::sin(static_cast<double>(n + 1) * th) / sin_th * A;
    out.push_back(first - second);
  }
  return out;
}

}  // namespace res1d
