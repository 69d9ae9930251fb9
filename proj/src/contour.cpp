#include "res1d/contour.hpp"

#include <cmath>
#include <vector>

namespace res1d {

namespace {

struct ArgTracker {
  const std::function<Complex(Complex)>& F;
  const WindingOptions& opts;
  long evals = 0;
  double total = 0.0;

  Complex eval(Complex E) {
    if (++evals > opts.max_evaluations) {
      throw ContourUnstableError("winding: evaluation budget exhausted");
    }
    const Complex f = F(E);
    if (std::abs(f) < opts.min_modulus) {
      throw ContourUnstableError("winding: |F| below threshold on contour");
    }
    return f;
  }

  // Walks from (a, fa) to (b, fb), bisecting until the phase increment per
  // step is below pi/2; accumulates the increments.
  void segment(Complex a, Complex fa, Complex b, Complex fb, int depth) {
    const double d = std::arg(fb / fa);
    if (std::abs(d) < M_PI / 2.0) {
      total += d;
      return;
    }
    if (depth > 48) {
      throw ContourUnstableError("winding: phase not resolvable (zero or pole on contour?)");
    }
    const Complex m = 0.5 * (a + b);
    const Complex fm = eval(m);
    segment(a, fa, m, fm, depth + 1);
    segment(m, fm, b, fb, depth + 1);
  }
};

}  // namespace

int winding_rectangle(const std::function<Complex(Complex)>& F, const Rect& rect,
                      const WindingOptions& opts) {
  const Complex c00(rect.re_lo, rect.im_lo);
  const Complex c10(rect.re_hi, rect.im_lo);
  const Complex c11(rect.re_hi, rect.im_hi);
  const Complex c01(rect.re_lo, rect.im_hi);
  const Complex corners[5] = {c00, c10, c11, c01, c00};

  ArgTracker tr{F, opts};
  for (int e = 0; e < 4; ++e) {
    const Complex a = corners[e];
    const Complex b = corners[e + 1];
    Complex prev = a;
    Complex fprev = tr.eval(prev);
    const int n = opts.initial_samples_per_edge;
    for (int i = 1; i <= n; ++i) {
      const Complex cur = a + (b - a) * (static_cast<double>(i) / n);
      const Complex fcur = tr.eval(cur);
      tr.segment(prev, fprev, cur, fcur, 0);
      prev = cur;
      fprev = fcur;
    }
  }
  const double w = tr.total / (2.0 * M_PI);
  const long rounded = std::lround(w);
  if (std::abs(w - static_cast<double>(rounded)) > 0.25) {
    throw ContourUnstableError("winding: non-integer winding number");
  }
  return static_cast<int>(rounded);
}

int winding_rectangle_nudged(const std::function<Complex(Complex)>& F, Rect rect,
                             const WindingOptions& opts) {
  const double hre = rect.re_hi - rect.re_lo;
  const double him = rect.im_hi - rect.im_lo;
  double f = 0.0;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Rect r = rect;
    r.re_lo -= f * hre;
    r.re_hi += f * hre;
    r.im_lo -= f * him;
    r.im_hi += 0.5 * f * him * (r.im_hi < 0.0 ? 1.0 : 0.0);
    try {
      return winding_rectangle(F, r, opts);
    } catch (const ContourUnstableError&) {
      if (attempt == 5) throw;
      f = (f == 0.0) ? 1e-7 : f * 37.0;
    }
  }
  throw ContourUnstableError("winding: retries exhausted");
}

bool newton_polish(const std::function<Complex(Complex)>& F, const std::function<Complex(Complex)>& dF,
                   Complex& E, double tol, int max_iter) {
  Complex x = E;
  double fmag = std::abs(F(x));
  for (int it = 0; it < max_iter; ++it) {
    const Complex d = dF(x);
    if (d == Complex(0.0, 0.0)) return false;
    Complex step = F(x) / d;
    // Damping: halve the step until the residual decreases.
    double scale = 1.0;
    Complex xn = x - step;
    double fn = std::abs(F(xn));
    int halvings = 0;
    while (fn > fmag && halvings < 40) {
      scale *= 0.5;
      xn = x - scale * step;
      fn = std::abs(F(xn));
      ++halvings;
    }
    const double move = std::abs(scale * step);
    x = xn;
    fmag = fn;
    if (move < tol * std::max(1.0, std::abs(x))) {
      E = x;
      return true;
    }
  }
  E = x;
  return false;
}

namespace {

void collect_zeros(const std::function<Complex(Complex)>& F, const std::function<Complex(Complex)>& dF,
                   const Rect& rect, double newton_tol, int depth, std::vector<ContourZero>& out) {
  int count = 0;
  try {
    count = winding_rectangle_nudged(F, rect);
  } catch (const ContourUnstableError&) {
    if (depth > 60) throw;
    // Split and hope the offending point ends up strictly inside a child.
    count = -1;
  }
  if (count == 0) return;

  const double w = rect.re_hi - rect.re_lo;
  const double h = rect.im_hi - rect.im_lo;
  const bool tiny = std::max(w, h) < 1e-9;
  if (count == 1 || tiny) {
    Complex z = rect.center();
    if (newton_polish(F, dF, z, newton_tol) && rect.contains(z)) {
      out.push_back({z, std::max(count, 1)});
      return;
    }
    if (tiny) {
      out.push_back({rect.center(), std::max(count, 1)});
      return;
    }
  }
  Rect a = rect, b = rect;
  if (w >= h) {
    const double mid = 0.5 * (rect.re_lo + rect.re_hi);
    a.re_hi = mid;
    b.re_lo = mid;
  } else {
    const double mid = 0.5 * (rect.im_lo + rect.im_hi);
    a.im_hi = mid;
    b.im_lo = mid;
  }
  collect_zeros(F, dF, a, newton_tol, depth + 1, out);
  collect_zeros(F, dF, b, newton_tol, depth + 1, out);
}

}  // namespace

std::vector<ContourZero> zeros_in_rectangle(const std::function<Complex(Complex)>& F,
                                            const std::function<Complex(Complex)>& dF, Rect rect,
                                            double newton_tol) {
  std::vector<ContourZero> out;
  collect_zeros(F, dF, rect, newton_tol, 0, out);
  // Merge duplicates found through overlapping polishes.
  std::vector<ContourZero> merged;
  for (const auto& z : out) {
    bool dup = false;
    for (auto& m : merged) {
      if (std::abs(m.z - z.z) < 1e-9 * std::max(1.0, std::abs(m.z))) {
        dup = true;
        break;
      }
    }
    if (!dup) merged.push_back(z);
  }
  return merged;
}

}  // namespace res1d
