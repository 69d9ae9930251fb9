#include "res1d/resonances.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "res1d/csvio.hpp"
#include "res1d/polyroots.hpp"

namespace res1d {

bool perturbative_valid(const DirichletSpectrum& spec, int j, Geometry geometry, double validity_c) {
  const int n = spec.size();
  if (j < 0 || j >= n) return false;
  const double lam = spec.lambda[j];
  if (!(lam > -2.0 && lam < 2.0)) return false;
  if (j > 0 && !(spec.lambda[j - 1] + lam > -4.0)) return false;
  if (j + 1 < n && !(spec.lambda[j + 1] + lam < 4.0)) return false;
  if (j == 0 || j == n - 1) return n == 1;  // missing neighbor: fall back
  const double log_a = (geometry == Geometry::halfline) ? spec.log_aN[j] : spec.log_aZ[j];
  return log_a <= 2.0 * std::log(spec.d[j]) - std::log(validity_c);
}

Resonance perturbative_resonance(const DirichletSpectrum& spec, int j, Geometry geometry,
                                 double validity_c) {
  if (!perturbative_valid(spec, j, geometry, validity_c)) {
    throw ValidityViolatedError("perturbative_resonance: a_j > d_j^2/C or window outside (-4,4)");
  }
  const double lam = spec.lambda[j];
  const Complex z = branch_z(Complex(lam, 0.0));

  Resonance r;
  r.geometry = geometry;
  r.method = Method::perturbative;
  r.multiplicity = 1;

  double log_shift_abs = 0.0;
  double shift_re = 0.0;
  double log_width = 0.0;
  if (geometry == Geometry::halfline) {
    const Complex D = s_l_without(spec, j, Complex(lam, 0.0)) + z;
    const double log_a = spec.log_aN[j];
    log_shift_abs = log_a - std::log(std::abs(D));
    shift_re = std::exp(log_a) * D.real() / std::norm(D);
    // Width asymptotics: Im E = -a_j Im z(lam) / |S_{L,j}+z|^2.
    log_width = log_a + std::log(z.imag()) - 2.0 * std::log(std::abs(D));
  } else {
    const Mat2c M = gamma_l_without(spec, j, Complex(lam, 0.0)) + z * Mat2c::Identity();
    const Mat2c Minv = M.inverse();
    const SignedLog vL = spec.phiL[static_cast<std::size_t>(j)];
    const SignedLog v0 = spec.phi0[static_cast<std::size_t>(j)];
    const double m = std::max(vL.log_abs, v0.log_abs);
    const double t1 = vL.sign * std::exp(vL.log_abs - m);
    const double t2 = v0.sign * std::exp(v0.log_abs - m);
    const Complex q = Minv(0, 0) * t1 * t1 + (Minv(0, 1) + Minv(1, 0)) * t1 * t2 + Minv(1, 1) * t2 * t2;
    log_shift_abs = 2.0 * m + std::log(std::abs(q));
    shift_re = 0.0;
    if (std::isfinite(2.0 * m) && std::exp(2.0 * m) > 0.0) shift_re = std::exp(2.0 * m) * q.real();
    if (!(q.imag() < 0.0)) {
      throw ValidityViolatedError("perturbative_resonance: quadratic form lost the sign of the width");
    }
    log_width = 2.0 * m + std::log(-q.imag());
  }

  r.re = lam + shift_re;
  r.log_width = log_width;
  r.logscale = !(std::exp(log_width) > 0.0) || log_width < -700.0;
  r.energy = Complex(r.re, r.logscale ? 0.0 : -std::exp(log_width));
  r.residual = 0.0;
  (void)log_shift_abs;
  return r;
}

int count_in_rectangle(const CharFunction& charfn, Rect rect) {
  if (rect.im_lo < 0.0 && rect.im_hi >= -1e-12) {
    rect.im_hi = -1e-12;  // keep off the real-axis poles
  }
  return winding_rectangle_nudged([&](Complex E) { return charfn(E); }, rect);
}

namespace {

Resonance make_polished(const CharFunction& fn, Complex E, Method method) {
  Resonance r;
  r.geometry = fn.geometry;
  r.method = method;
  r.energy = E;
  r.re = E.real();
  r.log_width = std::log(std::abs(E.imag()));
  r.logscale = false;
  r.residual = std::abs(fn(E));
  return r;
}

void dedupe_and_multiplicity(const CharFunction& fn, std::vector<Resonance>& rs) {
  std::sort(rs.begin(), rs.end(), [](const Resonance& a, const Resonance& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im() < b.im();
  });
  std::vector<Resonance> out;
  for (const auto& r : rs) {
    if (!out.empty() && std::abs(out.back().energy - r.energy) < 1e-6) {
      // Same 1e-6 disk: decide multiplicity by a winding count around it.
      Rect disk;
      disk.re_lo = out.back().re - 3e-6;
      disk.re_hi = out.back().re + 3e-6;
      disk.im_lo = out.back().energy.imag() - 3e-6;
      disk.im_hi = std::min(out.back().energy.imag() + 3e-6, -1e-12);
      try {
        const int m = winding_rectangle_nudged([&](Complex E) { return fn(E); }, disk);
        out.back().multiplicity = std::max(m, 1);
      } catch (const ContourUnstableError&) {
        out.back().multiplicity += 1;
      }
      continue;
    }
    out.push_back(r);
  }
  rs = std::move(out);
}

}  // namespace

FindResult find_resonances(const DirichletSpectrum& spec, Geometry geometry, Rect region,
                           const FindOptions& opts) {
  FindResult result;
  CharFunction fn{geometry, &spec};
  auto F = [&](Complex E) { return fn(E); };
  auto dF = [&](Complex E) { return fn.derivative(E); };

  std::vector<Complex> seeds = opts.seeds;
  const bool poly_path = spec.L <= 60 && !opts.force_newton;

  if (poly_path) {
    const std::vector<double> coeffs = char_poly(spec, geometry);
    for (const Complex& z : poly_roots(coeffs)) {
      if (std::abs(z) < 1e-8) continue;  // structural root at z = 0
      if (std::abs(z.imag()) <= 1e-12) {
        if (std::abs(z.real()) < 1.0 - 1e-10 && std::abs(z.real()) > 1e-8) {
          const double zr = z.real();
          result.antibound.push_back({zr + 1.0 / zr, zr});
        }
        continue;
      }
      if (z.imag() < 0.0) continue;                // conjugate partner
      if (std::abs(z) >= 1.0 - 1e-10) continue;    // physical-sheet or on-axis
      const Complex E = z + 1.0 / z;
      if (E.imag() >= 0.0) continue;
      seeds.push_back(E);
    }
  } else {
    for (int j = 0; j < spec.size(); ++j) {
      if (spec.lambda[j] < region.re_lo - 0.1 || spec.lambda[j] > region.re_hi + 0.1) continue;
      if (!perturbative_valid(spec, j, geometry)) continue;
      const Resonance pr = perturbative_resonance(spec, j, geometry);
      if (pr.logscale) continue;  // not reachable by double-precision Newton
      seeds.push_back(pr.energy);
    }
  }

  std::vector<Resonance> found;
  for (Complex seed : seeds) {
    Complex E = seed;
    if (!newton_polish(F, dF, E)) continue;
    if (!(E.imag() < 0.0)) continue;
    if (!region.contains(E)) continue;
    found.push_back(make_polished(fn, E, poly_path ? Method::poly : Method::newton));
  }
  dedupe_and_multiplicity(fn, found);

  if (opts.certify_count) {
    int total = 0;
    for (const auto& r : found) total += r.multiplicity;
    try {
      result.contour_count = count_in_rectangle(fn, region);
    } catch (const ContourUnstableError& e) {
      result.contour_count = -1;
      result.count_certified = false;
      result.note = std::string("contour count unavailable: ") + e.what();
    }
    if (result.contour_count >= 0 && result.contour_count != total) {
      // Sweep the region for whatever the seeds missed.
      Rect r2 = region;
      r2.im_hi = std::min(r2.im_hi, -1e-12);
      try {
        const auto zs = zeros_in_rectangle(F, dF, r2);
        std::vector<Resonance> all;
        for (const auto& z : zs) {
          Resonance r = make_polished(fn, z.z, Method::argprinciple);
          r.multiplicity = z.multiplicity;
          all.push_back(r);
        }
        // Keep polished metadata where the two lists agree.
        for (auto& a : all) {
          for (const auto& f : found) {
            if (std::abs(a.energy - f.energy) < 1e-8 * std::max(1.0, std::abs(a.energy))) {
              a.method = f.method;
              a.residual = f.residual;
              break;
            }
          }
        }
        found = std::move(all);
        dedupe_and_multiplicity(fn, found);
        total = 0;
        for (const auto& r : found) total += r.multiplicity;
      } catch (const ContourUnstableError& e) {
        result.note = std::string("subdivision sweep failed: ") + e.what();
      }
      if (result.contour_count != total) {
        result.count_certified = false;
        result.note += " count mismatch: contour=" + std::to_string(result.contour_count) +
                       " located=" + std::to_string(total);
      }
    }
  }

  result.resonances = std::move(found);
  return result;
}

StripResult resonance_free_strip(const DirichletSpectrum& spec, Geometry geometry, double re_lo,
                                 double re_hi) {
  CharFunction fn{geometry, &spec};
  const double top = -1e-300;
  auto count = [&](double eta) -> int {
    Rect r{re_lo, re_hi, -eta, top};
    return winding_rectangle_nudged([&](Complex E) { return fn(E); }, r);
  };

  StripResult out;
  double eta_hi = 4.0;
  if (count(eta_hi) == 0) {
    out.depth = eta_hi;
    out.log_depth = std::log(eta_hi);
  } else {
    double lo = std::log(1e-310);
    double hi = std::log(eta_hi);
    // Invariant: count(e^lo) == 0 <= count(e^hi).
    for (int it = 0; it < 60 && hi - lo > 1e-3; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (count(std::exp(mid)) == 0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.log_depth = lo;
    out.depth = std::exp(lo);
  }

  // Theorem-13 floor: min_j a_j d_j^2 |sin Re theta(lambda_j)| / theta'_delta.
  const double edge = std::max(std::abs(re_lo), std::abs(re_hi));
  const double delta = std::max(2.0 - edge, 1e-3);
  const double e2 = 2.0 - delta / 2.0;
  const double theta_prime_delta = 1.0 / std::sqrt(std::max(4.0 - e2 * e2, 1e-12));
  double floor_log = std::numeric_limits<double>::infinity();
  for (int j = 0; j < spec.size(); ++j) {
    const double lam = spec.lambda[j];
    if (lam < re_lo || lam > re_hi) continue;
    const double sin_re = std::sqrt(std::max(1.0 - lam * lam / 4.0, 0.0));
    if (sin_re <= 0.0) continue;
    const double log_a = (geometry == Geometry::halfline) ? spec.log_aN[j] : spec.log_aZ[j];
    floor_log = std::min(floor_log,
                         log_a + 2.0 * std::log(spec.d[j]) + std::log(sin_re) - std::log(theta_prime_delta));
  }
  out.theoretical_floor_log = floor_log;
  return out;
}

void write_resonances_csv(const std::vector<Resonance>& rs, const std::string& path) {
  CsvWriter csv(path);
  csv.header({"geometry", "re", "im_or_logwidth", "logscale_flag", "multiplicity", "method", "residual"});
  for (const auto& r : rs) {
    csv.row({to_string(r.geometry), CsvWriter::num(r.re),
             CsvWriter::num(r.logscale ? r.log_width : r.energy.imag()), CsvWriter::num(r.logscale ? 1 : 0),
             CsvWriter::num(r.multiplicity), to_string(r.method), CsvWriter::num(r.residual)});
  }
}

}  // namespace res1d
