#include "res1d/cfunctions.hpp"

#include <algorithm>
#include <cmath>

#include "res1d/contour.hpp"
#include "res1d/quadrature.hpp"
#include "res1d/spectral.hpp"

namespace res1d {

Complex borel_box(const VecXd& W, Complex E, int L_aux, double tol) {
  const double y = std::abs(E.imag());
  if (y > 0.0 && y < 1.0) {
    // Error form ~ y^-2 e^{-yL/C}; refuse hopeless requests.
    const double est = std::exp(-y * L_aux / 8.0) / (y * y);
    if (est > tol) {
      throw AuxBoxTooSmallError("borel_box: box too small for the requested Im E");
    }
  }
  const DirichletSpectrum spec = dirichlet_eigen(W);
  Complex acc = 0.0;
  for (int j = 0; j < spec.size(); ++j) {
    const double w = std::exp(2.0 * spec.phi0[static_cast<std::size_t>(j)].log_abs);
    acc += w / (spec.lambda[j] - E);
  }
  return acc;
}

CFunctions::CFunctions(const PeriodicSpec& pot, int k, int quad_nodes) : k_(k), nodes_(quad_nodes) {
  bs_ = std::make_shared<BandStructure>(BandStructure::build(pot));
  fw_ = std::make_shared<FloquetWeights>(*bs_, k);

  const GaussLegendre gl = gauss_legendre(static_cast<std::size_t>(quad_nodes));
  const int p = bs_->period();
  for (const auto& band : bs_->bands()) {
    BandQuad q;
    // Full-band rule in the t parameter (n dlambda = dt / (p pi)).
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = 0.5 * M_PI * (gl.nodes[i] + 1.0);
      const double w = 0.5 * M_PI * gl.weights[i] / (M_PI * p);
      const double lam = bs_->energy_of_t(band.index, t);
      const FloquetWeights::Values v = fw_->at(lam);
      q.t.push_back(t);
      q.w.push_back(w);
      q.lam.push_back(lam);
      q.fk.push_back(v.fk);
      q.f0.push_back(v.f0);
    }
    // Middle segment in lambda (singular-kernel subtraction zone).
    const double width = band.hi - band.lo;
    q.mid_a = band.lo + 0.08 * width;
    q.mid_b = band.hi - 0.08 * width;
    q.ta = bs_->theta_p(q.mid_a) * p - band.index * M_PI;
    q.tb = bs_->theta_p(q.mid_b) * p - band.index * M_PI;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double lam = 0.5 * (q.mid_a + q.mid_b) + 0.5 * (q.mid_b - q.mid_a) * gl.nodes[i];
      const double w = 0.5 * (q.mid_b - q.mid_a) * gl.weights[i];
      const double n = bs_->dos(lam);
      const FloquetWeights::Values v = fw_->at(lam);
      q.mid_lam.push_back(lam);
      q.mid_w.push_back(w);
      q.mid_nk.push_back(v.fk * n);
      q.mid_n0.push_back(v.f0 * n);
    }
    quads_.push_back(std::move(q));
  }

  // Gap atoms: dN_0^+ belongs to the potential itself, dN_k^- to the
  // reflection of the shifted potential.
  atoms_plus_ = halfline_gap_eigenvalues(pot);
  PeriodicSpec reflected = pot;
  for (int n = 0; n < pot.period; ++n) {
    int idx = (k - n) % pot.period;
    if (idx < 0) idx += pot.period;
    reflected.values[static_cast<std::size_t>(n)] = pot.values[static_cast<std::size_t>(idx)];
  }
  atoms_minus_ = halfline_gap_eigenvalues(reflected);
}

Complex CFunctions::borel(Complex E, bool minus) const {
  Complex acc = 0.0;
  for (std::size_t bi = 0; bi < quads_.size(); ++bi) {
    const BandQuad& q = quads_[bi];
    const double inner_margin = 0.25 * (q.mid_b - q.mid_a) * 0.08 / 0.84;
    const bool near_band = std::abs(E.imag()) < 0.05 && E.real() > q.mid_a + inner_margin &&
                           E.real() < q.mid_b - inner_margin;
    if (!near_band) {
      for (std::size_t i = 0; i < q.t.size(); ++i) {
        const double dens = minus ? q.fk[i] : q.f0[i];
        acc += q.w[i] * dens / (q.lam[i] - E);
      }
      continue;
    }
    // Edge pieces of the t rule outside [mid_a, mid_b].
    for (std::size_t i = 0; i < q.t.size(); ++i) {
      if (q.t[i] > q.ta && q.t[i] < q.tb) continue;
      const double dens = minus ? q.fk[i] : q.f0[i];
      acc += q.w[i] * dens / (q.lam[i] - E);
    }
    // Middle piece: subtract the analytically continued density to make
    // the integrand regular at lambda = E, then add the closed form.
    const Complex nE = minus ? n_minus(E, static_cast<int>(bi)) : n_plus(E, static_cast<int>(bi));
    for (std::size_t i = 0; i < q.mid_lam.size(); ++i) {
      const double dens = minus ? q.mid_nk[i] : q.mid_n0[i];
      acc += q.mid_w[i] * (dens - nE) / (q.mid_lam[i] - E);
    }
    if (E.imag() == 0.0) {
      // Boundary value from below: P.V. - i pi n.
      const double x = E.real();
      acc += nE * Complex(std::log((q.mid_b - x) / (x - q.mid_a)), -M_PI);
    } else {
      acc += nE * std::log((q.mid_b - E) / (q.mid_a - E));
    }
  }
  const auto& atoms = minus ? atoms_minus_ : atoms_plus_;
  for (const auto& at : atoms) acc += at.weight / (at.energy - E);
  return acc;
}

Complex CFunctions::borel_minus(Complex E) const { return borel(E, true); }
Complex CFunctions::borel_plus(Complex E) const { return borel(E, false); }

namespace {
int locate_band(const BandStructure& bs, Complex E, int band) {
  if (band >= 0) return band;
  const int bi = bs.band_of(E.real());
  if (bi < 0) throw BandEdgeError("c-functions: Re E outside the band interiors");
  return bi;
}
}  // namespace

Complex CFunctions::n_minus(Complex E, int band) const {
  const int bi = locate_band(*bs_, E, band);
  return fw_->fk_c(E, bi) * bs_->dos(E, bi);
}

Complex CFunctions::n_plus(Complex E, int band) const {
  const int bi = locate_band(*bs_, E, band);
  return fw_->f0_c(E, bi) * bs_->dos(E, bi);
}

Complex CFunctions::g_minus(Complex E, int band) const {
  return Complex(0.0, 1.0) + xi_minus(E) / (M_PI * n_minus(E, band));
}

Complex CFunctions::g_plus(Complex E, int band) const {
  return Complex(0.0, 1.0) + xi_plus(E) / (M_PI * n_plus(E, band));
}

Complex CFunctions::c(Geometry geometry, Complex E, int band) const {
  if (geometry == Geometry::halfline) return g_minus(E, band);
  const Complex gm = g_minus(E, band);
  const Complex gp = g_plus(E, band);
  return (gp * gm - 1.0) / (gp + gm);
}

std::vector<Prediction> predict_resonances(const CFunctions& cf, Geometry geometry, int L,
                                           double window_lo, double window_hi) {
  const BandStructure& bs = cf.band_structure();
  const FloquetWeights& fw = cf.weights();
  const int k = fw.k();
  const int p = bs.period();
  if ((L - k) % p != 0) throw ConfigInvalidError("predict: L must be congruent to k mod p");
  const int bi = bs.band_of(0.5 * (window_lo + window_hi));
  if (bi < 0 || bs.band_of(window_lo) != bi || bs.band_of(window_hi) != bi) {
    throw BandEdgeError("predict: window must sit inside one band interior");
  }

  // Quantization ladder: theta_pL is monotone on the band.
  const double u_lo = fw.theta_pL(window_lo, L) * (L - k) / M_PI;
  const double u_hi = fw.theta_pL(window_hi, L) * (L - k) / M_PI;
  const long l_lo = static_cast<long>(std::ceil(std::min(u_lo, u_hi) - 1e-9));
  const long l_hi = static_cast<long>(std::floor(std::max(u_lo, u_hi) + 1e-9));

  std::vector<DeepZero> zeros;
  try {
    zeros = deep_zeros(cf, geometry, window_lo, window_hi, 1.0, 1e-5);
  } catch (const Error&) {
    zeros.clear();  // dip flags stay off; predictions remain valid
  }

  std::vector<Prediction> out;
  const double logL = std::log(static_cast<double>(L));
  for (long l = l_lo; l <= l_hi; ++l) {
    double lo = window_lo, hi = window_hi;
    const double target = l * M_PI / (L - k);
    double flo = fw.theta_pL(lo, L) - target;
    double fhi = fw.theta_pL(hi, L) - target;
    if ((flo < 0.0) == (fhi < 0.0)) continue;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = fw.theta_pL(mid, L) - target;
      if ((flo < 0.0) == (fm < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    Prediction pr;
    pr.l = l;
    pr.lambda = 0.5 * (lo + hi);
    const double n0 = bs.dos(pr.lambda);
    const double scale = 1.0 / (M_PI * n0 * L);

    const Complex c0 = cf.c(geometry, Complex(pr.lambda, 0.0), bi);
    pr.z_first_order = pr.lambda + scale * cot_inverse(c0);

    const Complex E_probe(pr.lambda, -logL / L);
    const Complex u1 = cot_inverse(cf.c(geometry, E_probe, bi));
    const Complex E1 = pr.lambda + scale * u1;
    const Complex u2 = cot_inverse(cf.c(geometry, E1, bi));
    pr.z_tilde = pr.lambda + scale * u2;

    const double dip_radius = 1.0 / std::sqrt(static_cast<double>(L));
    for (const auto& z : zeros) {
      if (std::abs(pr.lambda - z.E.real()) < dip_radius) pr.dip_flag = true;
    }
    out.push_back(pr);
  }
  return out;
}

std::vector<DeepZero> deep_zeros(const CFunctions& cf, Geometry geometry, double window_lo,
                                 double window_hi, double depth, double eta_top) {
  std::vector<DeepZero> out;
  auto hunt = [&](bool from_plus) {
    auto F = [&](Complex E) { return from_plus ? cf.xi_plus(E) : cf.xi_minus(E); };
    auto dF = [&](Complex E) {
      const double h = 1e-7 * std::max(1.0, std::abs(E));
      return (F(E + Complex(h, 0.0)) - F(E - Complex(h, 0.0))) / (2.0 * h);
    };
    Rect rect{window_lo, window_hi, -depth, -eta_top};
    for (const auto& z : zeros_in_rectangle(F, dF, rect)) {
      out.push_back({z.z, z.multiplicity, from_plus});
    }
  };
  hunt(false);
  if (geometry == Geometry::line) hunt(true);
  std::sort(out.begin(), out.end(),
            [](const DeepZero& a, const DeepZero& b) { return a.E.real() < b.E.real(); });
  return out;
}

}  // namespace res1d
