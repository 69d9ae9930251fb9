#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"
#include "res1d/polyroots.hpp"
#include "res1d/resonances.hpp"
#include "res1d/rng.hpp"

using namespace res1d;

namespace {

DirichletSpectrum synthetic_halfline(const std::vector<double>& lambda, const std::vector<double>& aN) {
  DirichletSpectrum s;
  const int n = static_cast<int>(lambda.size());
  s.L = n - 1;
  s.lambda = Eigen::Map<const VecXd>(lambda.data(), n);
  s.log_aN.resize(n);
  s.log_aZ.resize(n);
  s.b = VecXd::Zero(n);
  s.d.resize(n);
  s.phi0.resize(static_cast<std::size_t>(n));
  s.phiL.resize(static_cast<std::size_t>(n));
  s.center = VecXi::Zero(n);
  for (int j = 0; j < n; ++j) {
    s.log_aN[j] = std::log(aN[static_cast<std::size_t>(j)]);
    s.log_aZ[j] = s.log_aN[j];
    s.phiL[static_cast<std::size_t>(j)] = SignedLog::from_double(std::sqrt(aN[static_cast<std::size_t>(j)]));
    s.phi0[static_cast<std::size_t>(j)] = SignedLog::from_double(std::sqrt(aN[static_cast<std::size_t>(j)]));
    double dl = (j > 0) ? lambda[static_cast<std::size_t>(j)] - lambda[static_cast<std::size_t>(j - 1)] : 1.0;
    double dr = (j + 1 < n) ? lambda[static_cast<std::size_t>(j + 1)] - lambda[static_cast<std::size_t>(j)] : 1.0;
    s.d[j] = std::min({dl, dr, 1.0});
  }
  return s;
}

Eigen::MatrixXd box_matrix(const VecXd& V) {
  const int n = static_cast<int>(V.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = V[i];
    if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = 1.0;
  }
  return A;
}

}  // namespace

TEST_CASE("single-site characteristic data") {
  VecXd V(1);
  V[0] = 0.5;
  const DirichletSpectrum s = dirichlet_eigen(V);
  // S(E) = 1 / (0.5 - E).
  const Complex E(0.2, 0.7);
  CHECK(std::abs(s_l(s, E) - 1.0 / (0.5 - E)) < 1e-14);

  // Half-line polynomial z^2 - 0.5 z; the nonzero root is an antibound
  // state at E = z + 1/z = 2.5, not a resonance.
  const auto coeffs = char_poly(s, Geometry::halfline);
  REQUIRE(coeffs.size() == 3);
  CHECK(std::abs(coeffs[0]) < 1e-12);
  CHECK(coeffs[1] == doctest::Approx(-0.5));
  CHECK(coeffs[2] == doctest::Approx(1.0));

  const FindResult fr = find_resonances(s, Geometry::halfline, Rect{-3.0, 3.0, -2.0, -1e-15});
  CHECK(fr.resonances.empty());
  REQUIRE(fr.antibound.size() == 1);
  CHECK(fr.antibound[0].z == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fr.antibound[0].energy == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("S_L is Herglotz") {
  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const PotentialSpec pot = PotentialSpec::make_anderson(1000 + i);
    const DirichletSpectrum s = dirichlet_eigen(pot, 8, 0);
    const Complex E(4.0 * rng.next_double() - 2.0, 1.5 * rng.next_double() + 1e-3);
    CHECK(s_l(s, E).imag() > 0.0);
  }
}

TEST_CASE("S_L matches the dense resolvent entry") {
  const DirichletSpectrum s = dirichlet_eigen(VecXd::Zero(4));
  const Complex E(0.1, 0.1);
  Eigen::MatrixXcd A = box_matrix(VecXd::Zero(4)).cast<Complex>();
  for (int i = 0; i < 4; ++i) A(i, i) -= E;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(4);
  rhs(3) = 1.0;
  const Eigen::VectorXcd sol = A.partialPivLu().solve(rhs);
  CHECK(std::abs(s_l(s, E) - sol(3)) < 1e-10);
}

TEST_CASE("Gamma_L structure") {
  const DirichletSpectrum s = dirichlet_eigen(VecXd::Zero(2));  // V = 0, L = 1
  const Complex E(0.3, 0.2);
  const Mat2c G = gamma_l(s, E);
  // Dense resolvent entries <delta_a, (H-E)^{-1} delta_b>, a,b in {L, 0}.
  Eigen::MatrixXcd A = box_matrix(VecXd::Zero(2)).cast<Complex>();
  for (int i = 0; i < 2; ++i) A(i, i) -= E;
  const Eigen::MatrixXcd R = A.inverse();
  CHECK(std::abs(G(0, 0) - R(1, 1)) < 1e-10);
  CHECK(std::abs(G(1, 1) - R(0, 0)) < 1e-10);
  CHECK(std::abs(G(0, 1) - R(1, 0)) < 1e-10);
  // Symmetry for real spectra.
  CHECK(G(0, 1) == G(1, 0));
  // Trace identity: tr Gamma = sum 2 a_j^Z / (lambda_j - E).
  const PotentialSpec pot = PotentialSpec::make_anderson(77);
  const DirichletSpectrum s2 = dirichlet_eigen(pot, 12, 0);
  const Mat2c G2 = gamma_l(s2, E);
  Complex tr = 0.0;
  for (int j = 0; j < s2.size(); ++j) tr += 2.0 * std::exp(s2.log_aZ[j]) / (s2.lambda[j] - E);
  CHECK(std::abs(G2.trace() - tr) < 1e-12 * std::abs(tr));
}

TEST_CASE("characteristic polynomial structure") {
  const PotentialSpec pot = PotentialSpec::make_anderson(42);
  const DirichletSpectrum s = dirichlet_eigen(pot, 10, 0);
  // z = 0 is a root (order >= 1 half-line, >= 2 line).
  const auto ph = char_poly(s, Geometry::halfline);
  CHECK(std::abs(ph[0]) < 1e-10);
  const auto pl = char_poly(s, Geometry::line);
  CHECK(std::abs(pl[0]) < 1e-10);
  CHECK(std::abs(pl[1]) < 1e-8);
  // Root set closed under conjugation.
  const auto roots = poly_roots(ph);
  for (const Complex& z : roots) {
    if (std::abs(z.imag()) < 1e-10) continue;
    bool has_conj = false;
    for (const Complex& w : roots) {
      if (std::abs(w - std::conj(z)) < 1e-6) has_conj = true;
    }
    CHECK(has_conj);
  }
  // Conditioning guard.
  const PotentialSpec big = PotentialSpec::make_anderson(43);
  const DirichletSpectrum sbig = dirichlet_eigen(big, 61, 0);
  CHECK_THROWS_AS(char_poly(sbig, Geometry::halfline), ConditioningRefusedError);
}

TEST_CASE("free operator has no resonances near the band") {
  const DirichletSpectrum s = dirichlet_eigen(VecXd::Zero(11));
  const FindResult fr = find_resonances(s, Geometry::halfline, Rect{-1.9, 1.9, -1.5, -1e-10});
  CHECK(fr.resonances.empty());
  CHECK(fr.count_certified);
  CHECK(fr.contour_count == 0);
}

TEST_CASE("resonance count bounded by L") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PotentialSpec pot = PotentialSpec::make_anderson(500 + seed);
    const int L = 10 + static_cast<int>(seed * 2);
    const DirichletSpectrum s = dirichlet_eigen(pot, L, 0);
    for (Geometry g : {Geometry::halfline, Geometry::line}) {
      const FindResult fr = find_resonances(s, g, Rect{-6.0, 6.0, -30.0, -1e-14},
                                            FindOptions{{}, false, false, 1e-8});
      int total = 0;
      for (const auto& r : fr.resonances) total += r.multiplicity;
      CHECK(total <= L);
      for (const auto& r : fr.resonances) {
        CHECK(r.im() < 0.0);
        CHECK(r.residual <= 1e-8 * CharFunction{g, &s}.residual_scale(r.energy));
      }
    }
  }
}

TEST_CASE("polynomial and grid-seeded Newton agree") {
  const PotentialSpec pot = PotentialSpec::make_anderson(3);
  const DirichletSpectrum s = dirichlet_eigen(pot, 12, 0);
  const Rect region{-2.5, 3.5, -4.0, -1e-12};
  const FindResult poly = find_resonances(s, Geometry::halfline, region);

  FindOptions opts;
  opts.force_newton = true;
  for (double x = -2.5; x <= 3.5; x += 0.05) {
    for (double y = -3.0; y < 0.0; y += 0.13) opts.seeds.push_back(Complex(x, y));
  }
  const FindResult grid = find_resonances(s, Geometry::halfline, region, opts);
  REQUIRE(poly.resonances.size() == grid.resonances.size());
  for (std::size_t i = 0; i < poly.resonances.size(); ++i) {
    CHECK(std::abs(poly.resonances[i].energy - grid.resonances[i].energy) < 1e-9);
  }
}

TEST_CASE("perturbative resonance against the polynomial root") {
  const PotentialSpec pot = PotentialSpec::make_anderson(5);
  const DirichletSpectrum s = dirichlet_eigen(pot, 14, 0);
  const FindResult fr = find_resonances(s, Geometry::halfline, Rect{-2.0, 2.0, -1.0, -1e-13},
                                        FindOptions{{}, false, false, 1e-8});
  int tested = 0;
  for (int j = 0; j < s.size(); ++j) {
    if (!perturbative_valid(s, j, Geometry::halfline)) continue;
    const double a = std::exp(s.log_aN[j]);
    if (a / (s.d[j] * s.d[j]) > 1e-2) continue;
    const Resonance pert = perturbative_resonance(s, j, Geometry::halfline);
    // Find the polished resonance attached to lambda_j.
    for (const auto& r : fr.resonances) {
      if (std::abs(r.re - s.lambda[j]) < 0.5 * s.d[j]) {
        ++tested;
        const double tol = 50.0 * (a / s.d[j]) * (a / s.d[j]) + 1e-13;
        CHECK(std::abs(pert.energy - r.energy) < tol);
        // Width bracket of Theorem 13/14: a d^2 / C <= |Im z| <= C a.
        CHECK(-pert.log_width < -std::log(a) - 2.0 * std::log(s.d[j]) + std::log(64.0) + 1e-9);
        CHECK(pert.log_width < std::log(a) + std::log(64.0));
      }
    }
  }
  CHECK(tested >= 3);
}

TEST_CASE("perturbative error scales quadratically in a_j") {
  // Synthetic spectrum with a tunable middle weight.
  auto run = [&](double a) {
    const std::vector<double> lambda{-0.5, 0.0, 0.5};
    const std::vector<double> aN{0.5 - a / 2.0, a, 0.5 - a / 2.0};
    const DirichletSpectrum s = synthetic_halfline(lambda, aN);
    const Resonance pert = perturbative_resonance(s, 1, Geometry::halfline);
    CharFunction fn{Geometry::halfline, &s};
    Complex E = pert.energy;
    REQUIRE(newton_polish([&](Complex x) { return fn(x); }, [&](Complex x) { return fn.derivative(x); }, E,
                          1e-14));
    return std::abs(pert.energy - E);
  };
  const double e1 = run(1e-3);
  const double e2 = run(5e-4);
  CHECK(e1 / e2 > 2.5);
  CHECK(e1 / e2 < 6.5);
  // a_j -> 0 limit: z_j -> lambda_j.
  const DirichletSpectrum s = synthetic_halfline({-0.5, 0.0, 0.5}, {0.5 - 5e-8, 1e-7, 0.5 - 5e-8});
  const Resonance tiny = perturbative_resonance(s, 1, Geometry::halfline);
  CHECK(std::abs(tiny.re - 0.0) < 1e-6);
  CHECK(std::exp(tiny.log_width) < 1e-6);
}

TEST_CASE("argument-principle counting") {
  const PotentialSpec pot = PotentialSpec::make_anderson(8);
  const DirichletSpectrum s = dirichlet_eigen(pot, 16, 0);
  CharFunction fn{Geometry::halfline, &s};
  // No zeros in the upper half-plane.
  CHECK(winding_rectangle([&](Complex E) { return fn(E); }, Rect{-2.0, 2.0, 0.1, 2.0}) == 0);

  // Theorem-12 rectangle R_j holds exactly one resonance; counts add over
  // a disjoint split.
  int tested = 0;
  for (int j = 0; j < s.size(); ++j) {
    if (!perturbative_valid(s, j, Geometry::halfline)) continue;
    const double a = std::exp(s.log_aN[j]);
    if (a / (s.d[j] * s.d[j]) > 1e-3) continue;
    const double C = 64.0;
    Rect rj{s.lambda[j] - C * a, s.lambda[j] + C * a, -C * a, -a * s.d[j] * s.d[j] / C};
    const int c = count_in_rectangle(fn, rj);
    CHECK(c == 1);
    Rect left = rj, right = rj;
    left.re_hi = s.lambda[j];
    right.re_lo = s.lambda[j];
    CHECK(count_in_rectangle(fn, left) + count_in_rectangle(fn, right) == c);
    if (++tested >= 2) break;
  }
  CHECK(tested >= 1);
}

TEST_CASE("resonance-free strip matches the shallowest width") {
  const PotentialSpec pot = PotentialSpec::make_anderson(12);
  const DirichletSpectrum s = dirichlet_eigen(pot, 20, 0);
  const StripResult strip = resonance_free_strip(s, Geometry::halfline, -1.5, 1.5);
  const FindResult fr = find_resonances(s, Geometry::halfline, Rect{-1.5, 1.5, -4.0, -1e-14},
                                        FindOptions{{}, false, false, 1e-8});
  REQUIRE(!fr.resonances.empty());
  double shallow = 1e300;
  for (const auto& r : fr.resonances) shallow = std::min(shallow, -r.im());
  CHECK(std::abs(strip.log_depth - std::log(shallow)) < 0.02);
  CHECK(strip.theoretical_floor_log <= strip.log_depth);
}
