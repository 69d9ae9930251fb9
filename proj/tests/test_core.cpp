#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "doctest.h"
#include "res1d/rng.hpp"
#include "res1d/theta.hpp"

using namespace res1d;

namespace {

// Physical-sheet closed form, independent of the implementation path.
Complex theta_principal_upper(Complex E) { return -std::acos(E / 2.0); }

}  // namespace

TEST_CASE("theta at simple real energies") {
  auto tv = theta(Complex(0.0, 0.0));
  CHECK(std::abs(tv.theta - Complex(-M_PI / 2.0, 0.0)) < 1e-14);
  CHECK(std::abs(tv.z - Complex(0.0, 1.0)) < 1e-14);

  auto tv2 = theta(Complex(std::sqrt(2.0), 0.0));
  CHECK(std::abs(tv2.theta - Complex(-M_PI / 4.0, 0.0)) < 1e-13);
}

TEST_CASE("theta continued branch at E = 0.3 - 0.2i") {
  const Complex E(0.3, -0.2);
  auto tv = theta(E);
  CHECK(tv.theta.imag() < 0.0);
  CHECK(std::abs(tv.z) < 1.0);
  CHECK(tv.z.imag() > 0.0);
  CHECK(tv.sheet == Sheet::second);
  CHECK(std::abs(2.0 * std::cos(tv.theta) - E) < 1e-12 * std::abs(E));

  // Independent oracle: Newton on 2 cos t = E seeded with the conjugate of
  // the physical-sheet value at conj(E).
  Complex t = std::conj(theta_principal_upper(std::conj(E)));
  for (int it = 0; it < 60; ++it) {
    const Complex f = 2.0 * std::cos(t) - E;
    t -= f / (-2.0 * std::sin(t));
    if (std::abs(f) < 1e-15) break;
  }
  CHECK(std::abs(t - tv.theta) < 1e-12);
}

TEST_CASE("theta invariants") {
  SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Complex E(4.0 * rng.next_double() - 2.0, 3.0 * rng.next_double() - 1.5);
    if (std::abs(E.imag()) < 1e-6) continue;
    auto tv = theta(E);
    // 2 cos theta reconstructs E.
    CHECK(std::abs(2.0 * std::cos(tv.theta) - E) < 1e-12 * std::max(1.0, std::abs(E)));
    // E = z + 1/z.
    CHECK(std::abs(tv.z + 1.0 / tv.z - E) < 1e-12 * std::max(1.0, std::abs(E)));
    CHECK(tv.z.imag() > 0.0);
    // Sheet structure.
    if (E.imag() > 0.0) {
      CHECK(std::abs(tv.z) > 1.0);
      CHECK(tv.theta.imag() > 0.0);
      CHECK(tv.theta.real() > -M_PI);
      CHECK(tv.theta.real() < 0.0);
    } else {
      CHECK(std::abs(tv.z) < 1.0);
      CHECK(tv.theta.imag() < 0.0);
    }
    // Conjugation rule and |z(E)| |z(conj E)| = 1.
    auto tvc = theta(std::conj(E));
    CHECK(std::abs(tvc.theta - std::conj(tv.theta)) < 1e-12);
    CHECK(std::abs(std::abs(tv.z) * std::abs(tvc.z) - 1.0) < 1e-12);
  }
  // theta of 2 cos is the identity on the strip.
  for (int i = 0; i < 100; ++i) {
    const Complex t(-M_PI * rng.next_double(), 3.0 * rng.next_double() - 1.5);
    if (std::abs(t.real()) < 1e-3 || std::abs(t.real() + M_PI) < 1e-3) continue;
    const Complex E = 2.0 * std::cos(t);
    if (std::abs(E.imag()) < 1e-9) continue;
    auto tv = theta(E);
    CHECK(std::abs(tv.theta - t) < 1e-11 * std::max(1.0, std::abs(t)));
  }
}

TEST_CASE("theta branch cut error") {
  CHECK_THROWS_AS(theta(Complex(2.5, 0.0)), BranchCutError);
  CHECK_THROWS_AS(theta(Complex(-3.0, 0.0)), BranchCutError);
  CHECK_NOTHROW(theta(Complex(1.9, 0.0)));
}

TEST_CASE("cot_inverse determination") {
  // w = 2i.
  {
    const Complex u = cot_inverse(Complex(0.0, 2.0));
    CHECK(u.real() >= 0.0);
    CHECK(u.real() < M_PI);
    CHECK(u.imag() < 0.0);
    CHECK(std::abs(std::cos(u) / std::sin(u) - Complex(0.0, 2.0)) < 1e-12);
  }
  // Large |w|: u -> 0 with Im u ~ -1/|w| scale; relative residual small.
  {
    const Complex w(1.0, 1e6);
    const Complex u = cot_inverse(w);
    CHECK(std::abs(std::cos(u) / std::sin(u) - w) / std::abs(w) < 1e-9);
  }
  // Near the singularity w = i + eps: deep in the strip,
  // Im u ~ -(1/2) |log(eps/2)|.
  {
    const double eps = 1e-3;
    const Complex u = cot_inverse(Complex(eps, 1.0));
    CHECK(u.imag() < 0.0);
    CHECK(std::abs(-u.imag() - 0.5 * std::abs(std::log(eps / 2.0))) < 0.3);
    // cot u = i + 2i e^{-2iu} + O(e^{-4iu}) near -i infinity.
    const Complex recon = Complex(0.0, 1.0) * (1.0 + 2.0 * std::exp(Complex(0.0, -2.0) * u));
    CHECK(std::abs(recon - Complex(eps, 1.0)) < 20.0 * eps * eps);
  }
  CHECK_THROWS_AS(cot_inverse(Complex(1.0, -0.5)), OutOfDomainError);
  CHECK_THROWS_AS(cot_inverse(Complex(0.0, 1.0)), OutOfDomainError);
}

TEST_CASE("free resolvent diagonal against quadrature oracle") {
  // Trapezoid quadrature of (1/2pi) int dtheta / (2 cos theta - E).  The
  // integrand is periodic analytic with a singularity ~|Im E| off the path,
  // so the node count must beat e^{-N |Im E| / (2 sin)}.
  auto oracle = [](Complex E, long N) {
    Complex acc = 0.0, comp = 0.0;
    for (long i = 0; i < N; ++i) {
      const double th = 2.0 * M_PI * (static_cast<double>(i) + 0.5) / static_cast<double>(N);
      const Complex t = 1.0 / (2.0 * std::cos(th) - E);
      const Complex y = t - comp;
      const Complex s = acc + y;
      comp = (s - acc) - y;
      acc = s;
    }
    return acc / static_cast<double>(N);
  };
  const Complex E(0.5, 1e-6);
  CHECK(std::abs(free_resolvent_entry(0, 0, E) - oracle(E, 60000000)) < 1e-6);
  const Complex E2(3.0, 1e-9);
  // Physical-sheet limit at E = 3: -1 / (2 sqrt((E/2)^2 - 1)).
  CHECK(std::abs(free_resolvent_entry(0, 0, E2) - (-0.5 / std::sqrt(1.25))) < 1e-6);
  // Geometric structure: entry(n+2, n) = entry(n, n) e^{2 i theta}.
  const Complex E3(0.7, 0.4);
  const Complex ratio = free_resolvent_entry(2, 0, E3) / free_resolvent_entry(0, 0, E3);
  const Complex eith = 1.0 / branch_z(E3);
  CHECK(std::abs(ratio - eith * eith) < 1e-12);
}

TEST_CASE("free resolvent diagonal is Herglotz on (-2,2)") {
  for (double x : {-1.5, -0.3, 0.0, 0.9, 1.8}) {
    const Complex g = free_resolvent_entry(0, 0, Complex(x, 1e-9));
    CHECK(g.imag() > 0.0);
  }
}

TEST_CASE("free halfline resolvent") {
  const Complex E(1.0, 0.5);
  // (H0 - E) R0 v = v on a window, Dirichlet at -1.
  std::vector<Complex> v(6, 0.0);
  v[3] = Complex(1.0, 0.0);
  const long lo = 0, hi = 40;
  const auto u = free_halfline_apply(v, E, lo - 1, hi + 1);
  auto at = [&](long n) { return u[static_cast<std::size_t>(n - (lo - 1))]; };
  CHECK(std::abs(at(-1)) < 1e-10);
  for (long n = lo; n < hi; ++n) {
    const Complex lhs = at(n + 1) + (n >= 1 ? at(n - 1) : Complex(0.0, 0.0)) - E * at(n);
    const Complex rhs = (n < static_cast<long>(v.size())) ? v[static_cast<std::size_t>(n)] : Complex(0.0);
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
  // Outgoing decay e^{i n theta} for Im E > 0.
  const Complex decay = at(30) / at(29);
  CHECK(std::abs(decay - 1.0 / branch_z(E)) < 1e-7);

  // Dense-solve oracle: truncated tridiagonal with outgoing boundary.
  {
    std::vector<Complex> w(4, 0.0);
    w[3] = Complex(1.0, 0.0);
    const Complex E2(1.0, 0.5);
    const int N = 200;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
      A(i, i) = -E2;
      if (i + 1 < N) {
        A(i, i + 1) = 1.0;
        A(i + 1, i) = 1.0;
      }
    }
    // Outgoing tail u(N) = e^{i theta} u(N-1) folded into the last row.
    A(N - 1, N - 1) += 1.0 / branch_z(E2);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(N);
    for (int i = 0; i < 4; ++i) rhs(i) = w[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd sol = A.partialPivLu().solve(rhs);
    const auto mine = free_halfline_apply(w, E2, 0, 20);
    for (int n = 0; n <= 20; ++n) {
      CHECK(std::abs(mine[static_cast<std::size_t>(n)] - sol(n)) < 1e-8);
    }
  }
}
