#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"
#include "res1d/rng.hpp"
#include "res1d/spectral.hpp"

using namespace res1d;

namespace {

VecXd zeros_vec(int n) { return VecXd::Zero(n); }

// Dense symmetric eigensolve oracle.
struct DenseEig {
  VecXd lambda;
  Eigen::MatrixXd vecs;
};
DenseEig dense_oracle(const VecXd& V) {
  const int n = static_cast<int>(V.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = V[i];
    if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

TEST_CASE("free box closed forms") {
  // L = 1: lambda = {-1, 1}, a_j^N = 1/2 each.
  {
    const DirichletSpectrum s = dirichlet_eigen(zeros_vec(2));
    CHECK(std::abs(s.lambda[0] + 1.0) < 1e-12);
    CHECK(std::abs(s.lambda[1] - 1.0) < 1e-12);
    CHECK(std::abs(std::exp(s.log_aN[0]) - 0.5) < 1e-10);
    CHECK(std::abs(std::exp(s.log_aN[1]) - 0.5) < 1e-10);
  }
  // Free sine basis: lambda_k = 2 cos(k pi / (L+2)).
  for (int L : {9, 10}) {
    const DirichletSpectrum s = dirichlet_eigen(zeros_vec(L + 1));
    for (int j = 0; j <= L; ++j) {
      const int k = L + 1 - j;  // increasing order
      CHECK(std::abs(s.lambda[j] - 2.0 * std::cos(k * M_PI / (L + 2.0))) < 1e-12);
    }
    double sum = 0.0;
    for (int j = 0; j <= L; ++j) sum += std::exp(s.log_aN[j]);
    CHECK(std::abs(sum - 1.0) < 1e-10);
  }
}

TEST_CASE("anderson spectrum against dense oracle") {
  const PotentialSpec pot = PotentialSpec::make_anderson(7);
  const VecXd V = pot.diagonal(40);
  const DirichletSpectrum s = dirichlet_eigen(V);
  const DenseEig oracle = dense_oracle(V);
  for (int j = 0; j <= 40; ++j) {
    CHECK(std::abs(s.lambda[j] - oracle.lambda[j]) < 1e-10);
    // Boundary values agree in log within 1e-6 relative.
    const double phi0 = std::abs(oracle.vecs(0, j));
    const double phiL = std::abs(oracle.vecs(40, j));
    CHECK(std::abs(s.phi0[static_cast<std::size_t>(j)].log_abs - std::log(phi0)) <
          1e-6 * std::max(1.0, std::abs(std::log(phi0))));
    CHECK(std::abs(s.phiL[static_cast<std::size_t>(j)].log_abs - std::log(phiL)) <
          1e-6 * std::max(1.0, std::abs(std::log(phiL))));
  }
}

TEST_CASE("sturm count matches eigenvalue ranks") {
  const PotentialSpec pot = PotentialSpec::make_anderson(21);
  const VecXd V = pot.diagonal(60);
  const DirichletSpectrum s = dirichlet_eigen(V);
  SplitMix64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const double t = -2.5 + 6.0 * rng.next_double();
    int expected = 0;
    for (int j = 0; j < s.size(); ++j) {
      if (s.lambda[j] <= t) ++expected;
    }
    CHECK(sturm_count(V, t) == expected);
  }
}

TEST_CASE("weight normalizations") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const PotentialSpec pot = PotentialSpec::make_anderson(seed);
    const DirichletSpectrum s = dirichlet_eigen(pot, 35, 0);
    double sN = 0.0, sZ = 0.0;
    for (int j = 0; j < s.size(); ++j) {
      sN += std::exp(s.log_aN[j]);
      sZ += std::exp(s.log_aZ[j]);
    }
    CHECK(std::abs(sN - 1.0) < 1e-10);
    CHECK(std::abs(sZ - 1.0) < 1e-10);
  }
}

TEST_CASE("b coefficient identities") {
  // Free V = 0, L = 3: closed-form sine eigenvectors.
  {
    const DirichletSpectrum s = dirichlet_eigen(zeros_vec(4));
    double sb = 0.0, slb = 0.0;
    for (int j = 0; j < s.size(); ++j) {
      sb += s.b[j];
      slb += s.lambda[j] * s.b[j];
    }
    CHECK(std::abs(sb) < 1e-10);
    CHECK(std::abs(slb + 1.0) < 1e-10);
  }
  // Single site: empty sum convention.
  {
    VecXd V(1);
    V[0] = 0.5;
    const DirichletSpectrum s = dirichlet_eigen(V);
    CHECK(s.b[0] == 0.0);
  }
  // Anderson at L = 25; also check the |E| -> infinity limit of the double
  // sum: sum_{j,j'} det^2 = 2.
  {
    const PotentialSpec pot = PotentialSpec::make_anderson(1);
    const DirichletSpectrum s = dirichlet_eigen(pot, 25, 0);
    double sb = 0.0, slb = 0.0;
    for (int j = 0; j < s.size(); ++j) {
      sb += s.b[j];
      slb += s.lambda[j] * s.b[j];
    }
    CHECK(std::abs(sb) < 1e-8);
    CHECK(std::abs(slb + 1.0) < 1e-8);

    double dsum = 0.0;
    for (int j = 0; j < s.size(); ++j) {
      for (int jp = 0; jp < s.size(); ++jp) {
        if (jp == j) continue;
        const SignedLog det = sub(s.phi0[static_cast<std::size_t>(j)] * s.phiL[static_cast<std::size_t>(jp)],
                                  s.phi0[static_cast<std::size_t>(jp)] * s.phiL[static_cast<std::size_t>(j)]);
        dsum += std::exp(2.0 * det.log_abs);
      }
    }
    CHECK(std::abs(dsum - 2.0) < 1e-8);
  }
}

TEST_CASE("spacings follow the min-gap rule") {
  const PotentialSpec pot = PotentialSpec::make_anderson(9);
  const DirichletSpectrum s = dirichlet_eigen(pot, 30, 0);
  for (int j = 0; j < s.size(); ++j) {
    double expect = 1.0;
    if (j > 0) expect = std::min(expect, s.lambda[j] - s.lambda[j - 1]);
    if (j + 1 < s.size()) expect = std::min(expect, s.lambda[j + 1] - s.lambda[j]);
    CHECK(s.d[j] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("localized boundary weights stay representable in log scale") {
  const PotentialSpec pot = PotentialSpec::make_anderson(1234);
  const DirichletSpectrum s = dirichlet_eigen(pot, 400, 0);
  // Sanity: all log weights finite, many far below the double range.
  int tiny = 0;
  for (int j = 0; j < s.size(); ++j) {
    CHECK(std::isfinite(s.log_aN[j]));
    if (s.log_aN[j] < -100.0) ++tiny;
  }
  CHECK(tiny > 20);
}

TEST_CASE("periodic band-interior weights scale like 1/L") {
  const PotentialSpec pot = PotentialSpec::make_periodic({0.0, 1.0});
  for (int L : {120, 240}) {
    const DirichletSpectrum s = dirichlet_eigen(pot, L, 0);
    for (int j = 0; j < s.size(); ++j) {
      const double lam = s.lambda[j];
      if (lam > -1.4 && lam < -0.7) {  // interior of the lower band
        const double aL = std::exp(s.log_aN[j]) * L;
        CHECK(aL > 1.0 / 50.0);
        CHECK(aL < 50.0);
      }
    }
  }
}
