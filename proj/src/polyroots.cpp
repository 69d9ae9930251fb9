#include "res1d/polyroots.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace res1d {

namespace {

// p *= (z^2 - lam z + 1), in place (ascending coefficients).
std::vector<double> mul_quadratic(const std::vector<double>& p, double lam) {
  std::vector<double> q(p.size() + 2, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    q[i] += p[i];
    q[i + 1] -= lam * p[i];
    q[i + 2] += p[i];
  }
  return q;
}

std::vector<double> product_skipping(const VecXd& lambda, int skip) {
  std::vector<double> p{1.0};
  for (int k = 0; k < lambda.size(); ++k) {
    if (k == skip) continue;
    p = mul_quadratic(p, lambda[k]);
  }
  return p;
}

void axpy(std::vector<double>& acc, double alpha, const std::vector<double>& p, std::size_t shift = 0) {
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i + shift] += alpha * p[i];
}

}  // namespace

std::vector<double> char_poly(const DirichletSpectrum& spec, Geometry geometry) {
  const int n = spec.size();
  if (spec.L > 60) {
    throw ConditioningRefusedError("char_poly: monomial basis refused for L > 60");
  }
  const std::vector<double> full = product_skipping(spec.lambda, -1);
  std::vector<double> poly;
  if (geometry == Geometry::halfline) {
    poly = full;
    for (int j = 0; j < n; ++j) {
      const double a = std::exp(spec.log_aN[j]);
      if (a == 0.0) continue;
      axpy(poly, -a, product_skipping(spec.lambda, j));
    }
  } else {
    poly.assign(full.size() + 1, 0.0);
    axpy(poly, 1.0, full, 1);  // z * prod
    for (int j = 0; j < n; ++j) {
      const double a = std::exp(spec.log_aZ[j]);
      const std::vector<double> pj = product_skipping(spec.lambda, j);
      if (a != 0.0) axpy(poly, -2.0 * a, pj, 1);
      if (spec.b[j] != 0.0) axpy(poly, -spec.b[j], pj, 0);
    }
  }
  return poly;
}

Complex poly_eval(const std::vector<double>& coeffs, Complex z) {
  Complex v = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * z + coeffs[i];
  return v;
}

std::vector<Complex> poly_roots(const std::vector<double>& coeffs) {
  std::vector<double> c(coeffs);
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  const int deg = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(deg));
  for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()[i]);
  return roots;
}

}  // namespace res1d
