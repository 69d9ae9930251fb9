#include "res1d/stats.hpp"

#include <algorithm>
#include <cmath>

namespace res1d {

BoxCountExperiment box_counts(const std::vector<std::vector<RescaledPoint>>& points_per_realization,
                              const std::vector<Box>& boxes) {
  BoxCountExperiment exp;
  exp.boxes = boxes;
  for (const auto& b : boxes) exp.mu.push_back(b.mu());
  for (const auto& pts : points_per_realization) {
    std::vector<int> row(boxes.size(), 0);
    for (const auto& p : pts) {
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (boxes[i].contains(p)) ++row[i];
      }
    }
    exp.counts.push_back(std::move(row));
  }
  return exp;
}

namespace {

double log_factorial(int k) { return std::lgamma(k + 1.0); }

double poisson_pmf(int k, double mu) { return std::exp(k * std::log(mu) - mu - log_factorial(k)); }

}  // namespace

double gamma_q(double a, double x) {
  // Regularized upper incomplete gamma by series / continued fraction.
  if (x < 0.0 || a <= 0.0) throw Error("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    // P(a,x) by series, Q = 1 - P.
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    const double P = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - P;
  }
  // Q(a,x) by Lentz continued fraction.
  double b = x + 1.0 - a, c = 1e308, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

PoissonGofResult poisson_gof_single(const std::vector<int>& counts, double mu) {
  if (counts.size() < 100) {
    throw TooFewRealizationsError("poisson_gof: need >= 100 samples for the chi-square test");
  }
  PoissonGofResult res;
  const double n = static_cast<double>(counts.size());
  for (int c : counts) res.mean += c;
  res.mean /= n;
  for (int c : counts) res.variance += (c - res.mean) * (c - res.mean);
  res.variance /= (n - 1.0);

  const int kmax = *std::max_element(counts.begin(), counts.end());
  // Bin by count value; merge adjacent bins until expected >= 5.
  std::vector<double> expected;
  std::vector<double> observed;
  {
    std::vector<double> e(static_cast<std::size_t>(kmax) + 2, 0.0);
    std::vector<double> o(static_cast<std::size_t>(kmax) + 2, 0.0);
    double tail = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      const double pk = poisson_pmf(k, mu);
      e[static_cast<std::size_t>(k)] = n * pk;
      tail -= pk;
    }
    e[static_cast<std::size_t>(kmax) + 1] = n * std::max(tail, 0.0);  // k > kmax
    for (int c : counts) o[static_cast<std::size_t>(c)] += 1.0;
    // Merge left to right.
    double ecur = 0.0, ocur = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      ecur += e[k];
      ocur += o[k];
      if (ecur >= 5.0) {
        expected.push_back(ecur);
        observed.push_back(ocur);
        ecur = ocur = 0.0;
      }
    }
    if (ecur > 0.0) {
      if (!expected.empty()) {
        expected.back() += ecur;
        observed.back() += ocur;
      } else {
        expected.push_back(ecur);
        observed.push_back(ocur);
      }
    }
  }
  res.chi2 = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double d = observed[i] - expected[i];
    res.chi2 += d * d / expected[i];
  }
  res.dof = static_cast<int>(expected.size()) - 1;
  if (res.dof < 1) {
    res.dof = 1;
    res.p_value = 1.0;
    return res;
  }
  res.p_value = gamma_q(res.dof / 2.0, res.chi2 / 2.0);
  return res;
}

std::vector<PoissonGofResult> poisson_gof(const BoxCountExperiment& exp) {
  std::vector<PoissonGofResult> out;
  for (std::size_t b = 0; b < exp.boxes.size(); ++b) {
    std::vector<int> column;
    column.reserve(exp.counts.size());
    for (const auto& row : exp.counts) column.push_back(row[b]);
    out.push_back(poisson_gof_single(column, exp.mu[b]));
  }
  return out;
}

std::vector<CovarianceCheck> covariance_checks(const BoxCountExperiment& exp) {
  std::vector<CovarianceCheck> out;
  const std::size_t nb = exp.boxes.size();
  const double n = static_cast<double>(exp.counts.size());
  if (n < 2) return out;
  std::vector<double> mean(nb, 0.0);
  for (const auto& row : exp.counts) {
    for (std::size_t b = 0; b < nb; ++b) mean[b] += row[b];
  }
  for (auto& m : mean) m /= n;
  for (std::size_t a = 0; a < nb; ++a) {
    for (std::size_t b = a + 1; b < nb; ++b) {
      double cov = 0.0, va = 0.0, vb = 0.0;
      for (const auto& row : exp.counts) {
        cov += (row[a] - mean[a]) * (row[b] - mean[b]);
        va += (row[a] - mean[a]) * (row[a] - mean[a]);
        vb += (row[b] - mean[b]) * (row[b] - mean[b]);
      }
      cov /= (n - 1.0);
      va /= (n - 1.0);
      vb /= (n - 1.0);
      CovarianceCheck c;
      c.box_a = static_cast<int>(a);
      c.box_b = static_cast<int>(b);
      c.covariance = cov;
      const double se = std::sqrt(va * vb / n);
      c.zscore = (se > 0.0) ? cov / se : 0.0;
      out.push_back(c);
    }
  }
  return out;
}

LineFit decay_fit(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4) throw ConfigInvalidError("decay_fit: need >= 4 distinct L");
  LineFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double n = static_cast<double>(samples.size());
  for (const auto& [x, y] : samples) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  const double sse_tot = syy - sy * sy / n;
  double sse = 0.0;
  for (const auto& [x, y] : samples) {
    const double e = y - (fit.slope * x + fit.intercept);
    sse += e * e;
  }
  fit.r2 = (sse_tot > 0.0) ? 1.0 - sse / sse_tot : 1.0;
  return fit;
}

int poisson_sample(double mu, SplitMix64& rng) {
  // Knuth multiplication method; mu stays small here.
  const double limit = std::exp(-mu);
  double prod = rng.next_double();
  int k = 0;
  while (prod > limit) {
    prod *= rng.next_double();
    ++k;
  }
  return k;
}

}  // namespace res1d
