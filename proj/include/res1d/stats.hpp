#ifndef RES1D_STATS_HPP
#define RES1D_STATS_HPP

#include <vector>

#include "res1d/randomres.hpp"
#include "res1d/types.hpp"

namespace res1d {

struct Box {
  double x_lo = 0.0, x_hi = 0.0;
  double y_lo = 0.0, y_hi = 0.0;
  double mu() const { return (x_hi - x_lo) * (y_hi - y_lo); }
  bool contains(const RescaledPoint& p) const {
    return p.x >= x_lo && p.x < x_hi && p.y >= y_lo && p.y < y_hi;
  }
};

struct BoxCountExperiment {
  std::vector<Box> boxes;
  std::vector<std::vector<int>> counts;  // counts[realization][box]
  std::vector<double> mu;                // expected means |I||C|
};

BoxCountExperiment box_counts(const std::vector<std::vector<RescaledPoint>>& points_per_realization,
                              const std::vector<Box>& boxes);

struct PoissonGofResult {
  double mean = 0.0;
  double variance = 0.0;
  double chi2 = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Chi-square test of one box's count histogram against Poisson(mu); bins
// with expected count below 5 are merged.  Requires >= 100 samples.
PoissonGofResult poisson_gof_single(const std::vector<int>& counts, double mu);

std::vector<PoissonGofResult> poisson_gof(const BoxCountExperiment& exp);

// Pairwise empirical covariance between disjoint boxes with a z-score
// against 0 (the factorization check; labeled non-conclusive).
struct CovarianceCheck {
  int box_a = 0, box_b = 0;
  double covariance = 0.0;
  double zscore = 0.0;
};
std::vector<CovarianceCheck> covariance_checks(const BoxCountExperiment& exp);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
// Least-squares line through (L, log_width) samples.
LineFit decay_fit(const std::vector<std::pair<double, double>>& samples);

// Upper regularized incomplete gamma Q(a, x) (chi-square tail probability
// is Q(k/2, x/2)).
double gamma_q(double a, double x);

// Synthetic Poisson sampler (inversion for small mu), for the test oracles.
int poisson_sample(double mu, SplitMix64& rng);

}  // namespace res1d

#endif
