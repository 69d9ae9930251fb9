#ifndef RES1D_ANDERSON_HPP
#define RES1D_ANDERSON_HPP

#include <cstdint>
#include <vector>

#include "res1d/potential.hpp"
#include "res1d/spectral.hpp"
#include "res1d/types.hpp"

namespace res1d {

struct AndersonEnsemble {
  DisorderLaw law;
  std::uint64_t master_seed = 0;

  PotentialSpec potential() const { return PotentialSpec::make_anderson(master_seed, law); }
  VecXd realization(int L, std::uint64_t r) const { return potential().diagonal(L, r); }
};

struct LyapunovEstimate {
  double rho = 0.0;
  double stderr_ = 0.0;
};

// Transfer-cocycle growth rate by vector propagation with renormalization
// every 16 steps; replica average with spread-based standard error.
LyapunovEstimate lyapunov(const AndersonEnsemble& ens, double E, long length, int replicas,
                          std::uint64_t stream_offset = 1u << 20);

// Same quantity from the inverse cocycle (right-to-left), used as a
// symmetry check.
LyapunovEstimate lyapunov_backward(const AndersonEnsemble& ens, double E, long length, int replicas,
                                   std::uint64_t stream_offset = 1u << 20);

// Integrated density of states by averaged Sturm-count fractions.
double ids(const AndersonEnsemble& ens, double E, int L, int replicas,
           std::uint64_t stream_offset = 2u << 20);

// rho and n on a grid with spline interpolation for the rescaling maps.
class LyapunovCurve {
 public:
  // Builds rho on [lo, hi] with the given step; n(E) by centered IDS
  // differences on a large box.
  static LyapunovCurve build(const AndersonEnsemble& ens, double lo, double hi, double step = 1e-2,
                             long rho_length = 200000, int rho_replicas = 4, int ids_box = 100000,
                             double ids_halfwidth = 0.025);

  double rho(double E) const;
  double n(double E) const;
  // integral over [a,b] of n(E) dE (from the IDS spline) and of
  // min(c/rho, 1) n dE and of n/rho.
  double integral_n(double a, double b) const;
  double integral_min_c_over_rho_n(double a, double b, double c) const;
  double integral_n_over_rho(double a, double b) const;
  double max_rho(double a, double b) const;

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& rho_values() const { return rho_; }
  const std::vector<double>& n_values() const { return n_; }
  const std::vector<double>& rho_stderr() const { return rho_err_; }

 private:
  std::vector<double> grid_, rho_, rho_err_, n_, ids_;
  double interp(const std::vector<double>& y, double E) const;
};

// Per-eigenvalue localization diagnostics: center, one-sided regression
// slopes of log(|phi(x)| + |phi(x-1)|) against |x - x_c|.
struct LocalizationRecord {
  int j = 0;
  double lambda = 0.0;
  int center = 0;
  double slope_left = 0.0;
  double slope_right = 0.0;
  bool left_ok = false, right_ok = false;  // enough sites to regress
};
std::vector<LocalizationRecord> localization_diagnostics(const VecXd& V,
                                                         const DirichletSpectrum& spec,
                                                         double delta = 0.1);

}  // namespace res1d

#endif
