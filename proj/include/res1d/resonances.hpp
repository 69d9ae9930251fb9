#ifndef RES1D_RESONANCES_HPP
#define RES1D_RESONANCES_HPP

#include <optional>
#include <string>
#include <vector>

#include "res1d/charfn.hpp"
#include "res1d/contour.hpp"
#include "res1d/spectral.hpp"
#include "res1d/types.hpp"

namespace res1d {

enum class Method { poly, newton, perturbative, argprinciple };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::poly: return "poly";
    case Method::newton: return "newton";
    case Method::perturbative: return "perturbative";
    default: return "argprinciple";
  }
}

// A resonance: complex energy with Im < 0.  Widths below the double range
// are carried as (sign already implied, log|Im E|); `logscale` marks that
// the linear `energy.imag()` field is not representable.
struct Resonance {
  Complex energy{0.0, 0.0};
  double re = 0.0;         // Re E, always valid
  double log_width = 0.0;  // log|Im E|, always valid
  bool logscale = false;   // true when Im E underflows a double
  Geometry geometry = Geometry::halfline;
  int multiplicity = 1;
  Method method = Method::newton;
  double residual = 0.0;

  double im() const { return logscale ? -std::exp(log_width) : energy.imag(); }
};

// Real second-sheet roots (|z| < 1, z real): reported apart, not resonances.
struct AntiboundState {
  double energy = 0.0;
  double z = 0.0;
};

struct FindOptions {
  std::vector<Complex> seeds;   // extra Newton seeds (e.g. periodic predictions)
  bool certify_count = true;    // argument-principle certification
  bool force_newton = false;    // skip the polynomial path even for small L
  double residual_factor = 1e-8;
};

struct FindResult {
  std::vector<Resonance> resonances;
  std::vector<AntiboundState> antibound;
  int contour_count = -1;  // argument-principle count over the region (-1: not run)
  bool count_certified = true;
  std::string note;
};

// Resonances of the boxed operator in `region` (a rectangle inside
// {Im E < 0} touching a neighborhood of (-2,2)).  For L <= 60 the
// polynomial route provides the seeds; above, seeds come from the
// perturbative formula and any user-provided list, with completeness
// certified by a winding count.  A count mismatch is reported in the
// result, never dropped.
FindResult find_resonances(const DirichletSpectrum& spec, Geometry geometry, Rect region,
                           const FindOptions& opts = {});

// Theorem-12 perturbative resonance attached to the j-th Dirichlet
// eigenvalue.  Computed fully in log-scale so widths down to e^{-1e5}
// survive.  Throws ValidityViolatedError when a_j > d_j^2 / validity_c or
// the two-neighbor window leaves (-4, 4).
Resonance perturbative_resonance(const DirichletSpectrum& spec, int j, Geometry geometry,
                                 double validity_c = 64.0);
bool perturbative_valid(const DirichletSpectrum& spec, int j, Geometry geometry,
                        double validity_c = 64.0);

// Winding count of the characteristic function over the rectangle.
int count_in_rectangle(const CharFunction& charfn, Rect rect);

// Largest eta such that the strip I + i[-eta, 0) holds no resonance,
// log-bisected; also reports the Theorem-13 floor computed from the
// spectral data.
struct StripResult {
  double depth = 0.0;
  double log_depth = 0.0;
  double theoretical_floor_log = 0.0;
};
StripResult resonance_free_strip(const DirichletSpectrum& spec, Geometry geometry, double re_lo,
                                 double re_hi);

void write_resonances_csv(const std::vector<Resonance>& rs, const std::string& path);

}  // namespace res1d

#endif
