#ifndef RES1D_POTENTIAL_HPP
#define RES1D_POTENTIAL_HPP

#include <cstdint>
#include <vector>

#include "res1d/rng.hpp"
#include "res1d/types.hpp"

namespace res1d {

// Disorder law: a bounded density with compact support.  Uniform on
// [lo, hi] by default; lo == hi degenerates to the constant potential
// (useful as the free/elliptic control case).
struct DisorderLaw {
  double lo = 0.0;
  double hi = 1.0;

  double sample(SplitMix64& rng) const {
    if (hi == lo) return lo;
    return lo + (hi - lo) * rng.next_double();
  }
};

struct PeriodicSpec {
  int period = 1;
  std::vector<double> values;  // exactly `period` entries
};

struct AndersonSpec {
  std::uint64_t master_seed = 0;
  DisorderLaw law;
};

struct PotentialSpec {
  enum class Kind { periodic, anderson } kind = Kind::periodic;
  PeriodicSpec periodic;
  AndersonSpec anderson;

  static PotentialSpec make_periodic(std::vector<double> values) {
    PotentialSpec p;
    p.kind = Kind::periodic;
    p.periodic.period = static_cast<int>(values.size());
    p.periodic.values = std::move(values);
    if (p.periodic.period < 1) throw ConfigInvalidError("periodic potential needs period >= 1");
    return p;
  }

  static PotentialSpec make_anderson(std::uint64_t master_seed, DisorderLaw law = {}) {
    PotentialSpec p;
    p.kind = Kind::anderson;
    p.anderson.master_seed = master_seed;
    p.anderson.law = law;
    return p;
  }

  bool is_periodic() const { return kind == Kind::periodic; }

  // Diagonal V_0..V_L for the box [0, L]; realization r selects the
  // deterministic substream in the Anderson case.
  VecXd diagonal(int L, std::uint64_t r = 0) const {
    VecXd V(L + 1);
    if (kind == Kind::periodic) {
      const int p = periodic.period;
      for (int n = 0; n <= L; ++n) V[n] = periodic.values[static_cast<std::size_t>(n % p)];
    } else {
      SplitMix64 rng(substream_seed(anderson.master_seed, r));
      for (int n = 0; n <= L; ++n) V[n] = anderson.law.sample(rng);
    }
    return V;
  }
};

// Reflection of the shifted potential: W(n) = V(k - n).  The delta_0
// spectral measure of -Delta + W on N (Dirichlet) is dN_k^-.
inline VecXd reflected_shifted_diagonal(const PeriodicSpec& ps, int k, int L) {
  VecXd W(L + 1);
  const int p = ps.period;
  for (int n = 0; n <= L; ++n) {
    int idx = (k - n) % p;
    if (idx < 0) idx += p;
    W[n] = ps.values[static_cast<std::size_t>(idx)];
  }
  return W;
}

}  // namespace res1d

#endif
