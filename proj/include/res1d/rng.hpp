#ifndef RES1D_RNG_HPP
#define RES1D_RNG_HPP

#include <cstdint>

namespace res1d {

// splitmix64: tiny, fast, and bit-identical on every platform.  We do not
// use std::uniform_real_distribution anywhere because its output is
// implementation-defined; reproducibility of potentials is a contract here.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

// Deterministic sub-seed for realization r of a master-seeded ensemble.
inline std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t r) {
  SplitMix64 mix(master_seed ^ (0xd1342543de82ef95ULL * (r + 1)));
  mix.next_u64();
  return mix.next_u64();
}

}  // namespace res1d

#endif
