#pragma once

#include <cmath>
#include <cstdint>

namespace ac {

// splitmix64; one instance per sampled structure keeps streams independent.
struct SplitMix64 {
  std::uint64_t s = 0;

  explicit SplitMix64(std::uint64_t seed) : s(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t kind,
                                   std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(seed ^ (kind * 0xA0761D6478BD642Full) ^
               ((a + 1) * 0xE7037ED1A0B428DBull) ^
               ((b + 1) * 0x8EBC6AF09C88C6E3ull));
  g.next();
  return g.next();
}

// Skip sampler for Bernoulli(p) slot sequences: yields the gap (number of
// misses) before the next hit, so a row of n slots is sampled in O(np).
struct GapSampler {
  SplitMix64 g;
  double inv_log_q = 0.0;
  bool all = false;
  bool none = false;

  GapSampler(std::uint64_t seed, double p) : g(seed) {
    if (p >= 1.0)
      all = true;
    else if (p <= 0.0)
      none = true;
    else
      inv_log_q = 1.0 / std::log1p(-p);
  }

  std::uint64_t next_gap() {
    if (all) return 0;
    if (none) return ~0ull;
    return static_cast<std::uint64_t>(std::log1p(-g.uniform()) * inv_log_q);
  }
};

}  // namespace ac
