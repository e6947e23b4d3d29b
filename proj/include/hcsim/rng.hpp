#pragma once

#include <cassert>
#include <cstdint>

namespace hcsim {

// SplitMix64. Every seeded decision in the simulator draws from this
// generator so runs are bit-reproducible across platforms and languages.
struct SplitMix64 {
  std::uint64_t state = 0;

  SplitMix64() = default;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Inclusive bounds. Span is tiny next to 2^64, modulo bias is irrelevant,
  // and the mapping is pinned so recorded constants stay valid.
  std::uint64_t next_range(std::uint64_t lo, std::uint64_t hi) {
    assert(lo <= hi);
    return lo + next() % (hi - lo + 1);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return double(next() >> 11) * 0x1.0p-53; }
};

}  // namespace hcsim
