#pragma once

#include <bit>
#include <cassert>
#include <cstdint>

#include "hcsim/geometry.hpp"

namespace hcsim {

// Intensity counters saturate at the threshold value, so each needs
// ceil(log2(threshold+1)) bits of per-block storage.
struct Threshold {
  std::uint32_t value = 7;

  std::uint32_t counter_bits() const {
    assert(value >= 1);
    return std::uint32_t(std::bit_width(value));
  }
};

// Confidence walks 00 -> 01 -> 10 -> 11 and sticks at 11.
inline std::uint8_t conf_advance(std::uint8_t conf) {
  assert(conf <= 3);
  return conf == 3 ? std::uint8_t(3) : std::uint8_t(conf + 1);
}

// Per-block state. `content` is the id of the last write applied to the
// block (0 = never written); it stands in for the data so functional
// correctness stays checkable against main memory.
struct BlockMeta {
  bool valid = false;
  bool dirty = false;
  std::uint64_t tag = 0;
  std::uint8_t ric = 0;
  std::uint8_t wic = 0;
  std::uint8_t conf = 0;
  std::uint64_t content = 0;

  bool operator==(const BlockMeta&) const = default;

  void check(std::uint32_t threshold) const {
    assert(ric <= threshold);
    assert(wic <= threshold);
    assert(conf <= 3);
    if (!valid) assert(!dirty && tag == 0 && ric == 0 && wic == 0 && conf == 0 && content == 0);
    (void)threshold;
  }
};

struct StorageOverhead {
  std::uint64_t metadata_bits = 0;
  std::uint64_t table_bits = 0;
  double fraction = 0.0;  // of 8 * total_cache_bytes
};

// Metadata cost of the policy: two intensity counters plus the 2-bit
// confidence field per block, plus the one-bit prediction table.
// total_cache_bytes defaults to the geometry's own capacity; pass a larger
// value when the budget is quoted against a bigger L1 complex.
inline StorageOverhead storage_overhead(const CacheGeometry& g, std::uint64_t table_entries,
                                        Threshold threshold, std::uint64_t total_cache_bytes = 0) {
  if (total_cache_bytes == 0) total_cache_bytes = g.capacity_bytes;
  StorageOverhead o;
  o.metadata_bits = g.blocks() * (2 * threshold.counter_bits() + 2);
  o.table_bits = table_entries;
  o.fraction = double(o.metadata_bits + o.table_bits) / double(8 * total_cache_bytes);
  return o;
}

}  // namespace hcsim
