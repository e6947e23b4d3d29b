#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "hcsim/block.hpp"
#include "hcsim/geometry.hpp"

namespace hcsim {

// Block storage shared by every cache model: sets * ways_total entries,
// way-major within a set.
class CacheArray {
 public:
  CacheArray(const CacheGeometry& g, Threshold t)
      : geo(g), threshold(t), blocks_(g.blocks()) {}

  CacheGeometry geo;
  Threshold threshold;

  BlockMeta& at(std::uint32_t set, std::uint32_t way) {
    assert(set < geo.sets && way < geo.ways_total);
    return blocks_[std::size_t(set) * geo.ways_total + way];
  }
  const BlockMeta& at(std::uint32_t set, std::uint32_t way) const {
    assert(set < geo.sets && way < geo.ways_total);
    return blocks_[std::size_t(set) * geo.ways_total + way];
  }

  int find(std::uint32_t set, std::uint64_t tag) const {
    const BlockMeta* row = &blocks_[std::size_t(set) * geo.ways_total];
    for (std::uint32_t w = 0; w < geo.ways_total; ++w)
      if (row[w].valid && row[w].tag == tag) return int(w);
    return -1;
  }

  // First invalid way in [lo, hi), or -1.
  int free_way(std::uint32_t set, std::uint32_t lo, std::uint32_t hi) const {
    for (std::uint32_t w = lo; w < hi; ++w)
      if (!at(set, w).valid) return int(w);
    return -1;
  }

  // Valid way in [lo, hi) minimizing `metric`, lowest way index on ties.
  template <class Metric>
  int min_way(std::uint32_t set, std::uint32_t lo, std::uint32_t hi, Metric metric) const {
    int best = -1;
    std::uint32_t best_value = 0;
    for (std::uint32_t w = lo; w < hi; ++w) {
      const BlockMeta& b = at(set, w);
      if (!b.valid) continue;
      std::uint32_t v = metric(b);
      if (best < 0 || v < best_value) {
        best = int(w);
        best_value = v;
      }
    }
    return best;
  }

  void region_bounds(Region r, std::uint32_t& lo, std::uint32_t& hi) const {
    lo = r == Region::Sram ? 0 : geo.ways_sram;
    hi = r == Region::Sram ? geo.ways_sram : geo.ways_total;
  }

  // Scenario and test setup: drop a valid block straight into a way.
  void preload(std::uint32_t set, std::uint32_t way, std::uint64_t tag, bool dirty = false,
               std::uint64_t content = 0) {
    BlockMeta& b = at(set, way);
    b = BlockMeta{};
    b.valid = true;
    b.tag = tag;
    b.dirty = dirty;
    b.content = content;
  }

  std::uint64_t valid_blocks() const {
    std::uint64_t n = 0;
    for (const BlockMeta& b : blocks_) n += b.valid ? 1 : 0;
    return n;
  }

  const std::vector<BlockMeta>& raw_blocks() const { return blocks_; }

  void load_blocks(const std::vector<BlockMeta>& b) {
    assert(b.size() == blocks_.size());
    blocks_ = b;
  }

  void invalidate_all() {
    for (BlockMeta& b : blocks_) b = BlockMeta{};
  }

  bool same_blocks(const CacheArray& o) const { return blocks_ == o.blocks_; }

#ifndef NDEBUG
  // A block address lives in at most one way of its set.
  void check_single_residency(std::uint32_t set) const {
    for (std::uint32_t a = 0; a < geo.ways_total; ++a) {
      if (!at(set, a).valid) continue;
      for (std::uint32_t b = a + 1; b < geo.ways_total; ++b)
        assert(!(at(set, b).valid && at(set, b).tag == at(set, a).tag));
    }
  }
#else
  void check_single_residency(std::uint32_t) const {}
#endif

 protected:
  std::vector<BlockMeta> blocks_;
};

}  // namespace hcsim
