#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hcsim/cache_array.hpp"
#include "hcsim/fixed.hpp"
#include "hcsim/hybrid_cache.hpp"
#include "hcsim/memory_image.hpp"
#include "hcsim/technology.hpp"

namespace hcsim {

struct BackupPolicy {
  // Clean displaced or unmoved blocks duplicate main memory, so by default
  // they are dropped without a write. Fidelity runs can force the write;
  // it stores the identical content and never changes the image.
  bool write_clean = false;
};

struct BackupReport {
  std::uint64_t n_w_l1 = 0;    // blocks saved into STT-RAM
  std::uint64_t n_w_main = 0;  // blocks written to main memory
  std::uint64_t backup_cycles = 0;
  Fixed6 backup_time_ns;

  void finalize(const TechnologyParams& tech) {
    backup_cycles = n_w_l1 * tech.sttram.write_cycles + n_w_main * tech.pcm.write_cycles;
    backup_time_ns = tech.clock_period_ns.times(backup_cycles);
  }
};

// Power-failure backup for the hybrid cache. Per set, SRAM blocks are
// processed in descending conf (ties: descending wic, then lowest way) and
// pushed into the set's STT-RAM ways: a free way if one exists, otherwise
// the lowest-priority STT-RAM block (ascending conf, lowest way on ties)
// is displaced, provided the incoming block's conf is at least the
// victim's. Everything that does not make it into STT-RAM is written to
// main memory if dirty and dropped. SRAM ends up fully invalid.
inline BackupReport backup(HybridCache& c, MemoryImage& mem, const TechnologyParams& tech,
                           BackupPolicy pol = {}) {
  BackupReport rep;
  const CacheGeometry& g = c.geo;
  std::vector<std::uint32_t> order;
  order.reserve(g.ways_sram);
  for (std::uint32_t set = 0; set < g.sets; ++set) {
    order.clear();
    for (std::uint32_t w = 0; w < g.ways_sram; ++w)
      if (c.at(set, w).valid) order.push_back(w);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      const BlockMeta& x = c.at(set, a);
      const BlockMeta& y = c.at(set, b);
      if (x.conf != y.conf) return x.conf > y.conf;
      if (x.wic != y.wic) return x.wic > y.wic;
      return a < b;
    });
    for (std::uint32_t w : order) {
      BlockMeta& src = c.at(set, w);
      int dst = c.free_way(set, g.ways_sram, g.ways_total);
      if (dst < 0) {
        int victim = c.min_way(set, g.ways_sram, g.ways_total,
                               [](const BlockMeta& b) { return std::uint32_t(b.conf); });
        assert(victim >= 0);
        BlockMeta& v = c.at(set, std::uint32_t(victim));
        if (src.conf >= v.conf) {
          if (v.dirty || pol.write_clean) {
            mem.write(block_address(g, v.tag, set), v.content);
            rep.n_w_main += 1;
          }
          dst = victim;
        }
      }
      if (dst >= 0) {
        BlockMeta moved = src;
        moved.ric = 0;
        moved.wic = 0;
        c.at(set, std::uint32_t(dst)) = moved;
        rep.n_w_l1 += 1;
      } else {
        if (src.dirty || pol.write_clean) {
          mem.write(block_address(g, src.tag, set), src.content);
          rep.n_w_main += 1;
        }
      }
      src = BlockMeta{};
    }
    c.check_single_residency(set);
  }
  rep.finalize(tech);
  return rep;
}

// Baseline failure handling: every dirty SRAM block goes to main memory and
// the SRAM region is lost. STT-RAM ways (if any) survive untouched. Covers
// the pure caches too: an all-STT-RAM cache simply has nothing to do.
inline BackupReport backup_everything(CacheArray& c, MemoryImage& mem,
                                      const TechnologyParams& tech) {
  BackupReport rep;
  const CacheGeometry& g = c.geo;
  for (std::uint32_t set = 0; set < g.sets; ++set)
    for (std::uint32_t w = 0; w < g.ways_sram; ++w) {
      BlockMeta& b = c.at(set, w);
      if (b.valid && b.dirty) {
        mem.write(block_address(g, b.tag, set), b.content);
        rep.n_w_main += 1;
      }
      b = BlockMeta{};
    }
  rep.finalize(tech);
  return rep;
}

// Power restoration. STT-RAM contents are already in place and nothing is
// read back, so restore adds no events. The prediction table is SRAM-backed
// and comes up as all ones unless configured as persistent.
inline void power_on(HybridCache& c, bool persist_prediction = false) {
  if (!persist_prediction) c.prediction.reset_all_ones();
}

}  // namespace hcsim
