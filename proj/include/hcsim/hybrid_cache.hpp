#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>

#include "hcsim/cache_array.hpp"
#include "hcsim/events.hpp"
#include "hcsim/memory_image.hpp"
#include "hcsim/prediction.hpp"

namespace hcsim {

// Hybrid SRAM/STT-RAM cache with counter-driven migration and one-bit
// region prediction for miss placement.
//
// Counter semantics are increment-then-compare: the access that lifts a
// counter to the threshold is the one that fires the trigger. Blocks at
// conf 11 are pinned; their counters saturate silently.
class HybridCache : public CacheArray {
 public:
  HybridCache(const CacheGeometry& g, Threshold t, std::size_t prediction_entries)
      : CacheArray(g, t), prediction(prediction_entries) {
    assert(g.ways_sram >= 1 && g.ways_sttram >= 1);
    assert(prediction_entries >= 1);
  }

  PredictionTable prediction;

  AccessOutcome access(AccessKind kind, std::uint64_t addr, std::uint64_t write_id,
                       MemoryImage& mem) {
    AddressParts p = decompose(geo, addr);
    AccessOutcome out;
    int way = find(p.set, p.tag);
    if (way >= 0) {
      Region r = geo.region_of_way(std::uint32_t(way));
      out.cls = r == Region::Sram ? AccessClass::HitSram : AccessClass::HitSttRam;
      if (kind == AccessKind::Read) {
        out.events.push(Event::region_read(r));
        bump_read(p.set, std::uint32_t(way), out, mem);
      } else {
        out.events.push(Event::region_write(r));
        bump_write(p.set, std::uint32_t(way), write_id, out, mem);
      }
    } else {
      out.cls = AccessClass::Miss;
      handle_miss(kind, p, addr, write_id, out, mem);
    }
    check_single_residency(p.set);
    return out;
  }

  std::size_t pr_index(std::uint64_t addr) const {
    return prediction_index(addr, geo.block_size, prediction.entries());
  }

  // Invalidates the way; dirty contents go back to main memory first and
  // the prediction bit for the block records which region it left.
  void evict(std::uint32_t set, std::uint32_t way, AccessOutcome& out, MemoryImage& mem) {
    BlockMeta& b = at(set, way);
    assert(b.valid);
    std::uint64_t addr = block_address(geo, b.tag, set);
    if (b.dirty) {
      out.events.push(Event::pcm_writeback());
      mem.write(addr, b.content);
    }
    prediction.set(pr_index(addr), geo.region_of_way(way) == Region::Sram ? 1 : 0);
    b = BlockMeta{};
  }

 private:
  void bump_read(std::uint32_t set, std::uint32_t way, AccessOutcome& out, MemoryImage& mem) {
    BlockMeta& b = at(set, way);
    if (b.conf == 3) {
      b.ric = std::uint8_t(std::min<std::uint32_t>(b.ric + 1u, threshold.value));
      b.check(threshold.value);
      return;
    }
    b.ric++;
    b.check(threshold.value);
    if (b.ric == threshold.value) {
      if (geo.region_of_way(way) == Region::Sram) {
        migrate(set, way, Region::SttRam, out, mem);
      } else {
        b.conf = conf_advance(b.conf);
        b.ric = 0;
      }
    }
  }

  void bump_write(std::uint32_t set, std::uint32_t way, std::uint64_t write_id,
                  AccessOutcome& out, MemoryImage& mem) {
    BlockMeta& b = at(set, way);
    b.dirty = true;
    b.content = write_id;
    if (b.conf == 3) {
      b.wic = std::uint8_t(std::min<std::uint32_t>(b.wic + 1u, threshold.value));
      b.check(threshold.value);
      return;
    }
    b.wic++;
    b.check(threshold.value);
    if (b.wic == threshold.value) {
      if (geo.region_of_way(way) == Region::SttRam) {
        migrate(set, way, Region::Sram, out, mem);
      } else {
        b.conf = conf_advance(b.conf);
        b.wic = 0;
      }
    }
  }

  // Victim metric matches what the destination optimizes for: blocks moving
  // into STT-RAM displace the least-read block, blocks moving into SRAM
  // displace the least-written block.
  int pick_victim(std::uint32_t set, Region region) {
    std::uint32_t lo, hi;
    region_bounds(region, lo, hi);
    if (region == Region::SttRam)
      return min_way(set, lo, hi, [](const BlockMeta& b) { return std::uint32_t(b.ric); });
    return min_way(set, lo, hi, [](const BlockMeta& b) { return std::uint32_t(b.wic); });
  }

  void migrate(std::uint32_t set, std::uint32_t src_way, Region dst_region, AccessOutcome& out,
               MemoryImage& mem) {
    std::uint32_t lo, hi;
    region_bounds(dst_region, lo, hi);
    int dst = free_way(set, lo, hi);
    if (dst < 0) {
      dst = pick_victim(set, dst_region);
      assert(dst >= 0);
      evict(set, std::uint32_t(dst), out, mem);
    }
    out.migrated = true;
    out.events.push(Event::migration(geo.region_of_way(src_way), dst_region));
    BlockMeta& s = at(set, src_way);
    BlockMeta& d = at(set, std::uint32_t(dst));
    d = s;
    d.ric = 0;
    d.wic = 0;
    d.conf = 0;
    s = BlockMeta{};
  }

  void handle_miss(AccessKind kind, const AddressParts& p, std::uint64_t addr,
                   std::uint64_t write_id, AccessOutcome& out, MemoryImage& mem) {
    std::uint8_t pr = prediction.get(pr_index(addr));
    Region target = pr ? Region::Sram : Region::SttRam;
    std::uint32_t lo, hi;
    region_bounds(target, lo, hi);
    int way = free_way(p.set, lo, hi);
    if (way < 0) {
      way = pick_victim(p.set, target);
      assert(way >= 0);
      evict(p.set, std::uint32_t(way), out, mem);
    }
    BlockMeta& b = at(p.set, std::uint32_t(way));
    b.valid = true;
    b.tag = p.tag;
    b.content = mem.read(block_base(geo, addr));
    out.events.push(Event::pcm_fetch());
    out.events.push(Event::region_write(target));
    // The triggering access lands on the fresh block as a normal hit:
    // pure fill for a read, a store on top of the fill for a write.
    if (kind == AccessKind::Read) {
      bump_read(p.set, std::uint32_t(way), out, mem);
    } else {
      out.events.push(Event::region_write(target));
      bump_write(p.set, std::uint32_t(way), write_id, out, mem);
    }
  }
};

}  // namespace hcsim
