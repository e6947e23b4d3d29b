#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>

#include "hcsim/cache_array.hpp"
#include "hcsim/events.hpp"
#include "hcsim/memory_image.hpp"
#include "hcsim/rng.hpp"

namespace hcsim {

// Plain set-associative cache over a single technology region. Intensity
// counters are still maintained (they drive victim choice) but nothing
// migrates and no prediction table exists. Victim on a miss is the valid
// block with the lowest ric+wic, lowest way index on ties.
class PureCache : public CacheArray {
 public:
  PureCache(const CacheGeometry& g, Threshold t) : CacheArray(g, t) {
    assert(g.ways_sram == 0 || g.ways_sram == g.ways_total);
  }

  AccessOutcome access(AccessKind kind, std::uint64_t addr, std::uint64_t write_id,
                       MemoryImage& mem) {
    AddressParts p = decompose(geo, addr);
    AccessOutcome out;
    int way = find(p.set, p.tag);
    if (way < 0) {
      out.cls = AccessClass::Miss;
      way = free_way(p.set, 0, geo.ways_total);
      if (way < 0) {
        way = min_way(p.set, 0, geo.ways_total,
                      [](const BlockMeta& b) { return std::uint32_t(b.ric) + b.wic; });
        evict(p.set, std::uint32_t(way), out, mem);
      }
      BlockMeta& b = at(p.set, std::uint32_t(way));
      b.valid = true;
      b.tag = p.tag;
      b.content = mem.read(block_base(geo, addr));
      Region r = geo.region_of_way(std::uint32_t(way));
      out.events.push(Event::pcm_fetch());
      out.events.push(Event::region_write(r));
      if (kind == AccessKind::Write) out.events.push(Event::region_write(r));
      apply_counters(b, kind, write_id);
    } else {
      Region r = geo.region_of_way(std::uint32_t(way));
      out.cls = r == Region::Sram ? AccessClass::HitSram : AccessClass::HitSttRam;
      out.events.push(kind == AccessKind::Read ? Event::region_read(r) : Event::region_write(r));
      apply_counters(at(p.set, std::uint32_t(way)), kind, write_id);
    }
    check_single_residency(p.set);
    return out;
  }

  void evict(std::uint32_t set, std::uint32_t way, AccessOutcome& out, MemoryImage& mem) {
    BlockMeta& b = at(set, way);
    assert(b.valid);
    if (b.dirty) {
      out.events.push(Event::pcm_writeback());
      mem.write(block_address(geo, b.tag, set), b.content);
    }
    b = BlockMeta{};
  }

 private:
  void apply_counters(BlockMeta& b, AccessKind kind, std::uint64_t write_id) {
    if (kind == AccessKind::Read) {
      b.ric = std::uint8_t(std::min<std::uint32_t>(b.ric + 1u, threshold.value));
    } else {
      b.dirty = true;
      b.content = write_id;
      b.wic = std::uint8_t(std::min<std::uint32_t>(b.wic + 1u, threshold.value));
    }
    b.check(threshold.value);
  }
};

// Hybrid cache with random miss placement: one seeded draw per miss, even
// parity lands the block in SRAM. Hits run the same counter/threshold
// migration as the predictive policy but there is no prediction table and
// no confidence field; a counter that fires with the block already in its
// preferred region just resets.
class RandomHybridCache : public CacheArray {
 public:
  RandomHybridCache(const CacheGeometry& g, Threshold t, std::uint64_t seed)
      : CacheArray(g, t), rng_(seed) {
    assert(g.ways_sram >= 1 && g.ways_sttram >= 1);
  }

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
      Region target = rng_.next() % 2 == 0 ? Region::Sram : Region::SttRam;
      std::uint32_t lo, hi;
      region_bounds(target, lo, hi);
      int dst = free_way(p.set, lo, hi);
      if (dst < 0) {
        dst = pick_victim(p.set, target);
        evict(p.set, std::uint32_t(dst), out, mem);
      }
      BlockMeta& b = at(p.set, std::uint32_t(dst));
      b.valid = true;
      b.tag = p.tag;
      b.content = mem.read(block_base(geo, addr));
      out.events.push(Event::pcm_fetch());
      out.events.push(Event::region_write(target));
      if (kind == AccessKind::Read) {
        bump_read(p.set, std::uint32_t(dst), out, mem);
      } else {
        out.events.push(Event::region_write(target));
        bump_write(p.set, std::uint32_t(dst), write_id, out, mem);
      }
    }
    check_single_residency(p.set);
    return out;
  }

  void evict(std::uint32_t set, std::uint32_t way, AccessOutcome& out, MemoryImage& mem) {
    BlockMeta& b = at(set, way);
    assert(b.valid);
    if (b.dirty) {
      out.events.push(Event::pcm_writeback());
      mem.write(block_address(geo, b.tag, set), b.content);
    }
    b = BlockMeta{};
  }

 private:
  SplitMix64 rng_;

  int pick_victim(std::uint32_t set, Region region) {
    std::uint32_t lo, hi;
    region_bounds(region, lo, hi);
    if (region == Region::SttRam)
      return min_way(set, lo, hi, [](const BlockMeta& b) { return std::uint32_t(b.ric); });
    return min_way(set, lo, hi, [](const BlockMeta& b) { return std::uint32_t(b.wic); });
  }

  void bump_read(std::uint32_t set, std::uint32_t way, AccessOutcome& out, MemoryImage& mem) {
    BlockMeta& b = at(set, way);
    b.ric++;
    b.check(threshold.value);
    if (b.ric == threshold.value) {
      if (geo.region_of_way(way) == Region::Sram)
        migrate(set, way, Region::SttRam, out, mem);
      else
        b.ric = 0;
    }
  }

  void bump_write(std::uint32_t set, std::uint32_t way, std::uint64_t write_id,
                  AccessOutcome& out, MemoryImage& mem) {
    BlockMeta& b = at(set, way);
    b.dirty = true;
    b.content = write_id;
    b.wic++;
    b.check(threshold.value);
    if (b.wic == threshold.value) {
      if (geo.region_of_way(way) == Region::SttRam)
        migrate(set, way, Region::Sram, out, mem);
      else
        b.wic = 0;
    }
  }

  void migrate(std::uint32_t set, std::uint32_t src_way, Region dst_region, AccessOutcome& out,
               MemoryImage& mem) {
    std::uint32_t lo, hi;
    region_bounds(dst_region, lo, hi);
    int dst = free_way(set, lo, hi);
    if (dst < 0) {
      dst = pick_victim(set, dst_region);
      evict(set, std::uint32_t(dst), out, mem);
    }
    out.migrated = true;
    out.events.push(Event::migration(geo.region_of_way(src_way), dst_region));
    BlockMeta& s = at(set, src_way);
    BlockMeta& d = at(set, std::uint32_t(dst));
    d = s;
    d.ric = 0;
    d.wic = 0;
    s = BlockMeta{};
  }
};

}  // namespace hcsim
