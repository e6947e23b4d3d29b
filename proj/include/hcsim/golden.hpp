#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hcsim/backup.hpp"
#include "hcsim/hybrid_cache.hpp"
#include "hcsim/memory_image.hpp"
#include "hcsim/technology.hpp"

namespace hcsim {

// Engine-independent snapshot of one block, as seen by the golden runner.
struct GoldenBlockView {
  bool found = false;
  Region region = Region::Sram;
  std::uint32_t way = 0;
  std::uint8_t ric = 0;
  std::uint8_t wic = 0;
  std::uint8_t conf = 0;
  bool dirty = false;
};

struct GoldenBackupNums {
  std::uint64_t n_w_l1 = 0;
  std::uint64_t n_w_main = 0;
};

// Binds the production hybrid cache to the golden scenario. The scenario is
// fixed: one set of 2 SRAM + 2 STT-RAM ways, 64-byte blocks, threshold 7,
// an 8-entry prediction table, and block addresses tag * 64.
class GoldenHarness {
 public:
  GoldenHarness() : cache(make_geometry(256, 64, 2, 2), Threshold{7}, 8) {}

  HybridCache cache;
  MemoryImage mem;
  TechnologyParams tech = TechnologyParams::defaults();
  BackupReport last_backup;

  void preload(std::uint32_t way, std::uint64_t tag) { cache.preload(0, way, tag); }

  void set_prediction(std::size_t idx, bool bit) {
    cache.prediction.set(idx, bit ? 1 : 0);
  }

  void access(AccessKind kind, std::uint64_t tag) {
    std::uint64_t id = kind == AccessKind::Write ? next_write_id_++ : 0;
    cache.access(kind, tag * 64, id, mem);
  }

  GoldenBlockView find_block(std::uint64_t tag) const {
    GoldenBlockView v;
    for (std::uint32_t w = 0; w < cache.geo.ways_total; ++w) {
      const BlockMeta& b = cache.at(0, w);
      if (!b.valid || b.tag != tag) continue;
      v.found = true;
      v.region = cache.geo.region_of_way(w);
      v.way = w;
      v.ric = b.ric;
      v.wic = b.wic;
      v.conf = b.conf;
      v.dirty = b.dirty;
      return v;
    }
    return v;
  }

  bool prediction_bit(std::size_t idx) const { return cache.prediction.get(idx) == 1; }

  std::uint32_t valid_in_region(Region r) const {
    std::uint32_t lo, hi;
    cache.region_bounds(r, lo, hi);
    std::uint32_t n = 0;
    for (std::uint32_t w = lo; w < hi; ++w)
      if (cache.at(0, w).valid) ++n;
    return n;
  }

  GoldenBackupNums power_fail() {
    last_backup = backup(cache, mem, tech, BackupPolicy{});
    return {last_backup.n_w_l1, last_backup.n_w_main};
  }

  void restart() { power_on(cache); }

 private:
  std::uint64_t next_write_id_ = 1;
};

namespace detail {

inline std::string golden_view_str(const GoldenBlockView& v) {
  if (!v.found) return "absent";
  std::string s = region_name(v.region);
  s += "/way" + std::to_string(v.way);
  s += " ric=" + std::to_string(v.ric);
  s += " wic=" + std::to_string(v.wic);
  s += " conf=" + std::to_string(v.conf);
  s += v.dirty ? " dirty" : " clean";
  return s;
}

}  // namespace detail

// Replays the worked end-to-end scenario against any engine exposing the
// GoldenHarness interface and returns every checkpoint divergence (empty
// means the engine matches).
//
// The scenario exercises counter saturation, both trigger directions,
// prediction-guided placement, victim selection, power-failure backup with
// displacement, and the post-restart table reset:
//
//   set 0, blocks a=tag0 c=tag2 in SRAM ways 0..1, b=tag1 d=tag4 in
//   STT-RAM ways 2..3, all clean; prediction all 1 except entry 3.
template <class H>
std::vector<std::string> run_golden_scenario(H& h) {
  constexpr std::uint64_t a = 0, b = 1, c = 2, e = 3, d = 4;
  std::vector<std::string> out;

  auto rd = [&h](std::uint64_t tag) { h.access(AccessKind::Read, tag); };
  auto wr = [&h](std::uint64_t tag) { h.access(AccessKind::Write, tag); };

  auto expect = [&](const char* label, const char* name, std::uint64_t tag, Region region,
                    std::uint32_t way, unsigned ric, unsigned wic, unsigned conf, bool dirty) {
    GoldenBlockView v = h.find_block(tag);
    GoldenBlockView want;
    want.found = true;
    want.region = region;
    want.way = way;
    want.ric = std::uint8_t(ric);
    want.wic = std::uint8_t(wic);
    want.conf = std::uint8_t(conf);
    want.dirty = dirty;
    bool ok = v.found && v.region == want.region && v.way == want.way && v.ric == want.ric &&
              v.wic == want.wic && v.conf == want.conf && v.dirty == want.dirty;
    if (!ok)
      out.push_back(std::string(label) + ": block " + name + " expected " +
                    detail::golden_view_str(want) + ", got " + detail::golden_view_str(v));
  };
  auto expect_gone = [&](const char* label, const char* name, std::uint64_t tag) {
    GoldenBlockView v = h.find_block(tag);
    if (v.found)
      out.push_back(std::string(label) + ": block " + name + " expected absent, got " +
                    detail::golden_view_str(v));
  };
  auto expect_pr = [&](const char* label, std::size_t idx, bool bit) {
    if (h.prediction_bit(idx) != bit)
      out.push_back(std::string(label) + ": prediction[" + std::to_string(idx) + "] expected " +
                    (bit ? "1" : "0") + ", got " + (bit ? "0" : "1"));
  };

  h.preload(0, a);
  h.preload(1, c);
  h.preload(2, b);
  h.preload(3, d);
  h.set_prediction(3, false);

  rd(a);
  rd(a);
  expect("A", "a", a, Region::Sram, 0, 2, 0, 0, false);

  wr(b);
  wr(b);
  expect("B", "b", b, Region::SttRam, 2, 0, 2, 0, true);

  rd(a);
  wr(a);
  expect("C", "a", a, Region::Sram, 0, 3, 1, 0, true);

  // Five more writes lift b's counter to the threshold; the trigger moves
  // it into SRAM over the cold clean block c.
  for (int i = 0; i < 5; ++i) wr(b);
  expect("D", "b", b, Region::Sram, 1, 0, 0, 0, true);
  expect_gone("D", "c", c);
  expect_pr("D", 2, true);

  // Four reads push a to the threshold; it migrates into b's old way.
  for (int i = 0; i < 4; ++i) rd(a);
  wr(b);
  wr(b);
  expect("E", "a", a, Region::SttRam, 2, 0, 0, 0, true);
  expect("E", "b", b, Region::Sram, 1, 0, 2, 0, true);

  for (int i = 0; i < 4; ++i) rd(a);
  expect("F", "a", a, Region::SttRam, 2, 4, 0, 0, true);

  // Write miss on c: prediction bit 1 sends it to the free SRAM way and
  // the triggering write lands as a normal hit.
  wr(c);
  expect("insert-c", "c", c, Region::Sram, 0, 0, 1, 0, true);

  // Six more writes reach the threshold in the preferred region: the
  // block stays put, gains confidence, and restarts its counter.
  for (int i = 0; i < 6; ++i) wr(c);
  expect("G", "c", c, Region::Sram, 0, 0, 0, 1, true);

  for (int i = 0; i < 3; ++i) wr(c);
  expect("H", "c", c, Region::Sram, 0, 0, 3, 1, true);

  // Read miss on e: prediction bit 0 sends it to STT-RAM, evicting the
  // coldest block d and recording that d last lived in STT-RAM.
  rd(e);
  expect("I", "e", e, Region::SttRam, 3, 1, 0, 0, false);
  expect_gone("I", "d", d);
  expect_pr("I", 4, false);

  // Power failure. c (conf 1) displaces the dirty block a, which is the
  // one main-memory write; b displaces the clean block e at equal conf.
  GoldenBackupNums nums = h.power_fail();
  if (nums.n_w_l1 != 2 || nums.n_w_main != 1)
    out.push_back("J: backup expected n_w_l1=2 n_w_main=1, got n_w_l1=" +
                  std::to_string(nums.n_w_l1) + " n_w_main=" + std::to_string(nums.n_w_main));
  expect("J", "c", c, Region::SttRam, 2, 0, 0, 1, true);
  expect("J", "b", b, Region::SttRam, 3, 0, 0, 0, true);
  expect_gone("J", "a", a);
  expect_gone("J", "e", e);
  if (std::uint32_t nv = h.valid_in_region(Region::Sram); nv != 0)
    out.push_back("J: SRAM expected empty, got " + std::to_string(nv) + " valid blocks");

  h.restart();
  expect_pr("restart", 3, true);
  expect_pr("restart", 4, true);

  rd(c);
  rd(b);
  expect("K", "c", c, Region::SttRam, 2, 1, 0, 1, true);
  expect("K", "b", b, Region::SttRam, 3, 1, 0, 0, true);

  return out;
}

}  // namespace hcsim
