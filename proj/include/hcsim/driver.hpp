#pragma once

#include <atomic>
#include <cassert>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hcsim/backup.hpp"
#include "hcsim/baseline_cache.hpp"
#include "hcsim/energy.hpp"
#include "hcsim/error.hpp"
#include "hcsim/failure.hpp"
#include "hcsim/hybrid_cache.hpp"
#include "hcsim/trace.hpp"

namespace hcsim {

// A run that cannot make forward progress (checkpoint livelock).
struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Architecture : std::uint8_t {
  Proposed,
  PureSram,
  PureSttRam,
  RandomHybrid,
  CheckpointSramPcm,
};

inline const char* architecture_name(Architecture a) {
  switch (a) {
    case Architecture::Proposed: return "proposed";
    case Architecture::PureSram: return "pure-sram";
    case Architecture::PureSttRam: return "pure-sttram";
    case Architecture::RandomHybrid: return "random-hybrid";
    case Architecture::CheckpointSramPcm: return "checkpoint";
  }
  return "?";
}

inline bool architecture_from_name(const std::string& s, Architecture& out) {
  if (s == "proposed") out = Architecture::Proposed;
  else if (s == "pure-sram") out = Architecture::PureSram;
  else if (s == "pure-sttram") out = Architecture::PureSttRam;
  else if (s == "random-hybrid") out = Architecture::RandomHybrid;
  else if (s == "checkpoint") out = Architecture::CheckpointSramPcm;
  else return false;
  return true;
}

struct CheckpointConfig {
  std::uint64_t period = 4000000;  // instructions between safe points
  bool snapshot_all_valid = false;
  // Consecutive failures without reaching a new safe point before the run
  // is declared non-terminating.
  std::uint64_t retry_bound = 1000;
};

struct SimConfig {
  std::uint64_t cache_size_bytes = 16384;
  std::uint32_t block_size = 64;
  std::uint32_t ways_sram = 2;
  std::uint32_t ways_sttram = 2;
  std::uint64_t prediction_entries = 4096;
  Threshold threshold{7};
  TechnologyParams tech = TechnologyParams::defaults();
  Architecture arch = Architecture::Proposed;
  FailureSchedule failure;
  std::uint64_t seed = 1;
  CheckpointConfig checkpoint;
  bool persist_prediction = false;
  BackupPolicy backup_policy;

  CacheGeometry geometry() const {
    return make_geometry(cache_size_bytes, block_size, ways_sram, ways_sttram);
  }
};

// Resolves architecture/geometry interactions in place and reports what
// changed. Pure (and checkpoint) caches claim every way for their one
// technology; a hybrid architecture handed a degenerate way split becomes
// the corresponding pure cache, which is what such a split means.
inline std::string normalize_config(SimConfig& cfg) {
  std::uint32_t total = cfg.ways_sram + cfg.ways_sttram;
  if (total == 0) throw GeometryError("cache needs at least one way");
  std::string note;
  if (cfg.arch == Architecture::Proposed || cfg.arch == Architecture::RandomHybrid) {
    if (cfg.ways_sram == 0) {
      cfg.arch = Architecture::PureSttRam;
      note = "degenerate split 0:" + std::to_string(total) + " runs as pure-sttram";
    } else if (cfg.ways_sttram == 0) {
      cfg.arch = Architecture::PureSram;
      note = "degenerate split " + std::to_string(total) + ":0 runs as pure-sram";
    }
  }
  if (cfg.arch == Architecture::PureSram || cfg.arch == Architecture::CheckpointSramPcm) {
    if (cfg.ways_sram != total) {
      cfg.ways_sram = total;
      cfg.ways_sttram = 0;
      if (note.empty()) note = "single-region architecture claims all ways as sram";
    }
  } else if (cfg.arch == Architecture::PureSttRam) {
    if (cfg.ways_sttram != total) {
      cfg.ways_sttram = total;
      cfg.ways_sram = 0;
      if (note.empty()) note = "single-region architecture claims all ways as sttram";
    }
  }
  if (cfg.arch == Architecture::Proposed && cfg.prediction_entries == 0)
    throw ConfigError("prediction table needs at least one entry");
  cfg.failure.seed = cfg.seed;  // one seed drives every random element of a run
  cfg.failure.validate();
  cfg.tech.validate();
  if (cfg.arch == Architecture::CheckpointSramPcm && cfg.checkpoint.period == 0)
    throw ConfigError("checkpoint period must be positive");
  (void)cfg.geometry();  // throws GeometryError when inconsistent
  return note;
}

struct RunOutput {
  RunReport report;
  MemoryImage image;
};

namespace detail {

inline std::uint64_t flush_dirty(const CacheArray& c, MemoryImage& mem) {
  std::uint64_t n = 0;
  for (std::uint32_t set = 0; set < c.geo.sets; ++set)
    for (std::uint32_t w = 0; w < c.geo.ways_total; ++w) {
      const BlockMeta& b = c.at(set, w);
      if (b.valid && b.dirty) {
        mem.write(block_address(c.geo, b.tag, set), b.content);
        ++n;
      }
    }
  return n;
}

// Shared replay loop for the architectures that never rewind. Failures fire
// between records, as soon as the instruction clock reaches their point;
// a gap record that jumps several points fires each of them in order.
template <class Cache, class OnFailure>
void replay(Cache& cache, const Trace& trace, const SimConfig& cfg, EnergyLedger& led,
            MemoryImage& mem, OnFailure&& on_failure) {
  FailureStream fs(cfg.failure);
  for (const TraceRecord& r : trace) {
    if (r.kind == RecordKind::Gap) {
      led.add_gap(r.value);
    } else {
      AccessKind k = r.kind == RecordKind::Read ? AccessKind::Read : AccessKind::Write;
      AccessOutcome out = cache.access(k, r.value, r.write_id, mem);
      led.tally_outcome(out, k, cfg.tech);
    }
    while (fs.pending(r.instruction_index)) {
      fs.fire();
      on_failure();
    }
  }
}

inline void run_proposed(const SimConfig& cfg, const CacheGeometry& g, const Trace& trace,
                         EnergyLedger& led, MemoryImage& mem) {
  HybridCache cache(g, cfg.threshold, std::size_t(cfg.prediction_entries));
  replay(cache, trace, cfg, led, mem, [&] {
    led.add_backup(backup(cache, mem, cfg.tech, cfg.backup_policy), cfg.tech);
    power_on(cache, cfg.persist_prediction);
  });
  led.flush_writebacks += flush_dirty(cache, mem);
}

inline void run_pure(const SimConfig& cfg, const CacheGeometry& g, const Trace& trace,
                     EnergyLedger& led, MemoryImage& mem) {
  PureCache cache(g, cfg.threshold);
  replay(cache, trace, cfg, led, mem,
         [&] { led.add_backup(backup_everything(cache, mem, cfg.tech), cfg.tech); });
  led.flush_writebacks += flush_dirty(cache, mem);
}

inline void run_random_hybrid(const SimConfig& cfg, const CacheGeometry& g, const Trace& trace,
                              EnergyLedger& led, MemoryImage& mem) {
  RandomHybridCache cache(g, cfg.threshold, cfg.seed);
  replay(cache, trace, cfg, led, mem,
         [&] { led.add_backup(backup_everything(cache, mem, cfg.tech), cfg.tech); });
  led.flush_writebacks += flush_dirty(cache, mem);
}

// Traditional checkpointing on an SRAM-only cache. Safe points sit at trace
// positions k*period; a snapshot writes every dirty block back to main
// memory (optionally every valid block) and keeps a copy of the cache
// image. The failure clock runs on executed instructions and never rewinds;
// on failure the cache is dropped, the snapshot is read back, and the trace
// cursor rewinds to the safe point, re-executing everything after it.
inline void run_checkpoint(const SimConfig& cfg, const CacheGeometry& g, const Trace& trace,
                           EnergyLedger& led, MemoryImage& mem) {
  PureCache cache(g, cfg.threshold);
  FailureStream fs(cfg.failure);

  std::vector<BlockMeta> snap_blocks;
  std::size_t snap_pos = 0;  // record index to resume from
  std::uint64_t snap_written = 0;
  bool have_snapshot = false;

  std::uint64_t next_safe = cfg.checkpoint.period;
  std::uint64_t executed = 0;
  std::uint64_t stalled_failures = 0;
  std::size_t high_water = 0;  // first record index not yet executed

  std::size_t i = 0;
  while (i < trace.size()) {
    const TraceRecord& r = trace[i];
    if (i < high_water)
      led.reexecuted_records += 1;
    else
      high_water = i + 1;
    if (r.kind == RecordKind::Gap) {
      led.add_gap(r.value);
    } else {
      AccessKind k = r.kind == RecordKind::Read ? AccessKind::Read : AccessKind::Write;
      AccessOutcome out = cache.access(k, r.value, r.write_id, mem);
      led.tally_outcome(out, k, cfg.tech);
    }
    executed += r.kind == RecordKind::Gap ? r.value : 1;
    ++i;

    while (r.instruction_index >= next_safe) {
      std::uint64_t written = 0;
      for (std::uint32_t set = 0; set < g.sets; ++set)
        for (std::uint32_t w = 0; w < g.ways_total; ++w) {
          BlockMeta& b = cache.at(set, w);
          if (!b.valid) continue;
          if (b.dirty || cfg.checkpoint.snapshot_all_valid) {
            mem.write(block_address(g, b.tag, set), b.content);
            b.dirty = false;
            ++written;
          }
        }
      BackupReport rep;
      rep.n_w_main = written;
      rep.finalize(cfg.tech);
      led.add_backup(rep, cfg.tech);
      snap_blocks = cache.raw_blocks();
      snap_pos = i;
      snap_written = written;
      have_snapshot = true;
      stalled_failures = 0;
      next_safe += cfg.checkpoint.period;
    }

    while (fs.pending(executed)) {
      fs.fire();
      if (++stalled_failures > cfg.checkpoint.retry_bound)
        throw SimulationError(
            "checkpoint run cannot progress: " + std::to_string(stalled_failures - 1) +
            " consecutive failures without reaching a safe point");
      if (have_snapshot) {
        cache.load_blocks(snap_blocks);
        led.add_restore(snap_written, cfg.tech);
        i = snap_pos;
      } else {
        cache.invalidate_all();
        led.add_restore(0, cfg.tech);
        i = 0;
      }
    }
  }
  led.flush_writebacks += flush_dirty(cache, mem);
}

}  // namespace detail

inline RunOutput run_simulation(SimConfig cfg, const Trace& trace, bool with_theta = false) {
  normalize_config(cfg);
  CacheGeometry g = cfg.geometry();
  RunOutput out;
  EnergyLedger& led = out.report.ledger;
  out.report.trace_records = trace.size();
  out.report.trace_instructions = trace_instructions(trace);

  switch (cfg.arch) {
    case Architecture::Proposed:
      detail::run_proposed(cfg, g, trace, led, out.image);
      break;
    case Architecture::PureSram:
    case Architecture::PureSttRam:
      detail::run_pure(cfg, g, trace, led, out.image);
      break;
    case Architecture::RandomHybrid:
      detail::run_random_hybrid(cfg, g, trace, led, out.image);
      break;
    case Architecture::CheckpointSramPcm:
      detail::run_checkpoint(cfg, g, trace, led, out.image);
      break;
  }

  out.report.finalize(g, cfg.tech);

  if (with_theta) {
    if (cfg.failure.mode == FailureMode::None) {
      out.report.e_normal = led.e_overall();
    } else {
      SimConfig normal = cfg;
      normal.failure = FailureSchedule{};
      RunOutput companion = run_simulation(normal, trace, false);
      out.report.e_normal = companion.report.ledger.e_overall();
    }
    if (led.e_overall() > 0)
      out.report.theta = double(out.report.e_normal) / double(led.e_overall());
  }

  out.report.image_verified = out.image == oracle_image(trace, g);
  return out;
}

// Exact equality against the sequential last-write-wins interpreter.
inline bool verify_image(const MemoryImage& got, const Trace& trace, const CacheGeometry& g) {
  return got == oracle_image(trace, g);
}

struct TraceInput {
  std::string name;
  const Trace* records = nullptr;
};

struct SweepAxes {
  std::vector<std::uint32_t> thresholds;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> splits;  // sram:sttram ways
  std::vector<FailureSchedule> failures;
  std::vector<Architecture> architectures;
};

struct SweepRow {
  std::string trace;
  SimConfig cfg;
  RunReport report;
  std::string note;     // normalization applied to this combination
  bool skipped = false;
  std::string skip_reason;
};

// Cartesian product over trace x architecture x split x threshold x failure.
// Rows come back in enumeration order no matter how many workers ran them.
inline std::vector<SweepRow> run_sweep(const SimConfig& base, const SweepAxes& axes,
                                       const std::vector<TraceInput>& traces, unsigned jobs = 1,
                                       bool with_theta = false) {
  std::vector<std::uint32_t> thresholds =
      axes.thresholds.empty() ? std::vector<std::uint32_t>{base.threshold.value} : axes.thresholds;
  auto splits = axes.splits.empty()
                    ? std::vector<std::pair<std::uint32_t, std::uint32_t>>{
                          {base.ways_sram, base.ways_sttram}}
                    : axes.splits;
  std::vector<FailureSchedule> failures =
      axes.failures.empty() ? std::vector<FailureSchedule>{base.failure} : axes.failures;
  std::vector<Architecture> archs =
      axes.architectures.empty() ? std::vector<Architecture>{base.arch} : axes.architectures;

  std::vector<SweepRow> rows;
  for (const TraceInput& t : traces)
    for (Architecture a : archs)
      for (auto [wsram, wstt] : splits)
        for (std::uint32_t thr : thresholds)
          for (const FailureSchedule& f : failures) {
            SweepRow row;
            row.trace = t.name;
            row.cfg = base;
            row.cfg.arch = a;
            row.cfg.ways_sram = wsram;
            row.cfg.ways_sttram = wstt;
            row.cfg.threshold = Threshold{thr};
            row.cfg.failure = f;
            rows.push_back(std::move(row));
          }

  std::vector<const Trace*> row_trace(rows.size());
  {
    std::size_t idx = 0;
    std::size_t per_trace = rows.size() / (traces.empty() ? 1 : traces.size());
    for (const TraceInput& t : traces)
      for (std::size_t k = 0; k < per_trace; ++k) row_trace[idx++] = t.records;
  }

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= rows.size()) return;
      SweepRow& row = rows[i];
      try {
        row.note = normalize_config(row.cfg);
        row.report = run_simulation(row.cfg, *row_trace[i], with_theta).report;
      } catch (const std::exception& e) {
        row.skipped = true;
        row.skip_reason = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return rows;
}

}  // namespace hcsim
