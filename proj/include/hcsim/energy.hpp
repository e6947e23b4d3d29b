#pragma once

#include <cassert>
#include <cstdint>
#include <optional>

#include "hcsim/backup.hpp"
#include "hcsim/events.hpp"
#include "hcsim/fixed.hpp"
#include "hcsim/geometry.hpp"
#include "hcsim/technology.hpp"

namespace hcsim {

// Cycle and energy bookkeeping for one run. Energies are integer
// picojoule-millionths so the overall = exec + backup + restore identity
// is exact, never a float residue.
struct EnergyLedger {
  std::uint64_t cycles = 0;

  u128 e_exec = 0;     // demand accesses, migrations, writebacks, fills
  u128 e_backup = 0;   // power-failure backups and checkpoint snapshots
  u128 e_restore = 0;  // checkpoint snapshot reads

  std::uint64_t sram_reads = 0;
  std::uint64_t sram_writes = 0;
  std::uint64_t sttram_reads = 0;
  std::uint64_t sttram_writes = 0;
  std::uint64_t pcm_reads = 0;
  std::uint64_t pcm_writes = 0;
  std::uint64_t gap_instructions = 0;

  std::uint64_t accesses = 0;
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t hits_sram = 0;
  std::uint64_t hits_sttram = 0;
  std::uint64_t misses = 0;
  std::uint64_t migrations = 0;
  std::uint64_t writebacks = 0;

  std::uint64_t backups = 0;  // snapshot count under the checkpoint scheme
  std::uint64_t n_w_l1 = 0;
  std::uint64_t n_w_main = 0;
  std::uint64_t backup_cycles = 0;
  u128 backup_time_raw = 0;

  std::uint64_t restores = 0;
  std::uint64_t n_r_l1 = 0;
  std::uint64_t n_r_main = 0;

  std::uint64_t reexecuted_records = 0;
  std::uint64_t flush_writebacks = 0;  // end-of-run flush, outside the metrics

  void tally_event(const Event& e, const TechnologyParams& t) {
    switch (e.kind) {
      case EventKind::RegionRead:
        add_region_read(e.region, t);
        break;
      case EventKind::RegionWrite:
        add_region_write(e.region, t);
        break;
      case EventKind::PcmFetch:
        pcm_reads += 1;
        cycles += t.pcm.read_cycles;
        e_exec += t.pcm.read_energy_pj.raw;
        break;
      case EventKind::PcmWriteback:
        pcm_writes += 1;
        writebacks += 1;
        cycles += t.pcm.write_cycles;
        e_exec += t.pcm.write_energy_pj.raw;
        break;
      case EventKind::Migration:
        migrations += 1;
        add_region_read(e.region, t);
        add_region_write(e.to, t);
        break;
    }
  }

  void tally_outcome(const AccessOutcome& out, AccessKind kind, const TechnologyParams& t) {
    accesses += 1;
    (kind == AccessKind::Read ? reads : writes) += 1;
    switch (out.cls) {
      case AccessClass::HitSram:
        hits_sram += 1;
        break;
      case AccessClass::HitSttRam:
        hits_sttram += 1;
        break;
      case AccessClass::Miss:
        misses += 1;
        break;
    }
    for (const Event& e : out.events) tally_event(e, t);
  }

  // Non-memory instructions retire in one cycle and cost no dynamic energy.
  void add_gap(std::uint64_t instructions) {
    cycles += instructions;
    gap_instructions += instructions;
  }

  void add_backup(const BackupReport& rep, const TechnologyParams& t) {
    backups += 1;
    n_w_l1 += rep.n_w_l1;
    n_w_main += rep.n_w_main;
    sttram_writes += rep.n_w_l1;
    pcm_writes += rep.n_w_main;
    cycles += rep.backup_cycles;
    backup_cycles += rep.backup_cycles;
    backup_time_raw += rep.backup_time_ns.raw;
    e_backup += u128(rep.n_w_l1) * t.sttram.write_energy_pj.raw +
                u128(rep.n_w_main) * t.pcm.write_energy_pj.raw;
  }

  void add_restore(std::uint64_t blocks, const TechnologyParams& t) {
    restores += 1;
    n_r_main += blocks;
    pcm_reads += blocks;
    cycles += u64(blocks) * t.pcm.read_cycles;
    e_restore += u128(blocks) * t.pcm.read_energy_pj.raw;
  }

  u128 e_overall() const { return e_exec + e_backup + e_restore; }

  u128 dynamic_energy_from_counts(const TechnologyParams& t) const {
    return u128(sram_reads) * t.sram.read_energy_pj.raw +
           u128(sram_writes) * t.sram.write_energy_pj.raw +
           u128(sttram_reads) * t.sttram.read_energy_pj.raw +
           u128(sttram_writes) * t.sttram.write_energy_pj.raw +
           u128(pcm_reads) * t.pcm.read_energy_pj.raw +
           u128(pcm_writes) * t.pcm.write_energy_pj.raw;
  }

  std::uint64_t cycles_from_counts(const TechnologyParams& t) const {
    return sram_reads * t.sram.read_cycles + sram_writes * t.sram.write_cycles +
           sttram_reads * t.sttram.read_cycles + sttram_writes * t.sttram.write_cycles +
           pcm_reads * t.pcm.read_cycles + pcm_writes * t.pcm.write_cycles + gap_instructions;
  }

  Fixed6 exec_time_ns(const TechnologyParams& t) const {
    return Fixed6::from_raw(u128(cycles) * t.clock_period_ns.raw);
  }

  // Leakage scales linearly with region capacity against the 16KB reference
  // and runs for the whole simulated duration. Reported next to the overall
  // figure, never inside it.
  Fixed6 static_energy_pj(const CacheGeometry& g, const TechnologyParams& t) const {
    u128 duration_raw = u128(cycles) * t.clock_period_ns.raw;
    u128 raw = (u128(t.sram.leakage_uw_per_16kb) * duration_raw * g.sram_bytes() +
                u128(t.sttram.leakage_uw_per_16kb) * duration_raw * g.sttram_bytes()) /
               (u128(16384) * 1000);
    return Fixed6::from_raw(raw);
  }

 private:
  void add_region_read(Region r, const TechnologyParams& t) {
    const TechSpec& s = r == Region::Sram ? t.sram : t.sttram;
    (r == Region::Sram ? sram_reads : sttram_reads) += 1;
    cycles += s.read_cycles;
    e_exec += s.read_energy_pj.raw;
  }
  void add_region_write(Region r, const TechnologyParams& t) {
    const TechSpec& s = r == Region::Sram ? t.sram : t.sttram;
    (r == Region::Sram ? sram_writes : sttram_writes) += 1;
    cycles += s.write_cycles;
    e_exec += s.write_energy_pj.raw;
  }
};

// Final per-run metrics. Ratios are absent when their denominator never
// materialized (no backup traffic, no companion run).
struct RunReport {
  std::uint64_t trace_records = 0;
  std::uint64_t trace_instructions = 0;
  EnergyLedger ledger;

  Fixed6 exec_time_ns;
  Fixed6 avg_backup_time_ns;  // integer-division mean over backups
  Fixed6 static_pj;

  u128 e_normal = 0;  // companion no-failure overall energy, when computed
  std::optional<double> eta;
  std::optional<double> theta;

  bool image_verified = false;

  void finalize(const CacheGeometry& g, const TechnologyParams& t) {
    assert(ledger.cycles == ledger.cycles_from_counts(t));
    assert(ledger.e_overall() == ledger.dynamic_energy_from_counts(t));
    exec_time_ns = ledger.exec_time_ns(t);
    avg_backup_time_ns =
        ledger.backups ? Fixed6::from_raw(ledger.backup_time_raw / ledger.backups) : Fixed6{};
    static_pj = ledger.static_energy_pj(g, t);
    if (ledger.n_w_l1 + ledger.n_w_main > 0)
      eta = double(ledger.n_w_l1) / double(ledger.n_w_l1 + ledger.n_w_main);
  }
};

}  // namespace hcsim
