#include <catch2/catch_amalgamated.hpp>

#include "hcsim/report.hpp"

using namespace hcsim;

namespace {

Trace small_trace(std::uint64_t seed = 3, std::uint64_t n = 2000) {
  SyntheticTraceSpec spec;
  spec.record_count = n;
  spec.address_space_blocks = 512;
  spec.hot_set_blocks = 24;
  spec.gap_fraction = 0.05;
  spec.seed = seed;
  return generate_synthetic(spec);
}

std::string rendered(const SimConfig& cfg, const RunReport& rep) {
  return serialize_nested(collect_report(cfg, rep, "t"));
}

}  // namespace

TEST_CASE("degenerate hybrid splits run as the matching pure cache") {
  SimConfig cfg;
  cfg.ways_sram = 0;
  cfg.ways_sttram = 4;
  std::string note = normalize_config(cfg);
  CHECK(cfg.arch == Architecture::PureSttRam);
  CHECK(note.find("pure-sttram") != std::string::npos);

  SimConfig cfg2;
  cfg2.arch = Architecture::RandomHybrid;
  cfg2.ways_sram = 4;
  cfg2.ways_sttram = 0;
  note = normalize_config(cfg2);
  CHECK(cfg2.arch == Architecture::PureSram);
  CHECK(note.find("pure-sram") != std::string::npos);
}

TEST_CASE("single-region architectures claim every way") {
  SimConfig cfg;
  cfg.arch = Architecture::CheckpointSramPcm;
  std::string note = normalize_config(cfg);
  CHECK(cfg.ways_sram == 4);
  CHECK(cfg.ways_sttram == 0);
  CHECK(note.find("single-region") != std::string::npos);

  SimConfig cfg2;
  cfg2.arch = Architecture::PureSttRam;
  normalize_config(cfg2);
  CHECK(cfg2.ways_sram == 0);
  CHECK(cfg2.ways_sttram == 4);

  // Normalization is idempotent.
  SimConfig copy = cfg2;
  CHECK(normalize_config(copy).empty());
  CHECK(copy.ways_sttram == cfg2.ways_sttram);
}

TEST_CASE("a conforming hybrid config normalizes silently") {
  SimConfig cfg;
  CHECK(normalize_config(cfg).empty());
  CHECK(cfg.arch == Architecture::Proposed);
  CHECK(cfg.ways_sram == 2);
}

TEST_CASE("normalization rejects impossible configurations") {
  SimConfig cfg;
  cfg.ways_sram = 0;
  cfg.ways_sttram = 0;
  CHECK_THROWS_AS(normalize_config(cfg), GeometryError);

  SimConfig pred;
  pred.prediction_entries = 0;
  CHECK_THROWS_AS(normalize_config(pred), ConfigError);

  SimConfig geo;
  geo.ways_sram = 3;
  geo.ways_sttram = 3;
  CHECK_THROWS_AS(normalize_config(geo), GeometryError);

  SimConfig fail_cfg;
  fail_cfg.failure.mode = FailureMode::Periodic;
  fail_cfg.failure.period = 0;
  CHECK_THROWS_AS(normalize_config(fail_cfg), ConfigError);

  SimConfig tech_cfg;
  tech_cfg.tech.sram.read_cycles = 0;
  CHECK_THROWS_AS(normalize_config(tech_cfg), ConfigError);

  SimConfig ckpt;
  ckpt.arch = Architecture::CheckpointSramPcm;
  ckpt.checkpoint.period = 0;
  CHECK_THROWS_AS(normalize_config(ckpt), ConfigError);
}

TEST_CASE("the run seed drives the failure schedule") {
  SimConfig cfg;
  cfg.seed = 77;
  cfg.failure.mode = FailureMode::RandomUniform;
  cfg.failure.lo = 10;
  cfg.failure.hi = 20;
  normalize_config(cfg);
  CHECK(cfg.failure.seed == 77);
}

TEST_CASE("repeated runs produce identical reports, random schedules included") {
  Trace t = small_trace();
  SimConfig cfg;
  cfg.failure.mode = FailureMode::RandomUniform;
  cfg.failure.lo = 200;
  cfg.failure.hi = 400;
  cfg.seed = 9;

  RunOutput a = run_simulation(cfg, t, true);
  RunOutput b = run_simulation(cfg, t, true);
  SimConfig norm = cfg;
  normalize_config(norm);
  CHECK(rendered(norm, a.report) == rendered(norm, b.report));
  CHECK(a.image == b.image);
  CHECK(a.report.ledger.backups > 0);
  CHECK(a.report.image_verified);
}

TEST_CASE("theta is exactly one when nothing fails") {
  SimConfig cfg;
  RunOutput out = run_simulation(cfg, small_trace(), true);
  REQUIRE(out.report.theta.has_value());
  CHECK(*out.report.theta == 1.0);
  CHECK(out.report.e_normal == out.report.ledger.e_overall());
}

TEST_CASE("theta compares against a no-failure companion run") {
  Trace t = small_trace();
  SimConfig cfg;
  cfg.failure.mode = FailureMode::Periodic;
  cfg.failure.period = 300;

  RunOutput out = run_simulation(cfg, t, true);
  REQUIRE(out.report.theta.has_value());

  SimConfig normal = cfg;
  normal.failure = FailureSchedule{};
  RunOutput companion = run_simulation(normal, t);
  CHECK(out.report.e_normal == companion.report.ledger.e_overall());
  CHECK(*out.report.theta ==
        double(out.report.e_normal) / double(out.report.ledger.e_overall()));

  // Without the flag no companion run happens.
  RunOutput plain = run_simulation(cfg, t);
  CHECK_FALSE(plain.report.theta.has_value());
}

TEST_CASE("an empty trace runs to an all-zero verified report") {
  SimConfig cfg;
  RunOutput out = run_simulation(cfg, Trace{}, true);
  const EnergyLedger& l = out.report.ledger;
  CHECK(l.accesses == 0);
  CHECK(l.cycles == 0);
  CHECK(l.e_overall() == 0);
  CHECK(out.report.trace_records == 0);
  CHECK(out.report.image_verified);
  CHECK_FALSE(out.report.eta.has_value());
  CHECK_FALSE(out.report.theta.has_value());  // no energy, no ratio
  CHECK(out.report.exec_time_ns == Fixed6{});
}

TEST_CASE("a gaps-only trace costs idle cycles and no energy") {
  Trace t = parse_trace("I 10\nI 5\n");
  RunOutput out = run_simulation(SimConfig{}, t);
  CHECK(out.report.ledger.cycles == 15);
  CHECK(out.report.ledger.gap_instructions == 15);
  CHECK(out.report.ledger.e_overall() == 0);
  CHECK(out.report.trace_instructions == 15);
}

TEST_CASE("every architecture verifies its image on a failure-heavy run") {
  Trace t = small_trace(8, 3000);
  for (Architecture a : {Architecture::Proposed, Architecture::PureSram,
                         Architecture::PureSttRam, Architecture::RandomHybrid,
                         Architecture::CheckpointSramPcm}) {
    SimConfig cfg;
    cfg.arch = a;
    cfg.failure.mode = FailureMode::Periodic;
    cfg.failure.period = 250;
    cfg.checkpoint.period = 200;
    RunOutput out = run_simulation(cfg, t);
    INFO(architecture_name(a));
    CHECK(out.report.image_verified);
    CHECK(out.report.ledger.backups > 0);
    CHECK(out.report.ledger.e_overall() ==
          out.report.ledger.dynamic_energy_from_counts(cfg.tech));
  }
}

TEST_CASE("a one-combination sweep equals a direct run") {
  Trace t = small_trace();
  SimConfig base;
  std::vector<TraceInput> traces{{"t", &t}};
  std::vector<SweepRow> rows = run_sweep(base, SweepAxes{}, traces);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].skipped);
  CHECK(rows[0].trace == "t");

  SimConfig direct = base;
  normalize_config(direct);
  RunOutput out = run_simulation(direct, t);
  CHECK(rendered(rows[0].cfg, rows[0].report) == rendered(direct, out.report));
}

TEST_CASE("sweep rows enumerate trace-major and survive parallelism") {
  Trace t1 = small_trace(1, 800);
  Trace t2 = small_trace(2, 800);
  std::vector<TraceInput> traces{{"one", &t1}, {"two", &t2}};
  SweepAxes axes;
  axes.splits = {{1, 3}, {2, 2}};
  axes.thresholds = {3, 7};
  axes.failures = {FailureSchedule{}, parse_failure_spec("period:300")};
  axes.architectures = {Architecture::Proposed, Architecture::RandomHybrid};

  std::vector<SweepRow> serial = run_sweep(SimConfig{}, axes, traces, 1);
  std::vector<SweepRow> parallel = run_sweep(SimConfig{}, axes, traces, 4);
  REQUIRE(serial.size() == 32);
  REQUIRE(parallel.size() == 32);
  for (std::size_t i = 0; i < 16; ++i) CHECK(serial[i].trace == "one");
  for (std::size_t i = 16; i < 32; ++i) CHECK(serial[i].trace == "two");
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].trace == parallel[i].trace);
    CHECK(serial[i].skipped == parallel[i].skipped);
    CHECK(serial[i].note == parallel[i].note);
    CHECK(rendered(serial[i].cfg, serial[i].report) ==
          rendered(parallel[i].cfg, parallel[i].report));
  }
}

TEST_CASE("sweep rows with impossible geometry are skipped, not fatal") {
  Trace t = small_trace(4, 500);
  std::vector<TraceInput> traces{{"t", &t}};
  SweepAxes axes;
  axes.splits = {{2, 2}, {5, 1}};  // 6 ways do not divide a 16KB cache
  std::vector<SweepRow> rows = run_sweep(SimConfig{}, axes, traces);
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].skipped);
  CHECK(rows[1].skipped);
  CHECK_FALSE(rows[1].skip_reason.empty());
}

TEST_CASE("a way-split sweep covers both degenerate ends") {
  Trace t = small_trace(5, 1500);
  std::vector<TraceInput> traces{{"t", &t}};
  SweepAxes axes;
  axes.splits = {{0, 8}, {2, 6}, {4, 4}, {6, 2}, {8, 0}};
  std::vector<SweepRow> rows = run_sweep(SimConfig{}, axes, traces, 2);
  REQUIRE(rows.size() == 5);
  for (const SweepRow& r : rows) {
    CHECK_FALSE(r.skipped);
    CHECK(r.report.image_verified);
  }
  CHECK(rows[0].cfg.arch == Architecture::PureSttRam);
  CHECK_FALSE(rows[0].note.empty());
  CHECK(rows[4].cfg.arch == Architecture::PureSram);
  CHECK_FALSE(rows[4].note.empty());
  CHECK(rows[2].cfg.arch == Architecture::Proposed);
  CHECK(rows[2].note.empty());

  // More SRAM ways means fewer STT-RAM writes on the same workload.
  CHECK(rows[4].report.ledger.sttram_writes == 0);
  CHECK(rows[0].report.ledger.sttram_writes > rows[2].report.ledger.sttram_writes);
}
