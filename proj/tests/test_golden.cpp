#include <catch2/catch_amalgamated.hpp>

#include "hcsim/golden.hpp"
#include "reference_engine.hpp"

using namespace hcsim;

TEST_CASE("the production engine replays the worked scenario exactly") {
  GoldenHarness h;
  std::vector<std::string> divergences = run_golden_scenario(h);
  for (const std::string& d : divergences) UNSCOPED_INFO(d);
  CHECK(divergences.empty());
}

TEST_CASE("the independent reference engine replays it too") {
  refsim::RefGoldenHarness h;
  std::vector<std::string> divergences = run_golden_scenario(h);
  for (const std::string& d : divergences) UNSCOPED_INFO(d);
  CHECK(divergences.empty());
}

TEST_CASE("compare-then-increment counters are caught at the first migration") {
  refsim::Mutations mut;
  mut.compare_then_increment = true;
  refsim::RefGoldenHarness h(mut);
  std::vector<std::string> divergences = run_golden_scenario(h);
  REQUIRE_FALSE(divergences.empty());
  CHECK(divergences.front().rfind("D: block b", 0) == 0);
}

TEST_CASE("counter-derived placement prediction is caught at the first eviction") {
  refsim::Mutations mut;
  mut.pr_by_counters = true;
  refsim::RefGoldenHarness h(mut);
  std::vector<std::string> divergences = run_golden_scenario(h);
  REQUIRE_FALSE(divergences.empty());
  CHECK(divergences.front().rfind("D: prediction[2]", 0) == 0);
}

TEST_CASE("dropping dirty blocks at backup is caught by image verification") {
  SyntheticTraceSpec spec;
  spec.record_count = 2000;
  spec.write_fraction = 0.6;
  spec.address_space_blocks = 32;
  spec.hot_set_blocks = 8;
  spec.seed = 5;
  Trace trace = generate_synthetic(spec);

  SimConfig cfg;
  cfg.cache_size_bytes = 512;
  cfg.block_size = 64;
  cfg.ways_sram = 1;
  cfg.ways_sttram = 1;
  cfg.prediction_entries = 8;
  cfg.threshold = Threshold{3};
  cfg.failure.mode = FailureMode::Periodic;
  cfg.failure.period = 40;
  normalize_config(cfg);
  MemoryImage oracle = oracle_image(trace, cfg.geometry());

  refsim::Engine clean(cfg, refsim::Flavor::Proposed);
  refsim::replay(clean, trace, cfg.failure);
  CHECK(refsim::to_image(clean.image()) == oracle);

  refsim::Mutations mut;
  mut.drop_dirty_on_backup = true;
  refsim::Engine broken(cfg, refsim::Flavor::Proposed, mut);
  refsim::replay(broken, trace, cfg.failure);
  CHECK_FALSE(refsim::to_image(broken.image()) == oracle);
}
