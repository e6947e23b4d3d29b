#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <cstring>

#include "hcsim/report.hpp"

using namespace hcsim;

TEST_CASE("an empty config file means the defaults") {
  SimConfig parsed = parse_config("");
  CHECK(serialize_config(parsed) == serialize_config(SimConfig{}));
  CHECK(serialize_config(parse_config("# nothing but comments\n\n")) ==
        serialize_config(SimConfig{}));
}

TEST_CASE("the default fingerprint is pinned") {
  CHECK(config_fingerprint(SimConfig{}) == "0x966045029f41f343");
}

TEST_CASE("serialized configs parse back to the identical config") {
  SimConfig cfg;
  cfg.arch = Architecture::RandomHybrid;
  cfg.cache_size_bytes = 32768;
  cfg.block_size = 32;
  cfg.ways_sram = 1;
  cfg.ways_sttram = 3;
  cfg.prediction_entries = 512;
  cfg.threshold.value = 15;
  cfg.tech.pcm.write_energy_pj = Fixed6::parse("123.456");
  cfg.tech.sram.leakage_uw_per_16kb = 777;
  cfg.failure.mode = FailureMode::RandomUniform;
  cfg.failure.lo = 100;
  cfg.failure.hi = 900;
  cfg.seed = 5;
  cfg.checkpoint.period = 12345;

  std::string text = serialize_config(cfg);
  SimConfig back = parse_config(text);
  CHECK(serialize_config(back) == text);
  CHECK(config_fingerprint(back) == config_fingerprint(cfg));
}

TEST_CASE("every config field moves the fingerprint") {
  std::string base = config_fingerprint(SimConfig{});
  auto differs = [&](auto&& change) {
    SimConfig cfg;
    change(cfg);
    return config_fingerprint(cfg) != base;
  };
  CHECK(differs([](SimConfig& c) { c.arch = Architecture::PureSram; }));
  CHECK(differs([](SimConfig& c) { c.cache_size_bytes = 32768; }));
  CHECK(differs([](SimConfig& c) { c.block_size = 32; }));
  CHECK(differs([](SimConfig& c) { c.ways_sram = 1; }));
  CHECK(differs([](SimConfig& c) { c.prediction_entries = 8; }));
  CHECK(differs([](SimConfig& c) { c.threshold.value = 3; }));
  CHECK(differs([](SimConfig& c) { c.tech.clock_period_ns = Fixed6::parse("1.5"); }));
  CHECK(differs([](SimConfig& c) { c.tech.sttram.write_energy_pj = Fixed6::from_int(300); }));
  CHECK(differs([](SimConfig& c) { c.failure.mode = FailureMode::Periodic; c.failure.period = 9; }));
  CHECK(differs([](SimConfig& c) { c.seed = 2; }));
  CHECK(differs([](SimConfig& c) { c.checkpoint.period = 1; }));
}

TEST_CASE("config parse errors carry line numbers") {
  auto line_of = [](const char* text) -> std::uint64_t {
    try {
      parse_config(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return 0;
  };
  CHECK(line_of("seed = 1\nbogus.key = 2\n") == 2);
  CHECK(line_of("seed = x\n") == 1);
  CHECK(line_of("architecture proposed\n") == 1);
  CHECK(line_of("seed =\n") == 1);
  CHECK(line_of("policy.threshold = 0\n") == 1);
  CHECK(line_of("cache.block_size = 5000000000\n") == 1);
  CHECK(line_of("failure.mode = sometimes\n") == 1);
  CHECK(line_of("architecture = fancy\n") == 1);
  CHECK(line_of("clock.period_ns = 2.5.1\n") == 1);
  CHECK(line_of("tech.sram.color = red\n") == 1);
}

TEST_CASE("config values accept comments and padding") {
  SimConfig cfg = parse_config("  seed   =  9   # why not\n\npolicy.threshold=3\n");
  CHECK(cfg.seed == 9);
  CHECK(cfg.threshold.value == 3);
}

TEST_CASE("tech table keys parse for all three technologies") {
  SimConfig cfg = parse_config(
      "tech.sram.read_cycles = 4\n"
      "tech.sttram.write_energy_pj = 99.5\n"
      "tech.pcm.leakage_uw_per_16kb = 12\n");
  CHECK(cfg.tech.sram.read_cycles == 4);
  CHECK(cfg.tech.sttram.write_energy_pj == Fixed6::parse("99.5"));
  CHECK(cfg.tech.pcm.leakage_uw_per_16kb == 12);
}

TEST_CASE("failure spec strings") {
  CHECK(parse_failure_spec("none").mode == FailureMode::None);

  FailureSchedule p = parse_failure_spec("period:2000");
  CHECK(p.mode == FailureMode::Periodic);
  CHECK(p.period == 2000);

  FailureSchedule r = parse_failure_spec("random:2000:4000");
  CHECK(r.mode == FailureMode::RandomUniform);
  CHECK(r.lo == 2000);
  CHECK(r.hi == 4000);

  CHECK_THROWS_AS(parse_failure_spec("period:0"), ConfigError);
  CHECK_THROWS_AS(parse_failure_spec("period:x"), ConfigError);
  CHECK_THROWS_AS(parse_failure_spec("random:0:5"), ConfigError);
  CHECK_THROWS_AS(parse_failure_spec("random:9:2"), ConfigError);
  CHECK_THROWS_AS(parse_failure_spec("random:5"), ConfigError);
  CHECK_THROWS_AS(parse_failure_spec("often"), ConfigError);
}

TEST_CASE("axis list parsers") {
  CHECK(parse_threshold_list("1,3,7,15") == std::vector<std::uint32_t>{1, 3, 7, 15});
  CHECK(parse_threshold_list(" 7 ") == std::vector<std::uint32_t>{7});
  CHECK_THROWS_AS(parse_threshold_list("0"), ConfigError);
  CHECK_THROWS_AS(parse_threshold_list("256"), ConfigError);
  CHECK_THROWS_AS(parse_threshold_list("a,b"), ConfigError);

  auto splits = parse_split_list("0:8,2:6");
  REQUIRE(splits.size() == 2);
  CHECK(splits[0] == std::pair<std::uint32_t, std::uint32_t>{0, 8});
  CHECK(splits[1] == std::pair<std::uint32_t, std::uint32_t>{2, 6});
  CHECK_THROWS_AS(parse_split_list("0:0"), ConfigError);
  CHECK_THROWS_AS(parse_split_list("x:1"), ConfigError);
  CHECK_THROWS_AS(parse_split_list("4"), ConfigError);

  auto archs = parse_architecture_list("proposed,checkpoint");
  REQUIRE(archs.size() == 2);
  CHECK(archs[0] == Architecture::Proposed);
  CHECK(archs[1] == Architecture::CheckpointSramPcm);
  CHECK_THROWS_AS(parse_architecture_list("fancy"), ConfigError);

  auto fails = parse_failure_list("none,period:2000,random:2000:4000");
  REQUIRE(fails.size() == 3);
  CHECK(fails[2].hi == 4000);

  CHECK(split_list("a,,b", ',') == std::vector<std::string>{"a", "b"});
}

TEST_CASE("architecture names round trip") {
  for (Architecture a : {Architecture::Proposed, Architecture::PureSram,
                         Architecture::PureSttRam, Architecture::RandomHybrid,
                         Architecture::CheckpointSramPcm}) {
    Architecture back;
    REQUIRE(architecture_from_name(architecture_name(a), back));
    CHECK(back == a);
  }
  Architecture out;
  CHECK_FALSE(architecture_from_name("sram", out));
}

TEST_CASE("report fields serialize and parse back losslessly") {
  SyntheticTraceSpec spec;
  spec.record_count = 400;
  spec.seed = 6;
  spec.address_space_blocks = 256;
  Trace t = generate_synthetic(spec);
  SimConfig cfg;
  cfg.failure.mode = FailureMode::Periodic;
  cfg.failure.period = 100;
  normalize_config(cfg);
  RunOutput out = run_simulation(cfg, t, true);

  ReportFields fields = collect_report(cfg, out.report, "demo");
  CHECK(fields.front().first == "tool.name");
  CHECK(fields.front().second == "hcsim");

  std::string nested = serialize_nested(fields);
  auto parsed = parse_nested_report(nested);
  std::size_t present = 0;
  for (const auto& [k, v] : fields) {
    if (v.empty()) {
      CHECK(parsed.find(k) == parsed.end());
      continue;
    }
    ++present;
    REQUIRE(parsed.count(k) == 1);
    CHECK(parsed[k] == v);
  }
  CHECK(parsed.size() == present);
  CHECK(parsed["trace"] == "demo");
  CHECK(parsed["config.fingerprint"] == config_fingerprint(cfg));
  CHECK(parsed["verify.image"] == "pass");
  CHECK(parsed.count("ratio.theta") == 1);
}

TEST_CASE("absent ratios leave empty cells, not zeros") {
  SimConfig cfg;
  normalize_config(cfg);
  RunOutput out = run_simulation(cfg, Trace{});
  ReportFields fields = collect_report(cfg, out.report, "empty");
  std::string nested = serialize_nested(fields);
  CHECK(nested.find("ratio.eta") == std::string::npos);
  CHECK(nested.find("ratio.theta") == std::string::npos);
  CHECK(nested.find("energy.e_normal_pj") == std::string::npos);

  std::string header = tabular_header(fields);
  std::string row = tabular_row(fields);
  CHECK(std::count(header.begin(), header.end(), ',') ==
        std::count(row.begin(), row.end(), ','));
  CHECK(header.find("ratio.eta") != std::string::npos);  // column stays, cell is empty
}

TEST_CASE("csv cells quote separators and quotes") {
  CHECK(csv_cell("plain") == "plain");
  CHECK(csv_cell("") == "");
  CHECK(csv_cell("a,b") == "\"a,b\"");
  CHECK(csv_cell("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_cell("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("doubles render with enough digits to round trip") {
  double v = 2.0 / 3.0;
  std::string s = format_double(v);
  CHECK(std::strtod(s.c_str(), nullptr) == v);
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
}
