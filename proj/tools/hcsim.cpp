#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#include "CLI11.hpp"
#include "hcsim/config.hpp"
#include "hcsim/driver.hpp"
#include "hcsim/golden.hpp"
#include "hcsim/report.hpp"
#include "hcsim/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hcsim;

// Exit codes: 0 ok, 1 simulation failure or result divergence, 2 input
// parse errors, 3 geometry or architecture errors.
struct ArchitectureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Architecture arch_or_throw(const std::string& name) {
  Architecture a;
  if (!architecture_from_name(name, a))
    throw ArchitectureError("unknown architecture '" + name +
                            "' (expected proposed, pure-sram, pure-sttram, "
                            "random-hybrid or checkpoint)");
  return a;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
    gzFile f = gzopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    int n = text.empty() ? 0 : gzwrite(f, text.data(), unsigned(text.size()));
    gzclose(f);
    if (std::size_t(n) != text.size()) throw std::runtime_error("short write to '" + path + "'");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

// '*' and '?' wildcards, iterative with single-star backtracking.
bool glob_match(std::string_view pat, std::string_view s) {
  std::size_t p = 0, i = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (i < s.size()) {
    if (p < pat.size() && (pat[p] == '?' || pat[p] == s[i])) {
      ++p;
      ++i;
    } else if (p < pat.size() && pat[p] == '*') {
      star = p++;
      mark = i;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      i = ++mark;
    } else {
      return false;
    }
  }
  while (p < pat.size() && pat[p] == '*') ++p;
  return p == pat.size();
}

// Wildcards apply to the final path component only.
std::vector<std::string> expand_pattern(const std::string& pattern) {
  if (pattern.find_first_of("*?") == std::string::npos) {
    std::error_code ec;
    if (!fs::is_regular_file(pattern, ec)) return {};
    return {pattern};
  }
  std::size_t slash = pattern.find_last_of('/');
  std::string dir = slash == std::string::npos ? "." : pattern.substr(0, slash);
  std::string base = slash == std::string::npos ? pattern : pattern.substr(slash + 1);
  if (dir.empty()) dir = "/";
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (glob_match(base, name))
      out.push_back(slash == std::string::npos ? name : dir + "/" + name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SimConfig load_base_config(const std::string& path) {
  if (path.empty() || path == "default") return SimConfig{};
  return load_config_file(path);
}

struct RunArgs {
  std::string config = "default";
  std::string trace;
  std::string arch;
  std::string failure;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  std::string format = "nested";
  bool with_theta = false;
};

int cmd_run(const RunArgs& a) {
  SimConfig cfg = load_base_config(a.config);
  if (!a.arch.empty()) cfg.arch = arch_or_throw(a.arch);
  if (!a.failure.empty()) cfg.failure = parse_failure_spec(a.failure);
  if (a.seed_set) cfg.seed = a.seed;
  std::string note = normalize_config(cfg);
  if (!note.empty()) std::cerr << "note: " << note << "\n";

  Trace trace = load_trace_file(a.trace);
  RunOutput out = run_simulation(cfg, trace, a.with_theta);
  ReportFields f = collect_report(cfg, out.report, a.trace);
  write_output(a.out, a.format == "tabular" ? tabular_header(f) + tabular_row(f)
                                            : serialize_nested(f));
  if (!out.report.image_verified) {
    std::cerr << "error: final memory image diverges from the reference interpreter\n";
    return 1;
  }
  return 0;
}

struct SweepArgs {
  std::string config = "default";
  std::vector<std::string> traces;
  std::string thresholds;
  std::string splits;
  std::string failures;
  std::string archs;
  unsigned jobs = 1;
  std::string out;
  bool with_theta = false;
};

int cmd_sweep(const SweepArgs& a) {
  SimConfig base = load_base_config(a.config);
  SweepAxes axes;
  if (!a.thresholds.empty()) axes.thresholds = parse_threshold_list(a.thresholds);
  if (!a.splits.empty()) axes.splits = parse_split_list(a.splits);
  if (!a.failures.empty()) axes.failures = parse_failure_list(a.failures);
  if (!a.archs.empty())
    for (const std::string& name : split_list(a.archs, ','))
      axes.architectures.push_back(arch_or_throw(name));

  std::vector<std::string> paths;
  for (const std::string& arg : a.traces)
    for (const std::string& pat : split_list(arg, ','))
      for (const std::string& p : expand_pattern(pat))
        if (std::find(paths.begin(), paths.end(), p) == paths.end()) paths.push_back(p);
  if (paths.empty()) {
    std::cerr << "error: no trace files matched\n";
    return 2;
  }

  std::vector<Trace> storage;
  storage.reserve(paths.size());
  for (const std::string& p : paths) storage.push_back(load_trace_file(p));
  std::vector<TraceInput> inputs;
  for (std::size_t i = 0; i < paths.size(); ++i) inputs.push_back({paths[i], &storage[i]});

  std::vector<SweepRow> rows = run_sweep(base, axes, inputs, a.jobs, a.with_theta);
  std::string csv;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ReportFields f = collect_report(rows[i].cfg, rows[i].report, rows[i].trace);
    f.emplace_back("sweep.note", rows[i].note);
    f.emplace_back("sweep.skipped", rows[i].skipped ? "1" : "0");
    f.emplace_back("sweep.skip_reason", rows[i].skip_reason);
    if (i == 0) csv += tabular_header(f);
    csv += tabular_row(f);
  }
  write_output(a.out, csv);
  return 0;
}

int cmd_golden() {
  GoldenHarness h;
  std::vector<std::string> divergences = run_golden_scenario(h);
  if (divergences.empty()) {
    std::cout << "golden scenario: pass\n";
    return 0;
  }
  for (const std::string& d : divergences) std::cout << "golden divergence: " << d << "\n";
  return 1;
}

int cmd_selftest() {
  int fails = 0;
  auto check = [&fails](const std::string& what, bool ok) {
    std::cout << (ok ? "ok: " : "MISMATCH: ") << what << "\n";
    if (!ok) ++fails;
  };

  TechnologyParams t = TechnologyParams::defaults();
  check("clock.period_ns = 2", t.clock_period_ns == Fixed6::from_int(2));
  check("sram = 1/2 cycles, 6/2 pJ, 18972 uW/16KB",
        t.sram.read_cycles == 1 && t.sram.write_cycles == 2 &&
            t.sram.read_energy_pj == Fixed6::from_int(6) &&
            t.sram.write_energy_pj == Fixed6::from_int(2) &&
            t.sram.leakage_uw_per_16kb == 18972);
  check("sttram = 2/10 cycles, 81/217 pJ, 3014 uW/16KB",
        t.sttram.read_cycles == 2 && t.sttram.write_cycles == 10 &&
            t.sttram.read_energy_pj == Fixed6::from_int(81) &&
            t.sttram.write_energy_pj == Fixed6::from_int(217) &&
            t.sttram.leakage_uw_per_16kb == 3014);
  check("pcm = 35/100 cycles, 1553/6946 pJ, no leakage",
        t.pcm.read_cycles == 35 && t.pcm.write_cycles == 100 &&
            t.pcm.read_energy_pj == Fixed6::from_int(1553) &&
            t.pcm.write_energy_pj == Fixed6::from_int(6946) &&
            t.pcm.leakage_uw_per_16kb == 0);

  SimConfig cfg;
  check("default geometry = 16KB, 64B blocks, 2 SRAM + 2 STT-RAM ways, 64 sets",
        cfg.cache_size_bytes == 16384 && cfg.block_size == 64 && cfg.ways_sram == 2 &&
            cfg.ways_sttram == 2 && cfg.geometry().sets == 64);
  check("default prediction table = 4096 one-bit entries, threshold = 7",
        cfg.prediction_entries == 4096 && cfg.threshold.value == 7);

  StorageOverhead o = storage_overhead(cfg.geometry(), cfg.prediction_entries, cfg.threshold,
                                       2 * cfg.cache_size_bytes);
  check("metadata bits = 2048 (256 blocks x two 3-bit counters + 2-bit confidence)",
        o.metadata_bits == 2048);
  check("prediction table bits = 4096", o.table_bits == 4096);
  check("overhead fraction of 32KB = 0.0234375", o.fraction == 0.0234375);
  return fails ? 1 : 0;
}

struct GenArgs {
  std::string out;
  SyntheticTraceSpec spec;
};

int cmd_gen(const GenArgs& a) {
  if (a.spec.hot_set_blocks == 0 || a.spec.hot_set_blocks >= a.spec.address_space_blocks)
    throw ConfigError("hot set must be non-empty and smaller than the address space");
  write_output(a.out, emit_trace(generate_synthetic(a.spec)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic hybrid SRAM/STT-RAM cache simulator for intermittent power"};
  app.set_version_flag("--version", std::string(tool_name) + " " + tool_version);
  app.require_subcommand(1);

  RunArgs run;
  CLI::App* c_run = app.add_subcommand("run", "simulate one trace and print a report");
  c_run->add_option("--config", run.config, "config file, or 'default'");
  c_run->add_option("--trace", run.trace, "trace file (.gz accepted)")->required();
  c_run->add_option("--arch", run.arch, "architecture override");
  c_run->add_option("--failure", run.failure, "failure override: none | period:N | random:LO:HI");
  c_run->add_option("--seed", run.seed, "seed override");
  c_run->add_option("--out", run.out, "output path (default stdout)");
  c_run->add_option("--format", run.format, "nested | tabular")
      ->check(CLI::IsMember({"nested", "tabular"}));
  c_run->add_flag("--with-theta", run.with_theta,
                  "also run the no-failure companion and report theta");

  SweepArgs sweep;
  CLI::App* c_sweep = app.add_subcommand("sweep", "cartesian sweep over traces and parameters");
  c_sweep->add_option("--config", sweep.config, "base config file, or 'default'");
  c_sweep->add_option("--traces", sweep.traces, "trace paths or globs (repeat or comma-separate)")
      ->required();
  c_sweep->add_option("--thresholds", sweep.thresholds, "e.g. 1,3,7,15");
  c_sweep->add_option("--splits", sweep.splits, "sram:sttram way splits, e.g. 0:8,2:6,4:4");
  c_sweep->add_option("--failures", sweep.failures, "e.g. none,period:4000000");
  c_sweep->add_option("--archs", sweep.archs, "e.g. proposed,checkpoint");
  c_sweep->add_option("--jobs", sweep.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  c_sweep->add_option("--out", sweep.out, "CSV output path (default stdout)");
  c_sweep->add_flag("--with-theta", sweep.with_theta, "add the no-failure companion ratio");

  app.add_subcommand("golden", "replay the audited end-to-end policy scenario");
  app.add_subcommand("selftest", "verify built-in technology constants and overhead");

  GenArgs gen;
  CLI::App* c_gen = app.add_subcommand("gen", "generate a synthetic trace");
  c_gen->add_option("--records", gen.spec.record_count, "record count")->required();
  c_gen->add_option("--out", gen.out, "output path (.gz compresses; default stdout)");
  c_gen->add_option("--write-fraction", gen.spec.write_fraction, "P(write) per access")
      ->check(CLI::Range(0.0, 1.0));
  c_gen->add_option("--hot-blocks", gen.spec.hot_set_blocks, "blocks in the hot set");
  c_gen->add_option("--hot-fraction", gen.spec.hot_fraction, "P(access hits the hot set)")
      ->check(CLI::Range(0.0, 1.0));
  c_gen->add_option("--space-blocks", gen.spec.address_space_blocks, "addressable blocks");
  c_gen->add_option("--gap-fraction", gen.spec.gap_fraction, "P(record is a gap)")
      ->check(CLI::Range(0.0, 1.0));
  c_gen->add_option("--seed", gen.spec.seed, "generator seed");
  c_gen->add_option("--block-size", gen.spec.block_size, "bytes per block");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  run.seed_set = c_run->count("--seed") > 0;

  try {
    if (app.got_subcommand(c_run)) return cmd_run(run);
    if (app.got_subcommand(c_sweep)) return cmd_sweep(sweep);
    if (app.got_subcommand("golden")) return cmd_golden();
    if (app.got_subcommand("selftest")) return cmd_selftest();
    if (app.got_subcommand(c_gen)) return cmd_gen(gen);
  } catch (const ArchitectureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SimulationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
