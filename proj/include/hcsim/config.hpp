#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "hcsim/driver.hpp"
#include "hcsim/error.hpp"
#include "hcsim/hash.hpp"
#include "hcsim/text.hpp"
#include "hcsim/trace.hpp"

namespace hcsim {

// Flat `key = value` file, '#' comments, blank lines allowed. Every key has
// a default, so an empty file is a valid config. Unknown keys are rejected
// rather than ignored; a typo must not silently fall back to a default.
inline SimConfig parse_config(std::string_view text) {
  SimConfig cfg;
  std::uint64_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(line_no, "expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw ParseError(line_no, "expected 'key = value'");

    auto as_u64 = [&](std::uint64_t& out) {
      if (!parse_u64(value, 10, out))
        throw ParseError(line_no, "bad integer '" + value + "' for " + key);
    };
    auto as_u32 = [&](std::uint32_t& out) {
      std::uint64_t v;
      as_u64(v);
      if (v > 0xffffffffu) throw ParseError(line_no, key + " out of range");
      out = std::uint32_t(v);
    };
    auto as_fixed = [&](Fixed6& out) {
      try {
        out = Fixed6::parse(value);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, std::string(e.what()) + " for " + key);
      }
    };

    auto tech_key = [&](TechSpec& spec, std::string_view field) -> bool {
      if (field == "read_cycles") as_u32(spec.read_cycles);
      else if (field == "write_cycles") as_u32(spec.write_cycles);
      else if (field == "read_energy_pj") as_fixed(spec.read_energy_pj);
      else if (field == "write_energy_pj") as_fixed(spec.write_energy_pj);
      else if (field == "leakage_uw_per_16kb") as_u64(spec.leakage_uw_per_16kb);
      else return false;
      return true;
    };

    if (key == "cache.size_bytes") as_u64(cfg.cache_size_bytes);
    else if (key == "cache.block_size") as_u32(cfg.block_size);
    else if (key == "cache.ways_sram") as_u32(cfg.ways_sram);
    else if (key == "cache.ways_sttram") as_u32(cfg.ways_sttram);
    else if (key == "prediction.entries") as_u64(cfg.prediction_entries);
    else if (key == "policy.threshold") {
      as_u32(cfg.threshold.value);
      if (cfg.threshold.value < 1) throw ParseError(line_no, "threshold must be >= 1");
    } else if (key == "clock.period_ns") as_fixed(cfg.tech.clock_period_ns);
    else if (key.rfind("tech.sram.", 0) == 0) {
      if (!tech_key(cfg.tech.sram, std::string_view(key).substr(10)))
        throw ParseError(line_no, "unknown key '" + key + "'");
    } else if (key.rfind("tech.sttram.", 0) == 0) {
      if (!tech_key(cfg.tech.sttram, std::string_view(key).substr(12)))
        throw ParseError(line_no, "unknown key '" + key + "'");
    } else if (key.rfind("tech.pcm.", 0) == 0) {
      if (!tech_key(cfg.tech.pcm, std::string_view(key).substr(9)))
        throw ParseError(line_no, "unknown key '" + key + "'");
    } else if (key == "failure.mode") {
      if (value == "none") cfg.failure.mode = FailureMode::None;
      else if (value == "periodic") cfg.failure.mode = FailureMode::Periodic;
      else if (value == "random") cfg.failure.mode = FailureMode::RandomUniform;
      else throw ParseError(line_no, "bad failure.mode '" + value + "'");
    } else if (key == "failure.period") as_u64(cfg.failure.period);
    else if (key == "failure.lo") as_u64(cfg.failure.lo);
    else if (key == "failure.hi") as_u64(cfg.failure.hi);
    else if (key == "seed") as_u64(cfg.seed);
    else if (key == "architecture") {
      if (!architecture_from_name(value, cfg.arch))
        throw ParseError(line_no, "bad architecture '" + value + "'");
    } else if (key == "checkpoint.period") as_u64(cfg.checkpoint.period);
    else throw ParseError(line_no, "unknown key '" + key + "'");
  }
  return cfg;
}

inline SimConfig load_config_file(const std::string& path) {
  return parse_config(read_file(path));
}

inline const char* failure_mode_name(FailureMode m) {
  switch (m) {
    case FailureMode::None: return "none";
    case FailureMode::Periodic: return "periodic";
    case FailureMode::RandomUniform: return "random";
  }
  return "?";
}

// Canonical full-key rendering; hashing it yields the config fingerprint.
inline std::string serialize_config(const SimConfig& cfg) {
  std::string s;
  auto kv = [&s](std::string_view k, const std::string& v) {
    s += k;
    s += " = ";
    s += v;
    s += "\n";
  };
  kv("architecture", architecture_name(cfg.arch));
  kv("cache.size_bytes", std::to_string(cfg.cache_size_bytes));
  kv("cache.block_size", std::to_string(cfg.block_size));
  kv("cache.ways_sram", std::to_string(cfg.ways_sram));
  kv("cache.ways_sttram", std::to_string(cfg.ways_sttram));
  kv("prediction.entries", std::to_string(cfg.prediction_entries));
  kv("policy.threshold", std::to_string(cfg.threshold.value));
  kv("clock.period_ns", cfg.tech.clock_period_ns.str());
  const struct {
    const char* name;
    const TechSpec* spec;
  } techs[3] = {{"sram", &cfg.tech.sram}, {"sttram", &cfg.tech.sttram}, {"pcm", &cfg.tech.pcm}};
  for (const auto& t : techs) {
    std::string p = std::string("tech.") + t.name + ".";
    kv(p + "read_cycles", std::to_string(t.spec->read_cycles));
    kv(p + "write_cycles", std::to_string(t.spec->write_cycles));
    kv(p + "read_energy_pj", t.spec->read_energy_pj.str());
    kv(p + "write_energy_pj", t.spec->write_energy_pj.str());
    kv(p + "leakage_uw_per_16kb", std::to_string(t.spec->leakage_uw_per_16kb));
  }
  kv("failure.mode", failure_mode_name(cfg.failure.mode));
  kv("failure.period", std::to_string(cfg.failure.period));
  kv("failure.lo", std::to_string(cfg.failure.lo));
  kv("failure.hi", std::to_string(cfg.failure.hi));
  kv("seed", std::to_string(cfg.seed));
  kv("checkpoint.period", std::to_string(cfg.checkpoint.period));
  return s;
}

inline std::string config_fingerprint(const SimConfig& cfg) {
  std::uint64_t h = fnv1a64(serialize_config(cfg));
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// "none" | "period:N" | "random:LO:HI"
inline FailureSchedule parse_failure_spec(const std::string& spec) {
  FailureSchedule f;
  if (spec == "none") return f;
  if (spec.rfind("period:", 0) == 0) {
    f.mode = FailureMode::Periodic;
    if (!parse_u64(std::string_view(spec).substr(7), 10, f.period) || f.period == 0)
      throw ConfigError("bad failure spec '" + spec + "'");
    return f;
  }
  if (spec.rfind("random:", 0) == 0) {
    std::string_view rest = std::string_view(spec).substr(7);
    std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos ||
        !parse_u64(rest.substr(0, colon), 10, f.lo) ||
        !parse_u64(rest.substr(colon + 1), 10, f.hi) || f.lo == 0 || f.lo > f.hi)
      throw ConfigError("bad failure spec '" + spec + "'");
    f.mode = FailureMode::RandomUniform;
    return f;
  }
  throw ConfigError("bad failure spec '" + spec + "'");
}

inline std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view item = trim(text.substr(pos, next - pos));
    if (!item.empty()) out.emplace_back(item);
    pos = next + 1;
  }
  return out;
}

// "1,3,7,15"
inline std::vector<std::uint32_t> parse_threshold_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  for (const std::string& item : split_list(text, ',')) {
    std::uint64_t v;
    if (!parse_u64(item, 10, v) || v == 0 || v > 255)
      throw ConfigError("bad threshold '" + item + "'");
    out.push_back(std::uint32_t(v));
  }
  return out;
}

// "0:8,2:6,4:4,6:2,8:0"
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> parse_split_list(
    const std::string& text) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const std::string& item : split_list(text, ',')) {
    std::size_t colon = item.find(':');
    std::uint64_t a, b;
    if (colon == std::string::npos || !parse_u64(std::string_view(item).substr(0, colon), 10, a) ||
        !parse_u64(std::string_view(item).substr(colon + 1), 10, b) || a + b == 0)
      throw ConfigError("bad way split '" + item + "'");
    out.emplace_back(std::uint32_t(a), std::uint32_t(b));
  }
  return out;
}

// "none,period:2000,random:2000:4000"
inline std::vector<FailureSchedule> parse_failure_list(const std::string& text) {
  std::vector<FailureSchedule> out;
  for (const std::string& item : split_list(text, ',')) out.push_back(parse_failure_spec(item));
  return out;
}

inline std::vector<Architecture> parse_architecture_list(const std::string& text) {
  std::vector<Architecture> out;
  for (const std::string& item : split_list(text, ',')) {
    Architecture a;
    if (!architecture_from_name(item, a)) throw ConfigError("bad architecture '" + item + "'");
    out.push_back(a);
  }
  return out;
}

}  // namespace hcsim
