#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hcsim/config.hpp"
#include "hcsim/driver.hpp"
#include "hcsim/version.hpp"

namespace hcsim {

// Doubles render with max_digits10 so re-parsing restores the exact value.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using ReportFields = std::vector<std::pair<std::string, std::string>>;

// Flat ordered key/value view of one run: tool id, effective config echo,
// then every metric. Optional ratios show up with empty values when absent.
inline ReportFields collect_report(const SimConfig& cfg, const RunReport& r,
                                   const std::string& trace_name) {
  ReportFields f;
  f.emplace_back("tool.name", tool_name);
  f.emplace_back("tool.version", tool_version);
  f.emplace_back("trace", trace_name);
  f.emplace_back("config.fingerprint", config_fingerprint(cfg));
  for (const std::string& line : split_list(serialize_config(cfg), '\n')) {
    std::size_t eq = line.find(" = ");
    f.emplace_back("config." + line.substr(0, eq), line.substr(eq + 3));
  }

  const EnergyLedger& l = r.ledger;
  auto n = [&f](std::string_view key, std::uint64_t v) {
    f.emplace_back(std::string(key), std::to_string(v));
  };
  n("trace.records", r.trace_records);
  n("trace.instructions", r.trace_instructions);
  n("counts.accesses", l.accesses);
  n("counts.reads", l.reads);
  n("counts.writes", l.writes);
  n("counts.gap_instructions", l.gap_instructions);
  n("counts.hits_sram", l.hits_sram);
  n("counts.hits_sttram", l.hits_sttram);
  n("counts.misses", l.misses);
  n("counts.migrations", l.migrations);
  n("counts.writebacks", l.writebacks);
  n("counts.flush_writebacks", l.flush_writebacks);
  n("counts.sram_reads", l.sram_reads);
  n("counts.sram_writes", l.sram_writes);
  n("counts.sttram_reads", l.sttram_reads);
  n("counts.sttram_writes", l.sttram_writes);
  n("counts.pcm_reads", l.pcm_reads);
  n("counts.pcm_writes", l.pcm_writes);
  n("backup.count", l.backups);
  n("backup.n_w_l1", l.n_w_l1);
  n("backup.n_w_main", l.n_w_main);
  n("backup.cycles", l.backup_cycles);
  f.emplace_back("backup.total_time_ns", Fixed6::from_raw(l.backup_time_raw).str());
  f.emplace_back("backup.avg_time_ns", r.avg_backup_time_ns.str());
  n("restore.count", l.restores);
  n("restore.n_r_l1", l.n_r_l1);
  n("restore.n_r_main", l.n_r_main);
  n("checkpoint.reexecuted_records", l.reexecuted_records);
  n("cycles", l.cycles);
  f.emplace_back("time.exec_ns", r.exec_time_ns.str());
  f.emplace_back("energy.e_exec_pj", Fixed6::from_raw(l.e_exec).str());
  f.emplace_back("energy.e_backup_pj", Fixed6::from_raw(l.e_backup).str());
  f.emplace_back("energy.e_restore_pj", Fixed6::from_raw(l.e_restore).str());
  f.emplace_back("energy.e_overall_pj", Fixed6::from_raw(l.e_overall()).str());
  f.emplace_back("energy.static_pj", r.static_pj.str());
  f.emplace_back("energy.e_normal_pj",
                 r.theta.has_value() ? Fixed6::from_raw(r.e_normal).str() : "");
  f.emplace_back("ratio.eta", r.eta ? format_double(*r.eta) : "");
  f.emplace_back("ratio.theta", r.theta ? format_double(*r.theta) : "");
  f.emplace_back("verify.image", r.image_verified ? "pass" : "fail");
  return f;
}

// One "key = value" line per present field.
inline std::string serialize_nested(const ReportFields& fields) {
  std::string out;
  for (const auto& [k, v] : fields) {
    if (v.empty()) continue;
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
  return out;
}

inline std::string csv_cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char c : v) {
    if (c == '"') q += "\"\"";
    else q.push_back(c);
  }
  q += "\"";
  return q;
}

inline std::string tabular_header(const ReportFields& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_cell(fields[i].first);
  }
  out.push_back('\n');
  return out;
}

inline std::string tabular_row(const ReportFields& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_cell(fields[i].second);
  }
  out.push_back('\n');
  return out;
}

// Inverse of serialize_nested, for report round-trips.
inline std::map<std::string, std::string> parse_nested_report(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    std::size_t eq = line.find(" = ");
    if (eq == std::string_view::npos) continue;
    out.emplace(std::string(line.substr(0, eq)), std::string(line.substr(eq + 3)));
  }
  return out;
}

}  // namespace hcsim
