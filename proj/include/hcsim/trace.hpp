#pragma once

#include <zlib.h>

#include <cassert>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hcsim/error.hpp"
#include "hcsim/geometry.hpp"
#include "hcsim/memory_image.hpp"
#include "hcsim/rng.hpp"
#include "hcsim/text.hpp"

namespace hcsim {

enum class RecordKind : std::uint8_t { Read, Write, Gap };

// One trace line. `value` is the address for Read/Write and the instruction
// count for Gap. `instruction_index` is the cumulative instruction count
// including this record; `write_id` numbers Write records 1..n in trace
// order so re-executed writes replay identical content.
struct TraceRecord {
  RecordKind kind = RecordKind::Read;
  std::uint64_t value = 0;
  std::uint64_t instruction_index = 0;
  std::uint64_t write_id = 0;

  bool operator==(const TraceRecord&) const = default;
};

using Trace = std::vector<TraceRecord>;

// Line format: "R <hex-addr>", "W <hex-addr>", "I <decimal-count>".
// Hex addresses take an optional 0x prefix. '#' starts a comment line,
// blank lines are skipped, CRLF is tolerated.
inline Trace parse_trace(std::string_view text) {
  Trace out;
  std::uint64_t line_no = 0;
  std::uint64_t instructions = 0;
  std::uint64_t writes = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size() || line[i] == '#') continue;

    char tag = line[i++];
    if (i >= line.size() || (line[i] != ' ' && line[i] != '\t'))
      throw ParseError(line_no, "expected space after record tag");
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t end = line.size();
    while (end > i && (line[end - 1] == ' ' || line[end - 1] == '\t')) --end;
    std::string_view field = line.substr(i, end - i);
    if (field.empty()) throw ParseError(line_no, "missing operand");

    TraceRecord rec;
    if (tag == 'R' || tag == 'W') {
      if (field.size() > 2 && field[0] == '0' && (field[1] == 'x' || field[1] == 'X'))
        field.remove_prefix(2);
      std::uint64_t addr;
      if (!parse_u64(field, 16, addr))
        throw ParseError(line_no, "bad hex address '" + std::string(field) + "'");
      if (addr > max_address)
        throw ParseError(line_no, "address out of 48-bit range");
      rec.kind = tag == 'R' ? RecordKind::Read : RecordKind::Write;
      rec.value = addr;
      instructions += 1;
      if (rec.kind == RecordKind::Write) rec.write_id = ++writes;
    } else if (tag == 'I') {
      std::uint64_t count;
      if (!parse_u64(field, 10, count) || count == 0)
        throw ParseError(line_no, "bad instruction count '" + std::string(field) + "'");
      rec.kind = RecordKind::Gap;
      rec.value = count;
      instructions += count;
    } else {
      throw ParseError(line_no, std::string("unknown record tag '") + tag + "'");
    }
    rec.instruction_index = instructions;
    out.push_back(rec);
  }
  return out;
}

inline void append_hex(std::string& out, std::uint64_t v) {
  char buf[19];
  int n = 0;
  do {
    int d = int(v & 0xf);
    buf[n++] = char(d < 10 ? '0' + d : 'a' + d - 10);
    v >>= 4;
  } while (v);
  out += "0x";
  while (n > 0) out.push_back(buf[--n]);
}

// Canonical text: lowercase hex with 0x prefix, LF line endings.
inline std::string emit_trace(const Trace& trace) {
  std::string out;
  out.reserve(trace.size() * 10);
  for (const TraceRecord& r : trace) {
    switch (r.kind) {
      case RecordKind::Read:
        out += "R ";
        append_hex(out, r.value);
        break;
      case RecordKind::Write:
        out += "W ";
        append_hex(out, r.value);
        break;
      case RecordKind::Gap:
        out += "I ";
        out += std::to_string(r.value);
        break;
    }
    out.push_back('\n');
  }
  return out;
}

inline std::string inflate_gzip(const std::string& compressed) {
  z_stream zs{};
  if (inflateInit2(&zs, 15 + 16) != Z_OK) throw ParseError(0, "zlib init failed");
  std::string out;
  char buf[1 << 16];
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = uInt(compressed.size());
  int rc;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof buf;
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw ParseError(0, "gzip inflate failed");
    }
    out.append(buf, sizeof buf - zs.avail_out);
  } while (rc != Z_STREAM_END && zs.avail_in > 0);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) throw ParseError(0, "truncated gzip stream");
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Loads a trace file; .gz files are inflated transparently.
inline Trace load_trace_file(const std::string& path) {
  std::string text = read_file(path);
  if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0)
    text = inflate_gzip(text);
  return parse_trace(text);
}

// Synthetic workload shape: a hot pool of blocks absorbing `hot_fraction`
// of the accesses, the rest spread over the remaining address space, with
// occasional non-memory instruction gaps.
struct SyntheticTraceSpec {
  std::uint64_t record_count = 0;
  double write_fraction = 0.5;
  std::uint64_t hot_set_blocks = 16;
  double hot_fraction = 0.9;
  std::uint64_t address_space_blocks = 1024;
  double gap_fraction = 0.0;
  std::uint64_t seed = 1;
  std::uint32_t block_size = 64;
};

// Draw order per record is pinned: gap? -> [gap length] | hot? -> block -> write?
// Changing it invalidates recorded checksums.
inline Trace generate_synthetic(const SyntheticTraceSpec& spec) {
  assert(spec.hot_set_blocks > 0 && spec.hot_set_blocks < spec.address_space_blocks);
  assert(spec.address_space_blocks * spec.block_size <= max_address);
  SplitMix64 rng(spec.seed);
  Trace out;
  out.reserve(spec.record_count);
  std::uint64_t instructions = 0;
  std::uint64_t writes = 0;
  for (std::uint64_t i = 0; i < spec.record_count; ++i) {
    TraceRecord rec;
    if (rng.next_unit() < spec.gap_fraction) {
      rec.kind = RecordKind::Gap;
      rec.value = rng.next_range(1, 16);
      instructions += rec.value;
    } else {
      std::uint64_t block;
      if (rng.next_unit() < spec.hot_fraction)
        block = rng.next_range(0, spec.hot_set_blocks - 1);
      else
        block = rng.next_range(spec.hot_set_blocks, spec.address_space_blocks - 1);
      rec.value = block * spec.block_size;
      bool is_write = rng.next_unit() < spec.write_fraction;
      rec.kind = is_write ? RecordKind::Write : RecordKind::Read;
      instructions += 1;
      if (is_write) rec.write_id = ++writes;
    }
    rec.instruction_index = instructions;
    out.push_back(rec);
  }
  return out;
}

inline std::uint64_t trace_instructions(const Trace& t) {
  return t.empty() ? 0 : t.back().instruction_index;
}

// Reference main-memory image: last write wins, at block granularity.
inline MemoryImage oracle_image(const Trace& trace, const CacheGeometry& g) {
  MemoryImage img;
  for (const TraceRecord& r : trace)
    if (r.kind == RecordKind::Write) img.write(block_base(g, r.value), r.write_id);
  return img;
}

}  // namespace hcsim
