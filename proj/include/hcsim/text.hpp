#pragma once

#include <cstdint>
#include <string_view>

namespace hcsim {

// Strict unsigned parse in base 10 or 16, overflow-checked, no sign or
// whitespace. Returns false on any malformed input.
inline bool parse_u64(std::string_view s, int base, std::uint64_t& out) {
  if (s.empty()) return false;
  std::uint64_t v = 0;
  for (char ch : s) {
    int d;
    if (ch >= '0' && ch <= '9')
      d = ch - '0';
    else if (base == 16 && ch >= 'a' && ch <= 'f')
      d = ch - 'a' + 10;
    else if (base == 16 && ch >= 'A' && ch <= 'F')
      d = ch - 'A' + 10;
    else
      return false;
    std::uint64_t next = v * std::uint64_t(base) + std::uint64_t(d);
    if (next / std::uint64_t(base) != v) return false;
    v = next;
  }
  out = v;
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace hcsim
