#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hcsim {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  char buf[48];
  int n = 0;
  while (v > 0) {
    buf[n++] = char('0' + int(v % 10));
    v /= 10;
  }
  std::string out;
  out.reserve(n);
  while (n > 0) out.push_back(buf[--n]);
  return out;
}

// Fixed-point decimal with six fractional digits, stored as an integer
// count of millionths. Energies use it with picojoule units and times
// with nanosecond units, so sums and comparisons stay exact.
struct Fixed6 {
  static constexpr u64 scale = 1000000;

  u128 raw = 0;

  static Fixed6 from_raw(u128 r) { return Fixed6{r}; }
  static Fixed6 from_int(u64 whole) { return Fixed6{u128(whole) * scale}; }

  // Accepts "123", "123.456", ".5"; at most six fractional digits.
  static Fixed6 parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty decimal");
    u128 whole = 0;
    u64 frac = 0;
    int frac_digits = -1;
    bool any_digit = false;
    for (char ch : text) {
      if (ch == '.') {
        if (frac_digits >= 0) throw std::invalid_argument("bad decimal: " + text);
        frac_digits = 0;
        continue;
      }
      if (ch < '0' || ch > '9') throw std::invalid_argument("bad decimal: " + text);
      any_digit = true;
      if (frac_digits < 0) {
        whole = whole * 10 + u128(ch - '0');
      } else {
        if (frac_digits == 6) throw std::invalid_argument("more than six decimal places: " + text);
        frac = frac * 10 + u64(ch - '0');
        ++frac_digits;
      }
    }
    if (!any_digit) throw std::invalid_argument("bad decimal: " + text);
    while (frac_digits > 0 && frac_digits < 6) {
      frac *= 10;
      ++frac_digits;
    }
    return Fixed6{whole * scale + frac};
  }

  // Canonical form: trailing fractional zeros trimmed, no trailing dot.
  std::string str() const {
    std::string whole = u128_to_string(raw / scale);
    u64 frac = u64(raw % scale);
    if (frac == 0) return whole;
    char digits[7];
    for (int i = 5; i >= 0; --i) {
      digits[i] = char('0' + frac % 10);
      frac /= 10;
    }
    digits[6] = '\0';
    std::string f(digits);
    while (!f.empty() && f.back() == '0') f.pop_back();
    return whole + "." + f;
  }

  double to_double() const { return double(raw) / double(scale); }

  Fixed6 operator+(Fixed6 o) const { return Fixed6{raw + o.raw}; }
  Fixed6& operator+=(Fixed6 o) {
    raw += o.raw;
    return *this;
  }
  Fixed6 times(u128 n) const { return Fixed6{raw * n}; }
  Fixed6 div(u64 n) const { return Fixed6{raw / n}; }
  bool operator==(const Fixed6& o) const { return raw == o.raw; }
  bool operator!=(const Fixed6& o) const { return raw != o.raw; }
  bool operator<(const Fixed6& o) const { return raw < o.raw; }
  bool operator<=(const Fixed6& o) const { return raw <= o.raw; }
  bool operator>(const Fixed6& o) const { return raw > o.raw; }
  bool operator>=(const Fixed6& o) const { return raw >= o.raw; }
};

}  // namespace hcsim
