#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hcsim {

// Trace or config text that does not parse. Carries a 1-based line number
// when one is known (0 otherwise).
struct ParseError : std::runtime_error {
  std::uint64_t line = 0;
  ParseError(std::uint64_t line_no, const std::string& what)
      : std::runtime_error(line_no ? ("line " + std::to_string(line_no) + ": " + what) : what),
        line(line_no) {}
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid cache geometry or architecture/geometry combination.
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hcsim
