#pragma once

#include <cassert>
#include <cstdint>
#include <limits>

#include "hcsim/error.hpp"
#include "hcsim/rng.hpp"

namespace hcsim {

enum class FailureMode : std::uint8_t { None, Periodic, RandomUniform };

struct FailureSchedule {
  FailureMode mode = FailureMode::None;
  std::uint64_t period = 0;  // Periodic
  std::uint64_t lo = 0;      // RandomUniform, inclusive
  std::uint64_t hi = 0;      // RandomUniform, inclusive
  std::uint64_t seed = 1;

  void validate() const {
    if (mode == FailureMode::Periodic && period == 0)
      throw ConfigError("failure period must be positive");
    if (mode == FailureMode::RandomUniform && (lo == 0 || lo > hi))
      throw ConfigError("failure interval bounds must satisfy 1 <= lo <= hi");
  }
};

// Smallest multiple of `period` strictly greater than `after`.
inline std::uint64_t next_periodic_failure(std::uint64_t period, std::uint64_t after) {
  assert(period > 0);
  return (after / period + 1) * period;
}

// Successive failure points in instruction numbers. Periodic schedules fire
// at every multiple of the period; random schedules advance by a fresh
// seeded draw in [lo, hi] per failure.
class FailureStream {
 public:
  explicit FailureStream(const FailureSchedule& s) : sched_(s), rng_(s.seed) {
    switch (s.mode) {
      case FailureMode::None:
        next_ = no_failure;
        break;
      case FailureMode::Periodic:
        next_ = s.period;
        break;
      case FailureMode::RandomUniform:
        next_ = rng_.next_range(s.lo, s.hi);
        break;
    }
  }

  static constexpr std::uint64_t no_failure = std::numeric_limits<std::uint64_t>::max();

  // Next pending failure point; no_failure when the schedule is empty.
  std::uint64_t next_point() const { return next_; }

  bool pending(std::uint64_t instruction) const { return next_ <= instruction; }

  // Consumes the current point and schedules the one after it.
  std::uint64_t fire() {
    assert(next_ != no_failure);
    std::uint64_t point = next_;
    if (sched_.mode == FailureMode::Periodic)
      next_ = next_periodic_failure(sched_.period, point);
    else
      next_ = point + rng_.next_range(sched_.lo, sched_.hi);
    return point;
  }

 private:
  FailureSchedule sched_;
  SplitMix64 rng_;
  std::uint64_t next_ = no_failure;
};

}  // namespace hcsim
