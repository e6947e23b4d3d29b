#pragma once

#include <cstdint>

#include "hcsim/error.hpp"
#include "hcsim/fixed.hpp"

namespace hcsim {

// Per-technology access cost. Latencies are in clock cycles, energies in
// picojoules per block access, leakage in microwatts per 16KB of capacity.
struct TechSpec {
  std::uint32_t read_cycles = 0;
  std::uint32_t write_cycles = 0;
  Fixed6 read_energy_pj;
  Fixed6 write_energy_pj;
  std::uint64_t leakage_uw_per_16kb = 0;

  bool operator==(const TechSpec&) const = default;
};

struct TechnologyParams {
  TechSpec sram;
  TechSpec sttram;
  TechSpec pcm;
  Fixed6 clock_period_ns = Fixed6::from_int(2);

  bool operator==(const TechnologyParams&) const = default;

  // 32nm 16KB SRAM / 16KB STT-RAM (MRAM) / 128MB PCM reference points.
  // PCM write uses the RESET pulse energy as the single effective value.
  static TechnologyParams defaults() {
    TechnologyParams t;
    t.sram = {1, 2, Fixed6::from_int(6), Fixed6::from_int(2), 18972};
    t.sttram = {2, 10, Fixed6::from_int(81), Fixed6::from_int(217), 3014};
    t.pcm = {35, 100, Fixed6::parse("1553"), Fixed6::parse("6946"), 0};
    t.clock_period_ns = Fixed6::from_int(2);
    return t;
  }

  void validate() const {
    const TechSpec* specs[3] = {&sram, &sttram, &pcm};
    for (const TechSpec* s : specs) {
      if (s->read_cycles == 0 || s->write_cycles == 0)
        throw ConfigError("technology latencies must be positive");
      if (s->read_energy_pj.raw == 0 || s->write_energy_pj.raw == 0)
        throw ConfigError("technology energies must be positive");
    }
    if (clock_period_ns.raw == 0) throw ConfigError("clock period must be positive");
  }
};

}  // namespace hcsim
