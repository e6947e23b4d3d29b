#pragma once

#include <cassert>
#include <cstdint>

#include "hcsim/geometry.hpp"

namespace hcsim {

enum class AccessKind : std::uint8_t { Read, Write };

enum class EventKind : std::uint8_t {
  RegionRead,    // hit read in `region`
  RegionWrite,   // hit write or miss fill into `region`
  PcmFetch,      // main-memory block read on a miss
  PcmWriteback,  // dirty eviction written back to main memory
  Migration,     // one source-region read plus one destination write
};

struct Event {
  EventKind kind;
  Region region;  // RegionRead/RegionWrite target, Migration source
  Region to;      // Migration destination

  static Event region_read(Region r) { return {EventKind::RegionRead, r, r}; }
  static Event region_write(Region r) { return {EventKind::RegionWrite, r, r}; }
  static Event pcm_fetch() { return {EventKind::PcmFetch, Region::Sram, Region::Sram}; }
  static Event pcm_writeback() { return {EventKind::PcmWriteback, Region::Sram, Region::Sram}; }
  static Event migration(Region from, Region to) { return {EventKind::Migration, from, to}; }
};

// One access never produces more than: victim writeback + fetch + fill +
// store + migration + migration-victim writeback.
class EventLog {
 public:
  void push(Event e) {
    assert(count_ < capacity);
    events_[count_++] = e;
  }
  const Event* begin() const { return events_; }
  const Event* end() const { return events_ + count_; }
  std::uint8_t size() const { return count_; }
  const Event& operator[](std::uint8_t i) const {
    assert(i < count_);
    return events_[i];
  }

 private:
  static constexpr std::uint8_t capacity = 8;
  Event events_[capacity];
  std::uint8_t count_ = 0;
};

enum class AccessClass : std::uint8_t { HitSram, HitSttRam, Miss };

struct AccessOutcome {
  AccessClass cls = AccessClass::Miss;
  bool migrated = false;
  EventLog events;
};

}  // namespace hcsim
