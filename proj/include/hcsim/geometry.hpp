#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <string>

#include "hcsim/error.hpp"

namespace hcsim {

// Physical addresses are 48-bit.
constexpr std::uint64_t max_address = (std::uint64_t(1) << 48) - 1;

enum class Region : std::uint8_t { Sram = 0, SttRam = 1 };

inline const char* region_name(Region r) { return r == Region::Sram ? "sram" : "sttram"; }

// Set-associative geometry. Ways [0, ways_sram) of every set are SRAM,
// ways [ways_sram, ways_total) are STT-RAM.
struct CacheGeometry {
  std::uint64_t capacity_bytes = 0;
  std::uint32_t block_size = 0;
  std::uint32_t ways_sram = 0;
  std::uint32_t ways_sttram = 0;
  std::uint32_t ways_total = 0;
  std::uint32_t sets = 0;

  std::uint64_t blocks() const { return std::uint64_t(sets) * ways_total; }
  std::uint64_t sram_bytes() const { return std::uint64_t(sets) * ways_sram * block_size; }
  std::uint64_t sttram_bytes() const { return std::uint64_t(sets) * ways_sttram * block_size; }

  Region region_of_way(std::uint32_t way) const {
    assert(way < ways_total);
    return way < ways_sram ? Region::Sram : Region::SttRam;
  }
};

inline CacheGeometry make_geometry(std::uint64_t capacity_bytes, std::uint32_t block_size,
                                   std::uint32_t ways_sram, std::uint32_t ways_sttram) {
  std::uint32_t ways_total = ways_sram + ways_sttram;
  if (capacity_bytes == 0 || !std::has_single_bit(capacity_bytes))
    throw GeometryError("capacity must be a power of two, got " + std::to_string(capacity_bytes));
  if (block_size == 0 || !std::has_single_bit(block_size))
    throw GeometryError("block size must be a power of two, got " + std::to_string(block_size));
  if (ways_total == 0) throw GeometryError("cache needs at least one way");
  std::uint64_t row = std::uint64_t(block_size) * ways_total;
  if (capacity_bytes % row != 0)
    throw GeometryError("capacity not divisible by block_size * ways");
  std::uint64_t sets = capacity_bytes / row;
  if (!std::has_single_bit(sets))
    throw GeometryError("set count must be a power of two, got " + std::to_string(sets));
  CacheGeometry g;
  g.capacity_bytes = capacity_bytes;
  g.block_size = block_size;
  g.ways_sram = ways_sram;
  g.ways_sttram = ways_sttram;
  g.ways_total = ways_total;
  g.sets = std::uint32_t(sets);
  return g;
}

struct AddressParts {
  std::uint64_t tag = 0;
  std::uint32_t set = 0;
  std::uint32_t offset = 0;
  bool operator==(const AddressParts&) const = default;
};

inline AddressParts decompose(const CacheGeometry& g, std::uint64_t addr) {
  assert(addr <= max_address);
  std::uint64_t block = addr / g.block_size;
  AddressParts p;
  p.offset = std::uint32_t(addr % g.block_size);
  p.set = std::uint32_t(block % g.sets);
  p.tag = block / g.sets;
  return p;
}

// Base address of the block held by (tag, set).
inline std::uint64_t block_address(const CacheGeometry& g, std::uint64_t tag, std::uint32_t set) {
  return (tag * g.sets + set) * g.block_size;
}

// Base address of the block containing addr.
inline std::uint64_t block_base(const CacheGeometry& g, std::uint64_t addr) {
  return addr - addr % g.block_size;
}

}  // namespace hcsim
