#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace hcsim {

// Direct-mapped index: block number modulo table size.
inline std::size_t prediction_index(std::uint64_t addr, std::uint32_t block_size,
                                    std::size_t entries) {
  assert(entries > 0);
  return std::size_t((addr / block_size) % entries);
}

// One bit per entry. 1 = place the block in SRAM on its next miss,
// 0 = place it in STT-RAM. A fresh table predicts SRAM everywhere.
// Deliberately volatile across power failures unless told otherwise.
class PredictionTable {
 public:
  explicit PredictionTable(std::size_t entries) : bits_(entries, 1) {}

  std::size_t entries() const { return bits_.size(); }

  std::uint8_t get(std::size_t idx) const {
    assert(idx < bits_.size());
    return bits_[idx];
  }

  void set(std::size_t idx, std::uint8_t value) {
    assert(idx < bits_.size());
    assert(value <= 1);
    bits_[idx] = value;
  }

  void reset_all_ones() { bits_.assign(bits_.size(), 1); }

  bool operator==(const PredictionTable&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace hcsim
