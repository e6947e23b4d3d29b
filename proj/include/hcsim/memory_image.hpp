#pragma once

#include <cstdint>
#include <unordered_map>

#include "hcsim/geometry.hpp"

namespace hcsim {

// Main-memory contents at block granularity, tracked as the id of the last
// write landed on each block. Blocks never written read as 0; a stored 0 and
// an absent entry are the same state, so zero stores erase.
class MemoryImage {
 public:
  std::uint64_t read(std::uint64_t block_addr) const {
    auto it = tags_.find(block_addr);
    return it == tags_.end() ? 0 : it->second;
  }

  void write(std::uint64_t block_addr, std::uint64_t content) {
    if (content == 0)
      tags_.erase(block_addr);
    else
      tags_[block_addr] = content;
  }

  std::size_t blocks() const { return tags_.size(); }

  bool operator==(const MemoryImage& o) const { return tags_ == o.tags_; }

 private:
  std::unordered_map<std::uint64_t, std::uint64_t> tags_;
};

}  // namespace hcsim
