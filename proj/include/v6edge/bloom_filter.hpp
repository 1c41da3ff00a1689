/* Copyright 2026-present the v6edge authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef V6EDGE_BLOOM_FILTER_HPP
#define V6EDGE_BLOOM_FILTER_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "v6edge/hash.hpp"

namespace v6edge {

struct BloomParams {
  uint32_t bits = 65536;  // per bitmap, power of two
  std::array<uint64_t, 3> seeds{0x27D4EB2F165667C5ULL, 0x85EBCA77C2B2AE63ULL,
                                0xD6E8FEB86659FD93ULL};
};

/// Set-membership gate built from 3 independent bitmaps, one hash each.
/// check() is true iff all three bits are set: false positives possible,
/// false negatives impossible.
class BloomFilter {
 public:
  explicit BloomFilter(const BloomParams& params)
      : bits_(params.bits), seeds_(params.seeds) {
    if (bits_ == 0 || (bits_ & (bits_ - 1)) != 0) {
      throw std::invalid_argument("bloom bitmap size must be a power of two");
    }
    for (auto& bitmap : bitmaps_) {
      bitmap.assign((bits_ + 63) / 64, 0);
    }
  }

  void insert(std::span<const uint8_t> key) {
    for (int i = 0; i < 3; ++i) {
      uint32_t bit = index(i, key);
      bitmaps_[i][bit >> 6] |= uint64_t{1} << (bit & 63);
    }
  }

  bool check(std::span<const uint8_t> key) const {
    for (int i = 0; i < 3; ++i) {
      uint32_t bit = index(i, key);
      if ((bitmaps_[i][bit >> 6] >> (bit & 63) & 1) == 0) return false;
    }
    return true;
  }

 private:
  uint32_t index(int bitmap, std::span<const uint8_t> key) const {
    return static_cast<uint32_t>(hash64(seeds_[bitmap], key)) & (bits_ - 1);
  }

  uint32_t bits_;
  std::array<uint64_t, 3> seeds_;
  std::array<std::vector<uint64_t>, 3> bitmaps_;
};

}  // namespace v6edge

#endif  // V6EDGE_BLOOM_FILTER_HPP
