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

#ifndef V6EDGE_COUNT_MIN_SKETCH_HPP
#define V6EDGE_COUNT_MIN_SKETCH_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "v6edge/hash.hpp"

namespace v6edge {

struct SketchParams {
  uint32_t width = 4096;  // counters per row, power of two
  std::array<uint64_t, 3> row_seeds{0x9E3779B185EBCA87ULL, 0xC2B2AE3D27D4EB4FULL,
                                    0x165667B19E3779F9ULL};
};

/// Count-Min Sketch with a fixed depth of 3 hashed counter rows.
/// estimate() never undercounts; counters saturate instead of wrapping.
/// Single-writer: the owning pipeline mutates it exclusively.
class CountMinSketch {
 public:
  static constexpr int kDepth = 3;

  explicit CountMinSketch(const SketchParams& params)
      : width_(params.width), seeds_(params.row_seeds) {
    if (width_ == 0 || (width_ & (width_ - 1)) != 0) {
      throw std::invalid_argument("CMS width must be a power of two");
    }
    if (seeds_[0] == seeds_[1] || seeds_[1] == seeds_[2] || seeds_[0] == seeds_[2]) {
      throw std::invalid_argument("CMS row seeds must be distinct");
    }
    counters_.assign(static_cast<size_t>(kDepth) * width_, 0);
  }

  void increment(std::span<const uint8_t> key) {
    for (int row = 0; row < kDepth; ++row) {
      uint32_t& c = counters_[cell(row, key)];
      if (c != std::numeric_limits<uint32_t>::max()) ++c;
    }
  }

  /// Minimum over the three indexed counters.
  uint32_t estimate(std::span<const uint8_t> key) const {
    uint32_t best = std::numeric_limits<uint32_t>::max();
    for (int row = 0; row < kDepth; ++row) {
      uint32_t c = counters_[cell(row, key)];
      if (c < best) best = c;
    }
    return best;
  }

  /// Zeroes every counter and advances the window generation.
  void reset() {
    counters_.assign(counters_.size(), 0);
    ++generation_;
  }

  uint64_t generation() const { return generation_; }
  uint32_t width() const { return width_; }

  /// Sum of one row's counters == number of increments since last reset.
  uint64_t row_sum(int row) const {
    uint64_t sum = 0;
    for (uint32_t i = 0; i < width_; ++i) {
      sum += counters_[static_cast<size_t>(row) * width_ + i];
    }
    return sum;
  }

 private:
  size_t cell(int row, std::span<const uint8_t> key) const {
    uint32_t idx = static_cast<uint32_t>(hash64(seeds_[row], key)) & (width_ - 1);
    return static_cast<size_t>(row) * width_ + idx;
  }

  uint32_t width_;
  std::array<uint64_t, 3> seeds_;
  std::vector<uint32_t> counters_;
  uint64_t generation_ = 0;
};

}  // namespace v6edge

#endif  // V6EDGE_COUNT_MIN_SKETCH_HPP
