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

#ifndef V6EDGE_HASH_HPP
#define V6EDGE_HASH_HPP

#include <cstddef>
#include <cstdint>
#include <span>

namespace v6edge {

// Seeded 64-bit XXH64. Bytes are consumed as little-endian words through
// explicit shifts, so the result is identical on every platform and run.
// All sketch/bloom/registry indexing in this project goes through here.
namespace detail {

inline constexpr uint64_t kXxPrime1 = 0x9E3779B185EBCA87ULL;
inline constexpr uint64_t kXxPrime2 = 0xC2B2AE3D27D4EB4FULL;
inline constexpr uint64_t kXxPrime3 = 0x165667B19E3779F9ULL;
inline constexpr uint64_t kXxPrime4 = 0x85EBCA77C2B2AE63ULL;
inline constexpr uint64_t kXxPrime5 = 0x27D4EB2F165667C5ULL;

inline uint64_t load_le64(const uint8_t* p) {
  return static_cast<uint64_t>(p[0]) | static_cast<uint64_t>(p[1]) << 8 |
         static_cast<uint64_t>(p[2]) << 16 | static_cast<uint64_t>(p[3]) << 24 |
         static_cast<uint64_t>(p[4]) << 32 | static_cast<uint64_t>(p[5]) << 40 |
         static_cast<uint64_t>(p[6]) << 48 | static_cast<uint64_t>(p[7]) << 56;
}

inline uint32_t load_le32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
         static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

inline uint64_t rotl64(uint64_t x, int r) {
  return (x << r) | (x >> (64 - r));
}

inline uint64_t xx_round(uint64_t acc, uint64_t input) {
  acc += input * kXxPrime2;
  acc = rotl64(acc, 31);
  return acc * kXxPrime1;
}

inline uint64_t xx_merge_round(uint64_t acc, uint64_t val) {
  acc ^= xx_round(0, val);
  return acc * kXxPrime1 + kXxPrime4;
}

}  // namespace detail

inline uint64_t hash64(uint64_t seed, std::span<const uint8_t> key) {
  using namespace detail;
  const uint8_t* p = key.data();
  const size_t len = key.size();
  const uint8_t* const end = p + len;
  uint64_t h;

  if (len >= 32) {
    const uint8_t* const limit = end - 32;
    uint64_t v1 = seed + kXxPrime1 + kXxPrime2;
    uint64_t v2 = seed + kXxPrime2;
    uint64_t v3 = seed;
    uint64_t v4 = seed - kXxPrime1;
    do {
      v1 = xx_round(v1, load_le64(p));
      v2 = xx_round(v2, load_le64(p + 8));
      v3 = xx_round(v3, load_le64(p + 16));
      v4 = xx_round(v4, load_le64(p + 24));
      p += 32;
    } while (p <= limit);
    h = rotl64(v1, 1) + rotl64(v2, 7) + rotl64(v3, 12) + rotl64(v4, 18);
    h = xx_merge_round(h, v1);
    h = xx_merge_round(h, v2);
    h = xx_merge_round(h, v3);
    h = xx_merge_round(h, v4);
  } else {
    h = seed + kXxPrime5;
  }

  h += static_cast<uint64_t>(len);

  while (p + 8 <= end) {
    h ^= xx_round(0, load_le64(p));
    h = rotl64(h, 27) * kXxPrime1 + kXxPrime4;
    p += 8;
  }
  if (p + 4 <= end) {
    h ^= static_cast<uint64_t>(load_le32(p)) * kXxPrime1;
    h = rotl64(h, 23) * kXxPrime2 + kXxPrime3;
    p += 4;
  }
  while (p < end) {
    h ^= static_cast<uint64_t>(*p) * kXxPrime5;
    h = rotl64(h, 11) * kXxPrime1;
    ++p;
  }

  h ^= h >> 33;
  h *= kXxPrime2;
  h ^= h >> 29;
  h *= kXxPrime3;
  h ^= h >> 32;
  return h;
}

// Deterministic PRNG for seed derivation and trace synthesis. std::mt19937
// plus the standard distributions is not bit-stable across library
// implementations; traces must be byte-identical everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform-enough value in [0, n). Modulo bias is irrelevant at these sizes.
  uint64_t bounded(uint64_t n) { return next() % n; }

  // Inclusive integer range [lo, hi].
  uint64_t range(uint64_t lo, uint64_t hi) { return lo + bounded(hi - lo + 1); }

 private:
  uint64_t state_;
};

// Stable per-stream seed derivation: mix a master seed with a small tag.
inline uint64_t derive_seed(uint64_t master, uint64_t tag) {
  SplitMix64 mix(master ^ (tag * 0x9E3779B97F4A7C15ULL + 0x165667B19E3779F9ULL));
  return mix.next();
}

}  // namespace v6edge

#endif  // V6EDGE_HASH_HPP
