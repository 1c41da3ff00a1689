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

#ifndef V6EDGE_IPV6_ADDR_HPP
#define V6EDGE_IPV6_ADDR_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace v6edge {

/// 128-bit IPv6 address in canonical big-endian octet order.
/// Ordering and equality are byte-wise; text form follows RFC 4291 for
/// parsing and RFC 5952 (lowercase, longest-run :: compression) for output.
struct Ipv6Addr {
  std::array<uint8_t, 16> bytes{};

  auto operator<=>(const Ipv6Addr&) const = default;

  /// Parses textual IPv6 (full, ::-compressed, and dotted-quad tails).
  /// Throws std::invalid_argument on malformed input.
  static Ipv6Addr parse(std::string_view text);

  static std::optional<Ipv6Addr> try_parse(std::string_view text);

  std::string to_string() const;

  std::span<const uint8_t, 16> as_span() const {
    return std::span<const uint8_t, 16>(bytes);
  }

  /// Bit i (0 = most significant bit of byte 0).
  bool bit(unsigned i) const {
    return (bytes[i >> 3] >> (7 - (i & 7))) & 1;
  }

  bool is_unspecified() const {
    for (uint8_t b : bytes) {
      if (b != 0) return false;
    }
    return true;
  }
};

/// ff00::/8 membership: true iff the first octet equals 0xFF.
inline bool is_multicast(const Ipv6Addr& addr) {
  return addr.bytes[0] == 0xFF;
}

}  // namespace v6edge

#endif  // V6EDGE_IPV6_ADDR_HPP
