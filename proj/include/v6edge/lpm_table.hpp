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

#ifndef V6EDGE_LPM_TABLE_HPP
#define V6EDGE_LPM_TABLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "v6edge/ipv6_addr.hpp"

namespace v6edge {

/// Source-prefix row mapping a prefix to its plausible arrival Hop Limit band.
struct PrefixEntry {
  Ipv6Addr prefix;       // host bits must be zero
  uint8_t length = 0;    // 0..128
  uint8_t hl_min = 0;
  uint8_t hl_max = 0;

  bool operator==(const PrefixEntry&) const = default;
  bool matches(const Ipv6Addr& addr) const;
  std::string to_string() const;  // "prefix/len [min,max]"
};

/// Throws std::invalid_argument if length > 128, the band is inverted, or
/// host bits beyond `length` are set.
void validate_prefix_entry(const PrefixEntry& entry);

/// Longest-prefix-match table over IPv6 source prefixes, backed by a binary
/// trie on address bits. Lookups are read-only; mutation requires exclusive
/// access (the pipeline only ever looks up).
class LpmTable {
 public:
  LpmTable();

  /// Inserts or replaces the band for (prefix, length).
  /// Returns true if an existing entry was replaced.
  bool insert(const PrefixEntry& entry);

  /// Entry with the greatest length whose prefix matches addr, if any.
  std::optional<PrefixEntry> lookup(const Ipv6Addr& addr) const;

  size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  const std::vector<PrefixEntry>& entries() const { return entries_; }

  /// Builds a table from config rows. Duplicate (prefix, length) keys and
  /// invalid entries are load errors (std::invalid_argument).
  static LpmTable load_from_config(const std::vector<PrefixEntry>& rows);

 private:
  struct Node {
    int32_t child[2] = {-1, -1};
    int32_t entry = -1;  // index into entries_, -1 if none
  };

  int32_t new_node();

  std::vector<Node> nodes_;
  std::vector<PrefixEntry> entries_;
  size_t count_ = 0;
};

}  // namespace v6edge

#endif  // V6EDGE_LPM_TABLE_HPP
