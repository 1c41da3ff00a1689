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

#include "v6edge/lpm_table.hpp"

#include <stdexcept>

namespace v6edge {

bool PrefixEntry::matches(const Ipv6Addr& addr) const {
  unsigned full_bytes = length / 8;
  for (unsigned i = 0; i < full_bytes; ++i) {
    if (addr.bytes[i] != prefix.bytes[i]) return false;
  }
  unsigned rem = length % 8;
  if (rem != 0) {
    uint8_t mask = static_cast<uint8_t>(0xFF << (8 - rem));
    if ((addr.bytes[full_bytes] & mask) != (prefix.bytes[full_bytes] & mask)) {
      return false;
    }
  }
  return true;
}

std::string PrefixEntry::to_string() const {
  return prefix.to_string() + "/" + std::to_string(length) + " [" +
         std::to_string(hl_min) + "," + std::to_string(hl_max) + "]";
}

void validate_prefix_entry(const PrefixEntry& entry) {
  if (entry.length > 128) {
    throw std::invalid_argument("prefix length " + std::to_string(entry.length) +
                                " exceeds 128");
  }
  if (entry.hl_min > entry.hl_max) {
    throw std::invalid_argument("inverted HL band in " + entry.to_string());
  }
  for (unsigned bit = entry.length; bit < 128; ++bit) {
    if (entry.prefix.bit(bit)) {
      throw std::invalid_argument("host bits set in " + entry.prefix.to_string() +
                                  "/" + std::to_string(entry.length));
    }
  }
}

LpmTable::LpmTable() { new_node(); }  // root

int32_t LpmTable::new_node() {
  nodes_.emplace_back();
  return static_cast<int32_t>(nodes_.size() - 1);
}

bool LpmTable::insert(const PrefixEntry& entry) {
  validate_prefix_entry(entry);
  int32_t node = 0;
  for (unsigned bit = 0; bit < entry.length; ++bit) {
    int b = entry.prefix.bit(bit) ? 1 : 0;
    if (nodes_[node].child[b] < 0) {
      int32_t fresh = new_node();
      nodes_[node].child[b] = fresh;
    }
    node = nodes_[node].child[b];
  }
  if (nodes_[node].entry >= 0) {
    entries_[nodes_[node].entry] = entry;
    return true;
  }
  entries_.push_back(entry);
  nodes_[node].entry = static_cast<int32_t>(entries_.size() - 1);
  ++count_;
  return false;
}

std::optional<PrefixEntry> LpmTable::lookup(const Ipv6Addr& addr) const {
  int32_t best = -1;
  int32_t node = 0;
  for (unsigned bit = 0; bit <= 128; ++bit) {
    if (nodes_[node].entry >= 0) best = nodes_[node].entry;
    if (bit == 128) break;
    int32_t next = nodes_[node].child[addr.bit(bit) ? 1 : 0];
    if (next < 0) break;
    node = next;
  }
  if (best < 0) return std::nullopt;
  return entries_[best];
}

LpmTable LpmTable::load_from_config(const std::vector<PrefixEntry>& rows) {
  LpmTable table;
  for (const PrefixEntry& row : rows) {
    if (table.insert(row)) {
      throw std::invalid_argument("duplicate prefix row " + row.prefix.to_string() +
                                  "/" + std::to_string(row.length));
    }
  }
  return table;
}

}  // namespace v6edge
