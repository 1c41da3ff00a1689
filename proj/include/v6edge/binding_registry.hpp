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

#ifndef V6EDGE_BINDING_REGISTRY_HPP
#define V6EDGE_BINDING_REGISTRY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "v6edge/ipv6_addr.hpp"

namespace v6edge {

enum class BindOutcome : uint8_t { Registered, CapExceeded, AlreadyBound };

struct BindResult {
  BindOutcome outcome;
  // Set only for AlreadyBound: the port the address is bound to.
  std::optional<uint16_t> existing_port;
};

enum class BindingCheck : uint8_t { Match, Mismatch, Unknown };

struct BindingRecord {
  Ipv6Addr addr;
  uint16_t port;
  uint64_t registered_at_ns;
};

struct PortUtilization {
  uint32_t count = 0;
  uint32_t cap = 0;
};

/// Address→port binding map with a per-port learned-address cap. Bindings
/// are learned once and never rebound or aged out; first writer wins.
/// Single-writer structure owned by the pipeline.
class BindingTable {
 public:
  explicit BindingTable(uint32_t cap_k);

  /// Registration attempt for a DAD-observed address (the caller guarantees
  /// the DAD/NS context). No outcome ever mutates an existing binding.
  BindResult try_register(const Ipv6Addr& addr, uint16_t port, uint64_t now_ns);

  BindingCheck check(const Ipv6Addr& addr, uint16_t port) const;

  uint32_t cap() const { return cap_k_; }
  size_t size() const { return bindings_.size(); }

  /// Read-only snapshot: per-port learned-address counts against the cap.
  std::map<uint16_t, PortUtilization> port_utilization() const;

  /// All bindings in byte-wise address order (deterministic report dump).
  std::vector<BindingRecord> dump() const;

 private:
  struct Binding {
    uint16_t port;
    uint64_t registered_at_ns;
  };

  uint32_t cap_k_;
  std::map<Ipv6Addr, Binding> bindings_;
  std::map<uint16_t, uint32_t> addr_count_;
};

}  // namespace v6edge

#endif  // V6EDGE_BINDING_REGISTRY_HPP
