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

#include "v6edge/binding_registry.hpp"

#include <stdexcept>

namespace v6edge {

BindingTable::BindingTable(uint32_t cap_k) : cap_k_(cap_k) {
  if (cap_k == 0) {
    throw std::invalid_argument("binding cap k must be positive");
  }
}

BindResult BindingTable::try_register(const Ipv6Addr& addr, uint16_t port,
                                      uint64_t now_ns) {
  auto it = bindings_.find(addr);
  if (it != bindings_.end()) {
    return {BindOutcome::AlreadyBound, it->second.port};
  }
  uint32_t& count = addr_count_[port];
  if (count >= cap_k_) {
    return {BindOutcome::CapExceeded, std::nullopt};
  }
  bindings_.emplace(addr, Binding{port, now_ns});
  ++count;
  return {BindOutcome::Registered, std::nullopt};
}

BindingCheck BindingTable::check(const Ipv6Addr& addr, uint16_t port) const {
  auto it = bindings_.find(addr);
  if (it == bindings_.end()) return BindingCheck::Unknown;
  return it->second.port == port ? BindingCheck::Match : BindingCheck::Mismatch;
}

std::map<uint16_t, PortUtilization> BindingTable::port_utilization() const {
  std::map<uint16_t, PortUtilization> out;
  for (const auto& [port, count] : addr_count_) {
    out[port] = PortUtilization{count, cap_k_};
  }
  return out;
}

std::vector<BindingRecord> BindingTable::dump() const {
  std::vector<BindingRecord> out;
  out.reserve(bindings_.size());
  for (const auto& [addr, binding] : bindings_) {
    out.push_back({addr, binding.port, binding.registered_at_ns});
  }
  return out;
}

}  // namespace v6edge
