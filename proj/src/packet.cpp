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

#include "v6edge/packet.hpp"

#include <stdexcept>
#include <string>

namespace v6edge {

const char* attack_vector_name(AttackVector v) {
  switch (v) {
    case AttackVector::ExtSpoof: return "ext_spoof";
    case AttackVector::IntSpoof: return "int_spoof";
    case AttackVector::ExtFlood: return "ext_flood";
    case AttackVector::IntFlood: return "int_flood";
  }
  return "?";
}

std::optional<AttackVector> attack_vector_from_name(std::string_view name) {
  if (name == "ext_spoof") return AttackVector::ExtSpoof;
  if (name == "int_spoof") return AttackVector::IntSpoof;
  if (name == "ext_flood") return AttackVector::ExtFlood;
  if (name == "int_flood") return AttackVector::IntFlood;
  return std::nullopt;
}

bool is_dad_ns(const PacketView& pkt) {
  const auto* icmp = std::get_if<Icmpv6Header>(&pkt.l4());
  return icmp != nullptr && icmp->type == kIcmpv6NeighborSolicitation &&
         pkt.src().is_unspecified() && icmp->ns_target.has_value();
}

Ipv6Addr registered_address(const PacketView& pkt) {
  if (!is_dad_ns(pkt)) {
    throw std::logic_error("registered_address() called on a non-DAD packet");
  }
  return *std::get<Icmpv6Header>(pkt.l4()).ns_target;
}

void validate_packet(const Packet& pkt) {
  if (const auto* icmp = std::get_if<Icmpv6Header>(&pkt.l4)) {
    bool is_ns = icmp->type == kIcmpv6NeighborSolicitation;
    if (is_ns && !icmp->ns_target.has_value()) {
      throw std::invalid_argument("neighbor solicitation without ns_target");
    }
    if (!is_ns && icmp->ns_target.has_value()) {
      throw std::invalid_argument("ns_target on non-NS ICMPv6 type " +
                                  std::to_string(icmp->type));
    }
  }
}

}  // namespace v6edge
