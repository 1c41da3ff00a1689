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

#ifndef V6EDGE_PACKET_HPP
#define V6EDGE_PACKET_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "v6edge/ipv6_addr.hpp"

namespace v6edge {

enum class PortRole : uint8_t { Internal, External };

enum class AttackVector : uint8_t { ExtSpoof, IntSpoof, ExtFlood, IntFlood };

/// Wire names: "ext_spoof", "int_spoof", "ext_flood", "int_flood".
const char* attack_vector_name(AttackVector v);
std::optional<AttackVector> attack_vector_from_name(std::string_view name);

// ICMPv6 message types this project cares about.
inline constexpr uint8_t kIcmpv6NeighborSolicitation = 135;
inline constexpr uint8_t kIcmpv6NeighborAdvertisement = 136;
inline constexpr uint8_t kIcmpv6EchoRequest = 128;

struct TcpHeader {
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  bool syn = false;
  bool operator==(const TcpHeader&) const = default;
};

struct UdpHeader {
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  bool operator==(const UdpHeader&) const = default;
};

struct Icmpv6Header {
  uint8_t type = 0;
  // Target Address of a Neighbor Solicitation; present iff type == 135.
  std::optional<Ipv6Addr> ns_target;
  bool operator==(const Icmpv6Header&) const = default;
};

struct OtherL4 {
  bool operator==(const OtherL4&) const = default;
};

using L4 = std::variant<TcpHeader, UdpHeader, Icmpv6Header, OtherL4>;

/// Evaluation-only label. Benign when vector is absent.
struct GroundTruth {
  std::optional<AttackVector> vector;
  bool is_attack() const { return vector.has_value(); }
  bool operator==(const GroundTruth&) const = default;
};

/// Parsed IPv6 frame view plus harness metadata. Timestamps are logical
/// nanoseconds relative to the stream epoch, never wall clock.
struct Packet {
  uint64_t ts_ns = 0;
  uint16_t ingress_port = 0;
  Ipv6Addr src;
  Ipv6Addr dst;
  uint8_t hop_limit = 0;
  L4 l4 = OtherL4{};
  // Absent on unlabeled replay traces; never visible to the pipeline.
  std::optional<GroundTruth> truth;

  bool operator==(const Packet&) const = default;
};

/// Truth-stripped view handed to the defense pipeline. The pipeline can only
/// see what a data plane would see; ground-truth isolation holds by
/// construction because this type has no truth accessor.
class PacketView {
 public:
  explicit PacketView(const Packet& pkt) : pkt_(&pkt) {}

  uint64_t ts_ns() const { return pkt_->ts_ns; }
  uint16_t ingress_port() const { return pkt_->ingress_port; }
  const Ipv6Addr& src() const { return pkt_->src; }
  const Ipv6Addr& dst() const { return pkt_->dst; }
  uint8_t hop_limit() const { return pkt_->hop_limit; }
  const L4& l4() const { return pkt_->l4; }

 private:
  const Packet* pkt_;
};

/// Direction-sensitive src‖dst flow identifier (256 bits).
struct FlowKey {
  Ipv6Addr src;
  Ipv6Addr dst;

  bool operator==(const FlowKey&) const = default;
  auto operator<=>(const FlowKey&) const = default;

  std::array<uint8_t, 32> bytes() const {
    std::array<uint8_t, 32> out;
    for (size_t i = 0; i < 16; ++i) out[i] = src.bytes[i];
    for (size_t i = 0; i < 16; ++i) out[16 + i] = dst.bytes[i];
    return out;
  }
};

/// True iff the packet is a DAD Neighbor Solicitation: ICMPv6 type 135 with
/// the unspecified source. The registered address is the NS target, not the
/// packet source (a DAD probe always carries src ::).
bool is_dad_ns(const PacketView& pkt);
inline bool is_dad_ns(const Packet& pkt) { return is_dad_ns(PacketView(pkt)); }

/// Address under duplicate-address detection. Precondition: is_dad_ns(pkt);
/// throws std::logic_error otherwise.
Ipv6Addr registered_address(const PacketView& pkt);
inline Ipv6Addr registered_address(const Packet& pkt) {
  return registered_address(PacketView(pkt));
}

inline FlowKey flow_key(const PacketView& pkt) {
  return FlowKey{pkt.src(), pkt.dst()};
}
inline FlowKey flow_key(const Packet& pkt) { return flow_key(PacketView(pkt)); }

/// Structural invariant check (hop limit range is enforced by the type; this
/// validates the ns_target/type coupling and truth shape). Throws
/// std::invalid_argument on violation.
void validate_packet(const Packet& pkt);

}  // namespace v6edge

#endif  // V6EDGE_PACKET_HPP
