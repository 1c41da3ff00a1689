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

#ifndef V6EDGE_SCENARIOS_HPP
#define V6EDGE_SCENARIOS_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "v6edge/packet.hpp"
#include "v6edge/pipeline.hpp"

namespace v6edge {

struct ExternalHost {
  Ipv6Addr addr;
  size_t allocation;  // index into TopologySpec::allocations (LPM row)
  uint16_t port;      // upstream-facing ingress port of its ISP
  uint8_t hop_limit;  // benign arrival HL at the edge
};

struct InternalHost {
  Ipv6Addr addr;
  uint16_t port;
  bool dad_at_start;
  bool sends_benign;  // false for the dedicated flood attacker and the server
};

/// Deterministic evaluation topology: five ISP-level /32 prefixes, each with
/// a nested /48 → /56 → /64 allocation chain, 100 external hosts spread five
/// per allocation, and a small internal segment behind the edge.
struct TopologySpec {
  uint64_t seed = 0;
  std::vector<PrefixEntry> allocations;     // HL bands, one row per prefix
  std::vector<ExternalHost> external_hosts; // h1..h100
  std::vector<InternalHost> internal_hosts;
  Ipv6Addr server_addr;
  uint16_t server_port = 0;
  size_t server_index = 0;        // into internal_hosts
  size_t flood_attacker_index = 0;
  uint16_t int_spoof_port = 0;    // internal port that never DADs
  std::map<uint16_t, PortRole> port_roles;
};

TopologySpec build_topology(uint64_t seed);

/// One row of the 15-scenario suite: which vectors are active plus the
/// deterministic rates driving the generator.
struct ScenarioSpec {
  int id = 0;
  std::vector<AttackVector> vectors;
  uint64_t duration_ns = 10'000'000'000;
  uint64_t attack_start_ns = 10'000'000;
  uint64_t rng_seed = 0;

  // benign load
  uint32_t benign_ext_syn_pps = 10;      // per external host
  uint32_t benign_int_syn_pps = 10;      // per internal host
  uint32_t benign_nd_keepalive_pps = 1;  // unicast NUD probes per host

  // attack load
  uint32_t ext_flood_pps = 3000;          // one allocation, all five hosts
  uint32_t int_flood_unicast_pps = 1000;  // attacker -> server
  uint32_t int_flood_multicast_pps = 1000;  // attacker -> ff02::1
  uint32_t ext_spoof_pps = 500;
  uint32_t int_spoof_pps = 500;

  bool has(AttackVector v) const;
};

/// Generator knobs shared by all 15 scenarios (config [scenarios] section).
struct ScenarioDefaults {
  uint64_t master_seed = 42;
  uint32_t duration_windows = 10;
  uint64_t attack_start_ns = 10'000'000;
  uint32_t benign_ext_syn_pps = 10;
  uint32_t benign_int_syn_pps = 10;
  uint32_t benign_nd_keepalive_pps = 1;
  uint32_t ext_flood_pps = 3000;
  uint32_t int_flood_unicast_pps = 1000;
  uint32_t int_flood_multicast_pps = 1000;
  uint32_t ext_spoof_pps = 500;
  uint32_t int_spoof_pps = 500;
  // Per-scenario vector toggles (config `vectors_<id>`); unlisted ids keep
  // the fixed suite layout.
  std::map<int, std::vector<AttackVector>> vector_overrides;
};

/// The fixed id→vectors suite: 1–4 single-vector, 5–10 dual, 11–15 multi.
std::vector<ScenarioSpec> list_scenarios(const ScenarioDefaults& defaults,
                                         uint64_t window_ns);

/// Builds the labeled, timestamp-sorted packet stream for one scenario and
/// runs the label-soundness / sub-threshold self-check before returning.
/// Byte-identical output for identical (scenario, topo, config).
std::vector<Packet> generate(const ScenarioSpec& scenario,
                             const TopologySpec& topo,
                             const PipelineConfig& config);

/// Label soundness + benign sub-threshold audit; throws std::logic_error
/// with a description of the first violated guarantee.
void verify_stream(const std::vector<Packet>& stream, const TopologySpec& topo,
                   const PipelineConfig& config);

/// Pipeline configuration implied by a topology (port roles + HL bands),
/// with thresholds/sketch parameters taken from `base`.
PipelineConfig derive_pipeline_config(const TopologySpec& topo,
                                      const PipelineConfig& base);

/// ff02::1:ffXX:XXXX solicited-node multicast group of an address.
Ipv6Addr solicited_node_multicast(const Ipv6Addr& target);

}  // namespace v6edge

#endif  // V6EDGE_SCENARIOS_HPP
