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

#include "v6edge/scenarios.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include "v6edge/hash.hpp"
#include "v6edge/lpm_table.hpp"

namespace v6edge {

namespace {

constexpr size_t kIspCount = 5;
constexpr size_t kAllocsPerIsp = 4;  // nested /32 -> /48 -> /56 -> /64 chain
constexpr size_t kHostsPerAlloc = 5;
constexpr size_t kBenignInternalHosts = 8;

constexpr uint16_t kFirstExternalPort = 1;    // ports 1..5, one per ISP
constexpr uint16_t kFirstInternalPort = 101;  // benign hosts on 101..108
constexpr uint16_t kServerPort = 109;
constexpr uint16_t kFloodAttackerPort = 110;
constexpr uint16_t kIntSpoofPort = 111;

uint64_t interval_ns(uint32_t pps) { return 1'000'000'000ULL / pps; }

Ipv6Addr internal_addr(uint16_t tail) {
  Ipv6Addr a;
  a.bytes[0] = 0xFD;
  a.bytes[14] = static_cast<uint8_t>(tail >> 8);
  a.bytes[15] = static_cast<uint8_t>(tail & 0xFF);
  return a;
}

Ipv6Addr all_nodes_multicast() {
  Ipv6Addr a;
  a.bytes[0] = 0xFF;
  a.bytes[1] = 0x02;
  a.bytes[15] = 0x01;
  return a;
}

struct BenignBudget {
  // (window index, key) -> benign packet count, for the sub-threshold audit.
  std::map<std::tuple<uint64_t, Ipv6Addr, uint8_t>, uint64_t> per_prefix;
  std::map<std::tuple<uint64_t, Ipv6Addr, Ipv6Addr>, uint64_t> per_flow;
};

}  // namespace

Ipv6Addr solicited_node_multicast(const Ipv6Addr& target) {
  Ipv6Addr g;
  g.bytes[0] = 0xFF;
  g.bytes[1] = 0x02;
  g.bytes[11] = 0x01;
  g.bytes[12] = 0xFF;
  g.bytes[13] = target.bytes[13];
  g.bytes[14] = target.bytes[14];
  g.bytes[15] = target.bytes[15];
  return g;
}

bool ScenarioSpec::has(AttackVector v) const {
  return std::find(vectors.begin(), vectors.end(), v) != vectors.end();
}

TopologySpec build_topology(uint64_t seed) {
  TopologySpec topo;
  topo.seed = seed;
  SplitMix64 rng(derive_seed(seed, 1));

  // Internal segment (fd00::/64): eight benign hosts, the service target,
  // one dedicated flooding host, and one silent port for the spoofer.
  for (size_t i = 0; i < kBenignInternalHosts; ++i) {
    topo.internal_hosts.push_back(
        {internal_addr(static_cast<uint16_t>(0x10 + i)),
         static_cast<uint16_t>(kFirstInternalPort + i), true, true});
  }
  topo.server_index = topo.internal_hosts.size();
  topo.server_addr = internal_addr(0x100);
  topo.server_port = kServerPort;
  topo.internal_hosts.push_back({topo.server_addr, kServerPort, true, false});
  topo.flood_attacker_index = topo.internal_hosts.size();
  topo.internal_hosts.push_back(
      {internal_addr(0xA1), kFloodAttackerPort, true, false});
  topo.int_spoof_port = kIntSpoofPort;

  for (size_t i = 0; i < kIspCount; ++i) {
    topo.port_roles[static_cast<uint16_t>(kFirstExternalPort + i)] =
        PortRole::External;
  }
  for (const InternalHost& h : topo.internal_hosts) {
    topo.port_roles[h.port] = PortRole::Internal;
  }
  topo.port_roles[kIntSpoofPort] = PortRole::Internal;

  // Heterogeneous external plan: per ISP a /32 with one nested /48, /56 and
  // /64, five hosts homed directly under each allocation level.
  struct AllocKey {
    Ipv6Addr prefix;
    uint8_t length;
  };
  std::vector<AllocKey> allocs;
  for (size_t isp = 0; isp < kIspCount; ++isp) {
    Ipv6Addr p32;
    p32.bytes[0] = 0x2A;
    p32.bytes[1] = static_cast<uint8_t>(isp);
    p32.bytes[2] = static_cast<uint8_t>(rng.next());
    p32.bytes[3] = static_cast<uint8_t>(rng.next());
    Ipv6Addr p48 = p32;
    p48.bytes[4] = static_cast<uint8_t>(rng.next());
    p48.bytes[5] = static_cast<uint8_t>(rng.next());
    Ipv6Addr p56 = p48;
    p56.bytes[6] = static_cast<uint8_t>(rng.next());
    Ipv6Addr p64 = p56;
    p64.bytes[7] = static_cast<uint8_t>(rng.next());
    allocs.push_back({p32, 32});
    allocs.push_back({p48, 48});
    allocs.push_back({p56, 56});
    allocs.push_back({p64, 64});
  }

  // Hosts: random interface bits, kept out of the child allocation so the
  // longest-prefix match lands on the host's own level.
  std::set<Ipv6Addr> used;
  static constexpr uint8_t kInitialHl[3] = {64, 128, 255};
  for (size_t isp = 0; isp < kIspCount; ++isp) {
    for (size_t level = 0; level < kAllocsPerIsp; ++level) {
      const size_t alloc_idx = isp * kAllocsPerIsp + level;
      const AllocKey& alloc = allocs[alloc_idx];
      const AllocKey* child =
          level + 1 < kAllocsPerIsp ? &allocs[alloc_idx + 1] : nullptr;
      for (size_t j = 0; j < kHostsPerAlloc; ++j) {
        Ipv6Addr addr;
        do {
          addr = alloc.prefix;
          for (size_t b = alloc.length / 8; b < 16; ++b) {
            addr.bytes[b] = static_cast<uint8_t>(rng.next());
          }
          if (child != nullptr) {
            // Keep the host outside the child allocation so its longest
            // match stays at this level.
            const size_t lo = alloc.length / 8;
            const size_t hi = child->length / 8;
            bool inside_child = true;
            for (size_t b = lo; b < hi; ++b) {
              if (addr.bytes[b] != child->prefix.bytes[b]) {
                inside_child = false;
                break;
              }
            }
            if (inside_child) {
              addr.bytes[lo] = static_cast<uint8_t>(child->prefix.bytes[lo] + 1 +
                                                    rng.bounded(255));
            }
          }
        } while (!used.insert(addr).second);
        uint8_t initial = kInitialHl[rng.bounded(3)];
        uint8_t hops = static_cast<uint8_t>(rng.range(3, 20));
        uint8_t hl = static_cast<uint8_t>(initial - hops);
        topo.external_hosts.push_back(
            {addr, alloc_idx, static_cast<uint16_t>(kFirstExternalPort + isp),
             hl});
      }
    }
  }

  // Aggregate each allocation's band over its own members: [min-2, max+2].
  for (size_t a = 0; a < allocs.size(); ++a) {
    uint8_t lo = 255, hi = 0;
    for (const ExternalHost& h : topo.external_hosts) {
      if (h.allocation != a) continue;
      lo = std::min(lo, h.hop_limit);
      hi = std::max(hi, h.hop_limit);
    }
    topo.allocations.push_back(
        {allocs[a].prefix, allocs[a].length, static_cast<uint8_t>(lo - 2),
         static_cast<uint8_t>(hi + 2)});
  }
  return topo;
}

std::vector<ScenarioSpec> list_scenarios(const ScenarioDefaults& defaults,
                                         uint64_t window_ns) {
  using enum AttackVector;
  static const std::vector<std::vector<AttackVector>> kSuite = {
      {IntFlood},
      {ExtFlood},
      {IntSpoof},
      {ExtSpoof},
      {ExtFlood, ExtSpoof},
      {ExtFlood, IntSpoof},
      {ExtFlood, IntFlood},
      {ExtSpoof, IntFlood},
      {IntSpoof, IntFlood},
      {IntSpoof, ExtSpoof},
      {IntFlood, ExtFlood, ExtSpoof},
      {IntSpoof, ExtFlood, ExtSpoof},
      {IntFlood, IntSpoof, ExtFlood},
      {IntFlood, IntSpoof, ExtSpoof},
      {IntFlood, IntSpoof, ExtFlood, ExtSpoof},
  };
  std::vector<ScenarioSpec> out;
  for (size_t i = 0; i < kSuite.size(); ++i) {
    ScenarioSpec spec;
    spec.id = static_cast<int>(i + 1);
    auto toggle = defaults.vector_overrides.find(spec.id);
    spec.vectors = toggle != defaults.vector_overrides.end() ? toggle->second
                                                             : kSuite[i];
    spec.duration_ns = defaults.duration_windows * window_ns;
    spec.attack_start_ns = defaults.attack_start_ns;
    spec.rng_seed = derive_seed(defaults.master_seed, 100 + i + 1);
    spec.benign_ext_syn_pps = defaults.benign_ext_syn_pps;
    spec.benign_int_syn_pps = defaults.benign_int_syn_pps;
    spec.benign_nd_keepalive_pps = defaults.benign_nd_keepalive_pps;
    spec.ext_flood_pps = defaults.ext_flood_pps;
    spec.int_flood_unicast_pps = defaults.int_flood_unicast_pps;
    spec.int_flood_multicast_pps = defaults.int_flood_multicast_pps;
    spec.ext_spoof_pps = defaults.ext_spoof_pps;
    spec.int_spoof_pps = defaults.int_spoof_pps;
    out.push_back(std::move(spec));
  }
  return out;
}

PipelineConfig derive_pipeline_config(const TopologySpec& topo,
                                      const PipelineConfig& base) {
  PipelineConfig cfg = base;
  cfg.port_roles = topo.port_roles;
  cfg.hl_bands = topo.allocations;
  return cfg;
}

std::vector<Packet> generate(const ScenarioSpec& scenario,
                             const TopologySpec& topo,
                             const PipelineConfig& config) {
  std::vector<Packet> out;
  SplitMix64 rng(scenario.rng_seed);
  const uint64_t dur = scenario.duration_ns;
  const uint64_t start = scenario.attack_start_ns;

  // Scenario-scoped draws come first so per-packet draws cannot shift them.
  const size_t flood_alloc = rng.bounded(topo.allocations.size());
  const uint8_t spoofer_base_hl = static_cast<uint8_t>(rng.range(3, 60));

  const bool ext_flood = scenario.has(AttackVector::ExtFlood);
  const InternalHost& server = topo.internal_hosts[topo.server_index];
  const InternalHost& flooder = topo.internal_hosts[topo.flood_attacker_index];

  // Startup DAD burst: every internal host registers its address.
  for (size_t i = 0; i < topo.internal_hosts.size(); ++i) {
    const InternalHost& h = topo.internal_hosts[i];
    if (!h.dad_at_start) continue;
    Packet p;
    p.ts_ns = i * 1000;
    p.ingress_port = h.port;
    p.src = Ipv6Addr{};
    p.dst = solicited_node_multicast(h.addr);
    p.hop_limit = 255;
    p.l4 = Icmpv6Header{kIcmpv6NeighborSolicitation, h.addr};
    p.truth = GroundTruth{};
    out.push_back(p);
  }

  // Benign internal load: unicast NUD probes and web SYNs toward the server.
  for (size_t i = 0; i < topo.internal_hosts.size(); ++i) {
    const InternalHost& h = topo.internal_hosts[i];
    if (!h.sends_benign) continue;
    for (uint64_t t = 5'000'000 + i * 1213;
         t < dur; t += interval_ns(scenario.benign_nd_keepalive_pps)) {
      Packet p;
      p.ts_ns = t;
      p.ingress_port = h.port;
      p.src = h.addr;
      p.dst = server.addr;
      p.hop_limit = 255;
      p.l4 = Icmpv6Header{kIcmpv6NeighborSolicitation, server.addr};
      p.truth = GroundTruth{};
      out.push_back(p);
    }
    for (uint64_t t = 6'000'000 + i * 1777;
         t < dur; t += interval_ns(scenario.benign_int_syn_pps)) {
      Packet p;
      p.ts_ns = t;
      p.ingress_port = h.port;
      p.src = h.addr;
      p.dst = server.addr;
      p.hop_limit = 64;
      p.l4 = TcpHeader{static_cast<uint16_t>(49152 + i), 80, true};
      p.truth = GroundTruth{};
      out.push_back(p);
    }
  }

  // Benign external web load. While an external flood is active its
  // allocation stays silent: rate limiting is indiscriminate inside a key,
  // so benign traffic sharing the flooded prefix would be collateral.
  for (size_t h_idx = 0; h_idx < topo.external_hosts.size(); ++h_idx) {
    const ExternalHost& h = topo.external_hosts[h_idx];
    if (ext_flood && h.allocation == flood_alloc) continue;
    for (uint64_t t = 7'000'000 + h_idx * 131;
         t < dur; t += interval_ns(scenario.benign_ext_syn_pps)) {
      Packet p;
      p.ts_ns = t;
      p.ingress_port = h.port;
      p.src = h.addr;
      p.dst = server.addr;
      p.hop_limit = h.hop_limit;
      p.l4 = TcpHeader{static_cast<uint16_t>(40000 + h_idx), 80, true};
      p.truth = GroundTruth{};
      out.push_back(p);
    }
  }

  if (scenario.has(AttackVector::IntFlood)) {
    // Bound source, in-role port: only the flow budget can catch these.
    for (uint64_t t = start;
         t < dur; t += interval_ns(scenario.int_flood_unicast_pps)) {
      Packet p;
      p.ts_ns = t;
      p.ingress_port = flooder.port;
      p.src = flooder.addr;
      p.dst = server.addr;
      p.hop_limit = 64;
      p.l4 = TcpHeader{55555, 80, true};
      p.truth = GroundTruth{AttackVector::IntFlood};
      out.push_back(p);
    }
    for (uint64_t t = start + 271;
         t < dur; t += interval_ns(scenario.int_flood_multicast_pps)) {
      Packet p;
      p.ts_ns = t;
      p.ingress_port = flooder.port;
      p.src = flooder.addr;
      p.dst = all_nodes_multicast();
      p.hop_limit = 1;
      p.l4 = Icmpv6Header{kIcmpv6EchoRequest, std::nullopt};
      p.truth = GroundTruth{AttackVector::IntFlood};
      out.push_back(p);
    }
  }

  if (ext_flood) {
    // The flooded allocation's own hosts jointly exceed θ at correct HL, so
    // only the prefix budget can catch them.
    std::vector<const ExternalHost*> members;
    for (const ExternalHost& h : topo.external_hosts) {
      if (h.allocation == flood_alloc) members.push_back(&h);
    }
    size_t k = 0;
    for (uint64_t t = start + 137;
         t < dur; t += interval_ns(scenario.ext_flood_pps), ++k) {
      const ExternalHost& h = *members[k % members.size()];
      Packet p;
      p.ts_ns = t;
      p.ingress_port = h.port;
      p.src = h.addr;
      p.dst = server.addr;
      p.hop_limit = h.hop_limit;
      p.l4 = TcpHeader{static_cast<uint16_t>(20000 + k % 10000), 80, true};
      p.truth = GroundTruth{AttackVector::ExtFlood};
      out.push_back(p);
    }
  }

  if (scenario.has(AttackVector::IntSpoof)) {
    // Spoofed ND from a port that never DAD'd the claimed address.
    std::vector<const InternalHost*> victims;
    for (const InternalHost& h : topo.internal_hosts) {
      if (h.sends_benign) victims.push_back(&h);
    }
    for (uint64_t t = start + 401;
         t < dur; t += interval_ns(scenario.int_spoof_pps)) {
      const InternalHost& victim = *victims[rng.bounded(victims.size())];
      Packet p;
      p.ts_ns = t;
      p.ingress_port = topo.int_spoof_port;
      p.src = victim.addr;
      p.dst = all_nodes_multicast();
      p.hop_limit = 255;
      p.l4 = Icmpv6Header{kIcmpv6NeighborAdvertisement, std::nullopt};
      p.truth = GroundTruth{AttackVector::IntSpoof};
      out.push_back(p);
    }
  }

  if (scenario.has(AttackVector::ExtSpoof)) {
    // Claimed sources are drawn from the legitimate host set; the spoofer's
    // own HL must sit outside the claimed prefix's band. The generator
    // resamples victims until the mismatch is guaranteed.
    for (uint64_t t = start + 577;
         t < dur; t += interval_ns(scenario.ext_spoof_pps)) {
      const ExternalHost* victim = nullptr;
      const PrefixEntry* band = nullptr;
      uint8_t hl = spoofer_base_hl;
      for (int tries = 0; tries < 32; ++tries) {
        const ExternalHost& candidate =
            topo.external_hosts[rng.bounded(topo.external_hosts.size())];
        const PrefixEntry& b = topo.allocations[candidate.allocation];
        if (hl < b.hl_min || hl > b.hl_max) {
          victim = &candidate;
          band = &b;
          break;
        }
        victim = &candidate;
        band = &b;
      }
      if (hl >= band->hl_min && hl <= band->hl_max) {
        hl = band->hl_min > 0 ? static_cast<uint8_t>(band->hl_min - 1)
                              : static_cast<uint8_t>(band->hl_max + 1);
      }
      Packet p;
      p.ts_ns = t;
      p.ingress_port =
          static_cast<uint16_t>(kFirstExternalPort + rng.bounded(kIspCount));
      p.src = victim->addr;
      p.dst = server.addr;
      p.hop_limit = hl;
      p.l4 = TcpHeader{static_cast<uint16_t>(30000 + rng.bounded(10000)), 80, true};
      p.truth = GroundTruth{AttackVector::ExtSpoof};
      out.push_back(p);
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const Packet& a, const Packet& b) { return a.ts_ns < b.ts_ns; });
  verify_stream(out, topo, config);
  return out;
}

void verify_stream(const std::vector<Packet>& stream, const TopologySpec& topo,
                   const PipelineConfig& config) {
  LpmTable lpm = LpmTable::load_from_config(topo.allocations);
  std::map<Ipv6Addr, uint16_t> dad_plan;
  for (const InternalHost& h : topo.internal_hosts) {
    if (h.dad_at_start) dad_plan[h.addr] = h.port;
  }
  std::set<Ipv6Addr> dadded;
  BenignBudget budget;

  auto fail = [](const std::string& what) {
    throw std::logic_error("scenario self-check failed: " + what);
  };

  uint64_t prev_ts = 0;
  for (const Packet& pkt : stream) {
    if (pkt.ts_ns < prev_ts) fail("stream not timestamp-sorted");
    prev_ts = pkt.ts_ns;
    if (!pkt.truth) fail("generated packet without ground truth");
    const bool attack = pkt.truth->is_attack();
    auto role_it = topo.port_roles.find(pkt.ingress_port);
    if (role_it == topo.port_roles.end()) fail("packet on unplanned port");

    if (role_it->second == PortRole::External) {
      auto entry = lpm.lookup(pkt.src);
      if (!entry) fail("external packet without a prefix allocation");
      const bool in_band =
          pkt.hop_limit >= entry->hl_min && pkt.hop_limit <= entry->hl_max;
      if (attack) {
        switch (*pkt.truth->vector) {
          case AttackVector::ExtSpoof:
            if (in_band) fail("ExtSpoof packet inside the claimed band");
            break;
          case AttackVector::ExtFlood:
            if (!in_band) fail("ExtFlood packet outside its band");
            break;
          default:
            fail("internal attack vector on an external port");
        }
      } else {
        if (!in_band) fail("benign external packet outside its band");
        uint64_t window = pkt.ts_ns / config.window_ext_ns;
        ++budget.per_prefix[{window, entry->prefix, entry->length}];
      }
    } else {
      if (is_dad_ns(pkt)) {
        if (attack) fail("attack-labeled DAD registration");
        Ipv6Addr target = registered_address(pkt);
        auto it = dad_plan.find(target);
        if (it == dad_plan.end() || it->second != pkt.ingress_port) {
          fail("DAD for an unplanned (address, port)");
        }
        dadded.insert(target);
      } else if (attack && *pkt.truth->vector == AttackVector::IntSpoof) {
        auto it = dad_plan.find(pkt.src);
        if (it == dad_plan.end()) fail("IntSpoof source never DADs anywhere");
        if (it->second == pkt.ingress_port) {
          fail("IntSpoof packet on the victim's own port");
        }
      } else {
        // Benign internal data and IntFlood share one requirement: the
        // source is bound to this port before the packet is sent.
        if (attack && *pkt.truth->vector != AttackVector::IntFlood) {
          fail("external attack vector on an internal port");
        }
        if (!dadded.contains(pkt.src)) fail("internal data before DAD");
        if (dad_plan.at(pkt.src) != pkt.ingress_port) {
          fail("internal data from a foreign port");
        }
      }
      if (!attack) {
        uint64_t window = pkt.ts_ns / config.window_int_ns;
        ++budget.per_flow[{window, pkt.src, pkt.dst}];
      }
    }
  }

  // Benign load must stay clear of the flooding budgets (0.8·θ margin).
  for (const auto& [key, count] : budget.per_prefix) {
    if (count * 5 >= static_cast<uint64_t>(config.theta_ext) * 4) {
      fail("benign prefix load " + std::to_string(count) + " too close to θ at " +
           std::get<1>(key).to_string() + "/" +
           std::to_string(std::get<2>(key)));
    }
  }
  for (const auto& [key, count] : budget.per_flow) {
    bool multicast = is_multicast(std::get<2>(key));
    uint64_t theta = multicast ? config.theta_multicast : config.theta_unicast;
    if (count * 5 >= theta * 4) {
      fail("benign flow load " + std::to_string(count) + " too close to θ on " +
           std::get<1>(key).to_string() + " -> " + std::get<2>(key).to_string());
    }
  }
}

}  // namespace v6edge
