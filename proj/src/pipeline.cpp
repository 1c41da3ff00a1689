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

#include "v6edge/pipeline.hpp"

#include <cmath>

namespace v6edge {

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::ExtSpoof: return "ext_spoof";
    case Stage::IntSpoof: return "int_spoof";
    case Stage::ExtFlood: return "ext_flood";
    case Stage::IntFlood: return "int_flood";
    case Stage::None: return "none";
  }
  return "?";
}

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::HlOutOfBand: return "hl_out_of_band";
    case Reason::NoPrefixMatch: return "no_prefix_match";
    case Reason::BindingMismatch: return "binding_mismatch";
    case Reason::UnknownUnbound: return "unknown_unbound";
    case Reason::CapExceeded: return "cap_exceeded";
    case Reason::PrefixRateExceeded: return "prefix_rate_exceeded";
    case Reason::FlowRateExceededUnicast: return "flow_rate_exceeded_unicast";
    case Reason::FlowRateExceededMulticast: return "flow_rate_exceeded_multicast";
    case Reason::Accepted: return "accepted";
  }
  return "?";
}

Stage reason_stage(Reason r) {
  switch (r) {
    case Reason::HlOutOfBand:
    case Reason::NoPrefixMatch:
      return Stage::ExtSpoof;
    case Reason::BindingMismatch:
    case Reason::UnknownUnbound:
    case Reason::CapExceeded:
      return Stage::IntSpoof;
    case Reason::PrefixRateExceeded:
      return Stage::ExtFlood;
    case Reason::FlowRateExceededUnicast:
    case Reason::FlowRateExceededMulticast:
      return Stage::IntFlood;
    case Reason::Accepted:
      return Stage::None;
  }
  return Stage::None;
}

void PipelineConfig::validate() const {
  if (port_roles.empty()) {
    throw std::invalid_argument("no port roles configured");
  }
  if (theta_multicast >= theta_unicast) {
    throw std::invalid_argument(
        "theta_multicast must be strictly below theta_unicast (" +
        std::to_string(theta_multicast) + " >= " + std::to_string(theta_unicast) +
        ")");
  }
  if (theta_ext == 0 || theta_unicast == 0 || theta_multicast == 0) {
    throw std::invalid_argument("flooding thresholds must be positive");
  }
  if (window_ext_ns == 0 || window_int_ns == 0) {
    throw std::invalid_argument("window durations must be positive");
  }
  if (cap_k == 0) {
    throw std::invalid_argument("cap_k must be positive");
  }
  for (const PrefixEntry& e : hl_bands) {
    validate_prefix_entry(e);
  }
}

uint32_t compute_threshold(double rate_pps, uint64_t active_prefixes,
                           double window_seconds, double epsilon) {
  if (active_prefixes == 0) {
    throw std::domain_error("active prefix count must be nonzero");
  }
  if (!(rate_pps > 0) || !(window_seconds > 0) || epsilon < 0) {
    throw std::domain_error("rate and window must be positive, epsilon >= 0");
  }
  if (rate_pps > 1e9 || window_seconds > 1e5 || epsilon > 100) {
    throw std::domain_error("threshold input out of supported range");
  }
  // Snap the decimal inputs to scaled integers (milli-pps, ns, ppm) and take
  // the ceiling exactly. 100·1.1 in binary floating point is 110.0000...01,
  // whose naive ceil would be 111.
  auto scaled = [](double v, double scale) -> unsigned long long {
    return static_cast<unsigned long long>(std::llround(v * scale));
  };
  unsigned __int128 num = scaled(rate_pps, 1e3);
  num *= scaled(window_seconds, 1e9);
  num *= 1'000'000ULL + scaled(epsilon, 1e6);
  unsigned __int128 den = static_cast<unsigned __int128>(active_prefixes) *
                          1'000'000'000'000ULL * 1'000'000ULL;
  unsigned __int128 theta = (num + den - 1) / den;
  if (theta == 0 || theta > 0xFFFFFFFFULL) {
    throw std::domain_error("threshold out of range");
  }
  return static_cast<uint32_t>(theta);
}

DefensePipeline::DefensePipeline(const PipelineConfig& config)
    : config_(config),
      bindings_(config.cap_k),
      learn_gate_(config.bloom),
      ext_cms_(config.ext_sketch),
      int_cms_(config.int_sketch) {
  config_.validate();
  lpm_ = LpmTable::load_from_config(config_.hl_bands);
}

PortRole DefensePipeline::role_of(uint16_t port) const {
  auto it = config_.port_roles.find(port);
  if (it == config_.port_roles.end()) {
    throw std::runtime_error("packet on unconfigured ingress port " +
                             std::to_string(port));
  }
  return it->second;
}

// static
void DefensePipeline::maybe_rotate(WindowState& window, CountMinSketch& sketch,
                                   uint64_t period_ns, uint64_t now) {
  if (now - window.start_ns >= period_ns) {
    uint64_t steps = (now - window.start_ns) / period_ns;
    window.start_ns += steps * period_ns;
    sketch.reset();
  }
}

Verdict DefensePipeline::drop(Reason reason) {
  ++stats_.drops_by_reason[static_cast<size_t>(reason)];
  return Verdict{Action::Drop, reason_stage(reason), reason};
}

Verdict DefensePipeline::process(const PacketView& pkt, uint64_t now) {
  if (saw_packet_ && now < last_ts_ns_) {
    throw StreamOrderError("timestamp " + std::to_string(now) +
                           " regresses behind " + std::to_string(last_ts_ns_));
  }
  saw_packet_ = true;
  last_ts_ns_ = now;
  ++stats_.packets;

  const PortRole role = role_of(pkt.ingress_port());

  // Stage 1 — external spoofing: (source prefix, Hop Limit) plausibility.
  // The matched entry is kept: stage 3 keys its sketch by this prefix.
  std::optional<PrefixEntry> matched;
  if (role == PortRole::External) {
    matched = lpm_.lookup(pkt.src());
    if (!matched) {
      // Zero-trust default-deny: no prefix metadata, no admission. Logged
      // under its own reason so operators can tell policy gaps from spoofing.
      return drop(Reason::NoPrefixMatch);
    }
    if (pkt.hop_limit() < matched->hl_min || pkt.hop_limit() > matched->hl_max) {
      return drop(Reason::HlOutOfBand);
    }
  }

  // Stage 2 — internal spoofing: DAD-anchored address–port binding.
  if (role == PortRole::Internal) {
    const bool dad = is_dad_ns(pkt);
    const Ipv6Addr addr = dad ? registered_address(pkt) : pkt.src();
    bool handled = false;
    if (dad && !learn_gate_.check(addr.as_span())) {
      // First DAD observation of this address: registration event.
      BindResult r = bindings_.try_register(addr, pkt.ingress_port(), now);
      switch (r.outcome) {
        case BindOutcome::Registered:
          learn_gate_.insert(addr.as_span());
          handled = true;
          break;
        case BindOutcome::CapExceeded:
          return drop(Reason::CapExceeded);
        case BindOutcome::AlreadyBound:
          // Unreachable while the gate has no false negatives; fall through
          // to the plain binding check.
          break;
      }
    }
    if (!handled) {
      switch (bindings_.check(addr, pkt.ingress_port())) {
        case BindingCheck::Match:
          break;
        case BindingCheck::Mismatch:
          return drop(Reason::BindingMismatch);
        case BindingCheck::Unknown:
          return drop(Reason::UnknownUnbound);
      }
    }
  }

  // Stage 3 — external flooding: per-prefix budget in a tumbling window.
  if (role == PortRole::External) {
    maybe_rotate(ext_window_, ext_cms_, config_.window_ext_ns, now);
    // Key = matched prefix bytes ‖ prefix length.
    std::array<uint8_t, 17> key;
    for (size_t i = 0; i < 16; ++i) key[i] = matched->prefix.bytes[i];
    key[16] = matched->length;
    if (ext_cms_.estimate(key) >= config_.theta_ext) {
      return drop(Reason::PrefixRateExceeded);
    }
    ext_cms_.increment(key);
    ++stats_.ext_sketch_increments;
  }

  // Stage 4 — internal flooding: per-flow budget, multicast throttled harder.
  if (role == PortRole::Internal) {
    maybe_rotate(int_window_, int_cms_, config_.window_int_ns, now);
    const std::array<uint8_t, 32> key = flow_key(pkt).bytes();
    const bool multicast = is_multicast(pkt.dst());
    const uint32_t estimate = int_cms_.estimate(key);
    if (multicast && estimate >= config_.theta_multicast) {
      return drop(Reason::FlowRateExceededMulticast);
    }
    if (!multicast && estimate >= config_.theta_unicast) {
      return drop(Reason::FlowRateExceededUnicast);
    }
    int_cms_.increment(key);
    ++stats_.int_sketch_increments;
  }

  ++stats_.accepted;
  return Verdict{Action::Accept, Stage::None, Reason::Accepted};
}

}  // namespace v6edge
