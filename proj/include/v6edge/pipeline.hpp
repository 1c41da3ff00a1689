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

#ifndef V6EDGE_PIPELINE_HPP
#define V6EDGE_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "v6edge/binding_registry.hpp"
#include "v6edge/bloom_filter.hpp"
#include "v6edge/count_min_sketch.hpp"
#include "v6edge/lpm_table.hpp"
#include "v6edge/packet.hpp"

namespace v6edge {

enum class Action : uint8_t { Accept, Drop };

enum class Stage : uint8_t { ExtSpoof, IntSpoof, ExtFlood, IntFlood, None };

enum class Reason : uint8_t {
  HlOutOfBand,
  NoPrefixMatch,
  BindingMismatch,
  UnknownUnbound,
  CapExceeded,
  PrefixRateExceeded,
  FlowRateExceededUnicast,
  FlowRateExceededMulticast,
  Accepted,
};

inline constexpr size_t kReasonCount = 9;

const char* stage_name(Stage s);
const char* reason_name(Reason r);
Stage reason_stage(Reason r);

/// Per-packet decision: Accept <=> stage None <=> reason Accepted.
struct Verdict {
  Action action;
  Stage stage;
  Reason reason;
  bool operator==(const Verdict&) const = default;
};

/// Everything the four stages need, resolved before the first packet.
/// theta_m < theta_u is a hard invariant (multicast budget is stricter).
struct PipelineConfig {
  std::map<uint16_t, PortRole> port_roles;
  std::vector<PrefixEntry> hl_bands;

  uint32_t cap_k = 8;

  uint32_t theta_ext = 110;
  uint32_t theta_unicast = 60;
  uint32_t theta_multicast = 20;

  uint64_t window_ext_ns = 1'000'000'000;
  uint64_t window_int_ns = 1'000'000'000;

  SketchParams ext_sketch;
  SketchParams int_sketch{4096,
                          {0xA0761D6478BD642FULL, 0xE7037ED1A0B428DBULL,
                           0x8EBC6AF09C88C6E3ULL}};
  BloomParams bloom;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

/// Non-monotone packet timestamps break windowed counting.
class StreamOrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Audit counters. Sketch increments are cumulative across window
/// rotations: the ordering invariant says spoof-dropped packets must never
/// reach a sketch, and these counters are how tests prove it.
struct PipelineStats {
  uint64_t packets = 0;
  uint64_t accepted = 0;
  uint64_t ext_sketch_increments = 0;
  uint64_t int_sketch_increments = 0;
  std::array<uint64_t, kReasonCount> drops_by_reason{};

  uint64_t dropped() const { return packets - accepted; }
};

/// θ = ceil((r/n)·T_w·(1+ε)), the per-prefix packet budget for one window.
/// Evaluated in exact scaled-integer arithmetic so decimal operator inputs
/// (e.g. ε=0.1) produce the true mathematical ceiling: (1000,10,1,0.1)
/// must give 110, not a float artifact of 111.
/// Throws std::domain_error for n = 0 and non-positive r/window/negative ε.
uint32_t compute_threshold(double rate_pps, uint64_t active_prefixes,
                           double window_seconds, double epsilon);

/// The four-stage zero-trust decision engine: external spoofing, internal
/// spoofing, external flooding, internal flooding, executed in that order
/// per packet with first-drop short-circuit. Identity checks come first so
/// spoofed traffic can never inflate the flooding sketches.
///
/// Sequential state machine: one packet at a time, timestamps nondecreasing.
/// Parallel runs use independent pipeline instances.
class DefensePipeline {
 public:
  explicit DefensePipeline(const PipelineConfig& config);

  /// Decides one packet using its own timestamp as the clock.
  Verdict process(const PacketView& pkt) { return process(pkt, pkt.ts_ns()); }

  /// Decides one packet at explicit time `now`; throws StreamOrderError if
  /// `now` regresses.
  Verdict process(const PacketView& pkt, uint64_t now);

  const PipelineStats& stats() const { return stats_; }
  const BindingTable& bindings() const { return bindings_; }
  const PipelineConfig& config() const { return config_; }

  uint64_t ext_window_start() const { return ext_window_.start_ns; }
  uint64_t int_window_start() const { return int_window_.start_ns; }
  uint64_t ext_sketch_generation() const { return ext_cms_.generation(); }
  uint64_t int_sketch_generation() const { return int_cms_.generation(); }

 private:
  struct WindowState {
    uint64_t start_ns = 0;
  };

  PortRole role_of(uint16_t port) const;
  static void maybe_rotate(WindowState& window, CountMinSketch& sketch,
                           uint64_t period_ns, uint64_t now);
  Verdict drop(Reason reason);

  PipelineConfig config_;
  LpmTable lpm_;
  BindingTable bindings_;
  BloomFilter learn_gate_;
  CountMinSketch ext_cms_;
  CountMinSketch int_cms_;
  WindowState ext_window_;
  WindowState int_window_;
  uint64_t last_ts_ns_ = 0;
  bool saw_packet_ = false;
  PipelineStats stats_;
};

}  // namespace v6edge

#endif  // V6EDGE_PIPELINE_HPP
