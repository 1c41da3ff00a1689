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

#ifndef V6EDGE_METRICS_HPP
#define V6EDGE_METRICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "v6edge/binding_registry.hpp"
#include "v6edge/packet.hpp"
#include "v6edge/pipeline.hpp"

namespace v6edge {

/// Per-packet classification counts. Positive class = attack packet,
/// predicted positive = Drop.
struct ConfusionMatrix {
  uint64_t tp = 0;  // attack, dropped
  uint64_t fp = 0;  // benign, dropped
  uint64_t tn = 0;  // benign, accepted
  uint64_t fn = 0;  // attack, accepted

  uint64_t total() const { return tp + fp + tn + fn; }
  void add(bool attack, Action action);
  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix evaluate(
    std::span<const std::pair<GroundTruth, Verdict>> pairs);

/// Detection scores as fractions in [0,1]. A 0/0 ratio is reported as
/// absent, never as 0.
struct Scores {
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

Scores scores(const ConfusionMatrix& cm);

/// One scenario's evaluated outcome plus the pipeline observability dump.
struct ScenarioReport {
  int scenario_id = 0;  // 0 = replay of an external trace
  uint64_t packets = 0;
  ConfusionMatrix confusion;
  Scores metrics;
  // reason name -> drop count, grouped under the owning stage when rendered.
  std::map<std::string, uint64_t> drops_by_reason;
  std::vector<BindingRecord> bindings;
};

ScenarioReport make_report(int scenario_id, const ConfusionMatrix& cm,
                           const PipelineStats& stats,
                           const BindingTable& bindings);

enum class ReportFormat { Json, Csv, Table };

/// Parses "json" | "csv" | "table"; throws std::invalid_argument otherwise.
ReportFormat parse_report_format(const std::string& name);

/// Renders scenario rows with the metric columns as percentages (2 decimals
/// in csv/table). Undefined scores render as "—" in tables, null in JSON and
/// an empty field in CSV.
std::string render(std::span<const ScenarioReport> reports, ReportFormat format);

std::string render_json(std::span<const ScenarioReport> reports);
std::string render_csv(std::span<const ScenarioReport> reports);
std::string render_table(std::span<const ScenarioReport> reports);

/// Inverse of render_json (used by replay/report tooling and tests).
std::vector<ScenarioReport> parse_report_json(const std::string& text);

}  // namespace v6edge

#endif  // V6EDGE_METRICS_HPP
