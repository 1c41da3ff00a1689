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

#ifndef V6EDGE_RUNNER_HPP
#define V6EDGE_RUNNER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "v6edge/config.hpp"
#include "v6edge/metrics.hpp"

namespace v6edge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

struct RunOptions {
  std::string config_path;          // empty = defaults (or $V6EDGE_CONFIG)
  std::vector<int> scenario_ids;    // empty = all 15
  std::optional<uint64_t> seed;     // overrides [scenarios] seed
  std::string out_dir = "v6edge-out";
  bool emit_trace = false;
  bool emit_verdicts = false;
  ReportFormat format = ReportFormat::Table;
};

struct GenOptions {
  std::string config_path;
  int scenario_id = 0;
  std::optional<uint64_t> seed;
  std::string out_path;               // trace file
  std::string effective_config_path;  // optional: config needed to replay
};

struct ReplayOptions {
  std::string config_path;  // must provide [ports] and [bands]
  std::string trace_path;
  std::optional<int> scenario_label;  // labels the report rows
  std::string out_dir;                // empty = no report files
  bool emit_verdicts = false;
  ReportFormat format = ReportFormat::Table;
};

/// "all" or a comma list of ids/ranges ("1,3,5-7"); throws ConfigError.
std::vector<int> parse_scenario_selection(const std::string& arg);

/// generate → process → evaluate → report for each selected scenario.
/// Writes report.json/report.csv (plus optional traces, verdict streams and
/// the effective config) under out_dir and prints the rendered report.
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

/// Writes one scenario's labeled trace without executing the pipeline.
int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);

/// Runs the pipeline over an externally supplied trace; emits metrics when
/// every record carries a truth label, verdicts only otherwise.
int cmd_replay(const ReplayOptions& options, std::ostream& out, std::ostream& err);

}  // namespace v6edge

#endif  // V6EDGE_RUNNER_HPP
