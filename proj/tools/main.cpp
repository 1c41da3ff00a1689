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

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "v6edge/runner.hpp"

namespace {

std::string default_config_path() {
  const char* env = std::getenv("V6EDGE_CONFIG");
  return env != nullptr ? std::string(env) : std::string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"v6edge — zero-trust IPv6 edge defense pipeline and traffic harness"};
  app.require_subcommand(1);

  std::string config_path = default_config_path();
  std::string scenarios_arg = "all";
  std::string format_name = "table";
  std::string out_dir = "v6edge-out";
  std::string trace_path;
  std::string effective_config_path;
  int scenario_id = 0;
  int replay_label = 0;
  uint64_t seed = 0;
  bool emit_trace = false;
  bool emit_verdicts = false;

  CLI::App* run = app.add_subcommand(
      "run", "Generate scenarios, run the pipeline and write reports");
  run->add_option("--config", config_path, "Config file (default: $V6EDGE_CONFIG if set, else built-in defaults)");
  run->add_option("--scenarios", scenarios_arg, "'all' or ids like 1,3,5-7");
  run->add_option("--seed", seed, "Master seed override");
  run->add_option("--out", out_dir, "Output directory");
  run->add_flag("--emit-trace", emit_trace, "Write per-scenario traces");
  run->add_flag("--emit-verdicts", emit_verdicts, "Write per-scenario verdict streams");
  run->add_option("--format", format_name, "Report format: json|csv|table");

  CLI::App* gen = app.add_subcommand(
      "gen", "Write one scenario's labeled trace without running the pipeline");
  gen->add_option("--config", config_path, "Config file (default: $V6EDGE_CONFIG if set, else built-in defaults)");
  gen->add_option("--scenario", scenario_id, "Scenario id 1..15")->required();
  gen->add_option("--seed", seed, "Master seed override");
  gen->add_option("--out", trace_path, "Trace output path")->required();
  gen->add_option("--emit-config", effective_config_path,
                  "Also write the effective config (enables exact replay)");

  CLI::App* replay = app.add_subcommand(
      "replay", "Run the pipeline over an existing JSON-lines trace");
  replay->add_option("trace", trace_path, "Trace file")->required();
  replay->add_option("--config", config_path, "Config file (default: $V6EDGE_CONFIG if set, else built-in defaults)");
  replay->add_option("--scenario", replay_label,
                     "Scenario id used to label the report rows");
  replay->add_option("--out", out_dir, "Output directory for report/verdicts");
  replay->add_flag("--emit-verdicts", emit_verdicts, "Write the verdict stream");
  replay->add_option("--format", format_name, "Report format: json|csv|table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? v6edge::kExitOk : v6edge::kExitConfig;
  }

  v6edge::ReportFormat format;
  std::vector<int> ids;
  try {
    format = v6edge::parse_report_format(format_name);
    ids = v6edge::parse_scenario_selection(scenarios_arg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return v6edge::kExitConfig;
  }

  try {
    if (run->parsed()) {
      v6edge::RunOptions opt;
      opt.config_path = config_path;
      opt.scenario_ids = ids;
      if (run->count("--seed") > 0) opt.seed = seed;
      opt.out_dir = out_dir;
      opt.emit_trace = emit_trace;
      opt.emit_verdicts = emit_verdicts;
      opt.format = format;
      return v6edge::cmd_run(opt, std::cout, std::cerr);
    }
    if (gen->parsed()) {
      v6edge::GenOptions opt;
      opt.config_path = config_path;
      opt.scenario_id = scenario_id;
      if (gen->count("--seed") > 0) opt.seed = seed;
      opt.out_path = trace_path;
      opt.effective_config_path = effective_config_path;
      return v6edge::cmd_gen(opt, std::cout, std::cerr);
    }
    v6edge::ReplayOptions opt;
    opt.config_path = config_path;
    opt.trace_path = trace_path;
    if (replay->count("--scenario") > 0) opt.scenario_label = replay_label;
    opt.out_dir = replay->count("--out") > 0 ? out_dir : std::string();
    opt.emit_verdicts = emit_verdicts;
    opt.format = format;
    return v6edge::cmd_replay(opt, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 1;
  }
}
