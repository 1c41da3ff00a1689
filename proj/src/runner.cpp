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

#include "v6edge/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "v6edge/scenarios.hpp"
#include "v6edge/trace_io.hpp"

namespace v6edge {

namespace {

namespace fs = std::filesystem;

AppConfig load_or_default(const std::string& path) {
  if (path.empty()) return parse_config_text("");
  return load_config_file(path);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path.string());
  out << content;
  out.flush();
  if (!out) throw std::ios_base::failure("short write to " + path.string());
}

std::string verdict_line(uint64_t ts_ns, const Verdict& v) {
  std::string out = "{\"ts_ns\":";
  out += std::to_string(ts_ns);
  out += ",\"action\":\"";
  out += v.action == Action::Accept ? "accept" : "drop";
  out += "\",\"stage\":\"";
  out += stage_name(v.stage);
  out += "\",\"reason\":\"";
  out += reason_name(v.reason);
  out += "\"}\n";
  return out;
}

struct ScenarioOutcome {
  ScenarioReport report;
  std::string verdict_stream;
};

ScenarioOutcome execute(const std::vector<Packet>& stream,
                        const PipelineConfig& cfg, int scenario_id,
                        bool collect_verdicts) {
  DefensePipeline pipeline(cfg);
  ConfusionMatrix cm;
  bool labeled = true;
  std::string verdicts;
  for (const Packet& pkt : stream) {
    Verdict v = pipeline.process(PacketView(pkt));
    if (pkt.truth) {
      cm.add(pkt.truth->is_attack(), v.action);
    } else {
      labeled = false;
    }
    if (collect_verdicts) verdicts += verdict_line(pkt.ts_ns, v);
  }
  if (!labeled) cm = ConfusionMatrix{};  // metrics need a fully labeled stream
  ScenarioOutcome outcome;
  outcome.report = make_report(scenario_id, cm, pipeline.stats(), pipeline.bindings());
  outcome.verdict_stream = std::move(verdicts);
  return outcome;
}

}  // namespace

std::vector<int> parse_scenario_selection(const std::string& arg) {
  std::vector<int> ids;
  if (arg.empty() || arg == "all") {
    for (int i = 1; i <= 15; ++i) ids.push_back(i);
    return ids;
  }
  size_t pos = 0;
  while (pos <= arg.size()) {
    size_t comma = arg.find(',', pos);
    std::string part = arg.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (part.empty()) throw ConfigError("empty scenario id in '" + arg + "'");
    size_t dash = part.find('-');
    auto to_id = [&](const std::string& s) {
      try {
        size_t used = 0;
        int id = std::stoi(s, &used);
        if (used != s.size() || id < 1 || id > 15) throw std::invalid_argument(s);
        return id;
      } catch (const std::exception&) {
        throw ConfigError("scenario id must be 1..15, got '" + s + "'");
      }
    };
    if (dash == std::string::npos) {
      ids.push_back(to_id(part));
    } else {
      int lo = to_id(part.substr(0, dash));
      int hi = to_id(part.substr(dash + 1));
      if (lo > hi) throw ConfigError("inverted scenario range '" + part + "'");
      for (int i = lo; i <= hi; ++i) ids.push_back(i);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  AppConfig cfg;
  std::vector<int> ids = options.scenario_ids;
  try {
    cfg = load_or_default(options.config_path);
    if (ids.empty()) ids = parse_scenario_selection("all");
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (options.seed) cfg.scenarios.master_seed = *options.seed;

  try {
    TopologySpec topo = build_topology(cfg.scenarios.master_seed);
    PipelineConfig pcfg = derive_pipeline_config(topo, cfg.pipeline);
    std::vector<ScenarioSpec> suite =
        list_scenarios(cfg.scenarios, pcfg.window_ext_ns);

    fs::create_directories(options.out_dir);
    std::vector<ScenarioReport> reports;
    for (int id : ids) {
      const ScenarioSpec& spec = suite[static_cast<size_t>(id - 1)];
      std::vector<Packet> stream = generate(spec, topo, pcfg);
      ScenarioOutcome outcome = execute(stream, pcfg, id, options.emit_verdicts);
      if (options.emit_trace) {
        write_trace_file(stream, (fs::path(options.out_dir) /
                                  ("scenario_" + std::to_string(id) + ".trace.jsonl"))
                                     .string());
      }
      if (options.emit_verdicts) {
        write_file(fs::path(options.out_dir) /
                       ("scenario_" + std::to_string(id) + ".verdicts.jsonl"),
                   outcome.verdict_stream);
      }
      reports.push_back(std::move(outcome.report));
    }

    write_file(fs::path(options.out_dir) / "report.json", render_json(reports));
    write_file(fs::path(options.out_dir) / "report.csv", render_csv(reports));
    AppConfig effective = cfg;
    effective.pipeline = pcfg;
    write_file(fs::path(options.out_dir) / "effective_config.conf",
               serialize_effective_config(effective));
    out << render(reports, options.format);
    return kExitOk;
  } catch (const std::ios_base::failure& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  }
}

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
  AppConfig cfg;
  try {
    cfg = load_or_default(options.config_path);
    if (options.scenario_id < 1 || options.scenario_id > 15) {
      throw ConfigError("scenario id must be 1..15, got " +
                        std::to_string(options.scenario_id));
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (options.seed) cfg.scenarios.master_seed = *options.seed;

  try {
    TopologySpec topo = build_topology(cfg.scenarios.master_seed);
    PipelineConfig pcfg = derive_pipeline_config(topo, cfg.pipeline);
    std::vector<ScenarioSpec> suite =
        list_scenarios(cfg.scenarios, pcfg.window_ext_ns);
    const ScenarioSpec& spec = suite[static_cast<size_t>(options.scenario_id - 1)];
    std::vector<Packet> stream = generate(spec, topo, pcfg);
    write_trace_file(stream, options.out_path);
    if (!options.effective_config_path.empty()) {
      AppConfig effective = cfg;
      effective.pipeline = pcfg;
      write_file(options.effective_config_path,
                 serialize_effective_config(effective));
    }
    out << "wrote " << stream.size() << " packets to " << options.out_path << "\n";
    return kExitOk;
  } catch (const std::ios_base::failure& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::runtime_error& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  }
}

int cmd_replay(const ReplayOptions& options, std::ostream& out, std::ostream& err) {
  AppConfig cfg;
  std::vector<Packet> stream;
  try {
    cfg = load_or_default(options.config_path);
    if (!cfg.has_port_roles || !cfg.has_bands) {
      throw ConfigError(
          "replay requires [ports] and [bands] sections in the config");
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    stream = read_trace_file(options.trace_path);
  } catch (const TraceParseError& e) {
    err << "trace error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  }

  bool labeled = !stream.empty();
  for (const Packet& pkt : stream) {
    if (!pkt.truth) {
      labeled = false;
      break;
    }
  }

  try {
    int label = options.scenario_label.value_or(0);
    ScenarioOutcome outcome =
        execute(stream, cfg.pipeline, label, options.emit_verdicts);
    if (!options.out_dir.empty()) {
      fs::create_directories(options.out_dir);
      if (options.emit_verdicts) {
        write_file(fs::path(options.out_dir) / "verdicts.jsonl",
                   outcome.verdict_stream);
      }
      if (labeled) {
        std::vector<ScenarioReport> reports{outcome.report};
        write_file(fs::path(options.out_dir) / "report.json", render_json(reports));
        write_file(fs::path(options.out_dir) / "report.csv", render_csv(reports));
      }
    }
    if (labeled) {
      std::vector<ScenarioReport> reports{outcome.report};
      out << render(reports, options.format);
    } else {
      out << "replayed " << stream.size()
          << " packets (no truth labels; verdicts only)\n";
    }
    return kExitOk;
  } catch (const std::ios_base::failure& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::runtime_error& e) {
    // Replayed traces can violate pipeline preconditions (unknown ports,
    // non-monotone timestamps); that is bad input, not an internal fault.
    err << "replay error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace v6edge
