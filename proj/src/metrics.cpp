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

#include "v6edge/metrics.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace v6edge {

namespace {

using nlohmann::ordered_json;

std::string percent(const std::optional<double>& v, const char* undefined_mark) {
  if (!v) return undefined_mark;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v * 100.0);
  return buf;
}

std::string scenario_label(int id) {
  return id == 0 ? std::string("replay") : std::to_string(id);
}

}  // namespace

void ConfusionMatrix::add(bool attack, Action action) {
  bool dropped = action == Action::Drop;
  if (attack && dropped) ++tp;
  else if (attack) ++fn;
  else if (dropped) ++fp;
  else ++tn;
}

ConfusionMatrix evaluate(std::span<const std::pair<GroundTruth, Verdict>> pairs) {
  ConfusionMatrix cm;
  for (const auto& [truth, verdict] : pairs) {
    cm.add(truth.is_attack(), verdict.action);
  }
  return cm;
}

Scores scores(const ConfusionMatrix& cm) {
  Scores s;
  auto ratio = [](uint64_t num, uint64_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  s.accuracy = ratio(cm.tp + cm.tn, cm.total());
  s.precision = ratio(cm.tp, cm.tp + cm.fp);
  s.recall = ratio(cm.tp, cm.tp + cm.fn);
  if (s.precision && s.recall && (*s.precision + *s.recall) > 0) {
    s.f1 = 2.0 * *s.precision * *s.recall / (*s.precision + *s.recall);
  }
  return s;
}

ScenarioReport make_report(int scenario_id, const ConfusionMatrix& cm,
                           const PipelineStats& stats,
                           const BindingTable& bindings) {
  ScenarioReport report;
  report.scenario_id = scenario_id;
  report.packets = stats.packets;
  report.confusion = cm;
  report.metrics = scores(cm);
  for (size_t i = 0; i < kReasonCount; ++i) {
    Reason r = static_cast<Reason>(i);
    if (r == Reason::Accepted) continue;
    if (stats.drops_by_reason[i] > 0) {
      report.drops_by_reason[reason_name(r)] = stats.drops_by_reason[i];
    }
  }
  report.bindings = bindings.dump();
  return report;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "table") return ReportFormat::Table;
  throw std::invalid_argument("unknown report format '" + name + "'");
}

std::string render(std::span<const ScenarioReport> reports, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return render_json(reports);
    case ReportFormat::Csv: return render_csv(reports);
    case ReportFormat::Table: return render_table(reports);
  }
  throw std::invalid_argument("unknown report format");
}

std::string render_json(std::span<const ScenarioReport> reports) {
  ordered_json out = ordered_json::array();
  for (const ScenarioReport& r : reports) {
    ordered_json row;
    row["scenario"] = r.scenario_id;
    row["packets"] = r.packets;
    row["confusion"] = {{"tp", r.confusion.tp},
                        {"fp", r.confusion.fp},
                        {"tn", r.confusion.tn},
                        {"fn", r.confusion.fn}};
    auto metric = [](const std::optional<double>& v) {
      return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    row["metrics"] = {{"accuracy", metric(r.metrics.accuracy)},
                      {"precision", metric(r.metrics.precision)},
                      {"recall", metric(r.metrics.recall)},
                      {"f1", metric(r.metrics.f1)}};
    ordered_json stages = ordered_json::object();
    for (size_t i = 0; i < kReasonCount; ++i) {
      Reason reason = static_cast<Reason>(i);
      if (reason == Reason::Accepted) continue;
      auto it = r.drops_by_reason.find(reason_name(reason));
      if (it == r.drops_by_reason.end()) continue;
      stages[stage_name(reason_stage(reason))][it->first] = it->second;
    }
    row["stages"] = stages;
    ordered_json bindings = ordered_json::array();
    for (const BindingRecord& b : r.bindings) {
      bindings.push_back({{"addr", b.addr.to_string()},
                          {"port", b.port},
                          {"registered_at_ns", b.registered_at_ns}});
    }
    row["bindings"] = bindings;
    out.push_back(std::move(row));
  }
  return out.dump(2) + "\n";
}

std::string render_csv(std::span<const ScenarioReport> reports) {
  std::string out = "scenario,accuracy,precision,recall,f1\n";
  for (const ScenarioReport& r : reports) {
    out += scenario_label(r.scenario_id);
    out += ',';
    out += percent(r.metrics.accuracy, "");
    out += ',';
    out += percent(r.metrics.precision, "");
    out += ',';
    out += percent(r.metrics.recall, "");
    out += ',';
    out += percent(r.metrics.f1, "");
    out += '\n';
  }
  return out;
}

std::string render_table(std::span<const ScenarioReport> reports) {
  // Column order mirrors the metric table layout: scenario then
  // accuracy/precision/recall/F1 as percentages.
  std::string out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-10s %10s %10s %10s %10s\n", "scenario",
                "accuracy", "precision", "recall", "f1");
  out += line;
  for (const ScenarioReport& r : reports) {
    std::snprintf(line, sizeof(line), "%-10s %10s %10s %10s %10s\n",
                  scenario_label(r.scenario_id).c_str(),
                  percent(r.metrics.accuracy, "\xE2\x80\x94").c_str(),
                  percent(r.metrics.precision, "\xE2\x80\x94").c_str(),
                  percent(r.metrics.recall, "\xE2\x80\x94").c_str(),
                  percent(r.metrics.f1, "\xE2\x80\x94").c_str());
    out += line;
  }
  return out;
}

std::vector<ScenarioReport> parse_report_json(const std::string& text) {
  nlohmann::json root = nlohmann::json::parse(text);
  std::vector<ScenarioReport> reports;
  for (const auto& row : root) {
    ScenarioReport r;
    r.scenario_id = row.at("scenario").get<int>();
    r.packets = row.at("packets").get<uint64_t>();
    r.confusion.tp = row.at("confusion").at("tp").get<uint64_t>();
    r.confusion.fp = row.at("confusion").at("fp").get<uint64_t>();
    r.confusion.tn = row.at("confusion").at("tn").get<uint64_t>();
    r.confusion.fn = row.at("confusion").at("fn").get<uint64_t>();
    auto metric = [&](const char* name) -> std::optional<double> {
      const auto& v = row.at("metrics").at(name);
      if (v.is_null()) return std::nullopt;
      return v.get<double>();
    };
    r.metrics.accuracy = metric("accuracy");
    r.metrics.precision = metric("precision");
    r.metrics.recall = metric("recall");
    r.metrics.f1 = metric("f1");
    for (const auto& [stage, reasons] : row.at("stages").items()) {
      (void)stage;
      for (const auto& [reason, count] : reasons.items()) {
        r.drops_by_reason[reason] = count.get<uint64_t>();
      }
    }
    for (const auto& b : row.at("bindings")) {
      r.bindings.push_back(BindingRecord{
          Ipv6Addr::parse(b.at("addr").get<std::string>()),
          b.at("port").get<uint16_t>(),
          b.at("registered_at_ns").get<uint64_t>()});
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace v6edge
