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

#include "v6edge/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace v6edge {

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_line(size_t lineno, const std::string& what) {
  throw ConfigError("config line " + std::to_string(lineno) + ": " + what);
}

uint64_t parse_uint(const std::string& v, size_t lineno) {
  try {
    size_t used = 0;
    unsigned long long x = std::stoull(v, &used, 0);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    bad_line(lineno, "expected unsigned integer, got '" + v + "'");
  }
}

double parse_double(const std::string& v, size_t lineno) {
  try {
    size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    bad_line(lineno, "expected number, got '" + v + "'");
  }
}

uint64_t seconds_to_ns(double s, size_t lineno) {
  if (!(s > 0) || s > 1e5) bad_line(lineno, "window must be in (0, 1e5] seconds");
  return static_cast<uint64_t>(std::llround(s * 1e9));
}

// "prefix/length hl_min hl_max"
PrefixEntry parse_band_row(const std::string& row, size_t lineno) {
  std::istringstream iss(row);
  std::string cidr, min_s, max_s, extra;
  if (!(iss >> cidr >> min_s >> max_s) || (iss >> extra)) {
    bad_line(lineno, "band row must be 'prefix/length hl_min hl_max'");
  }
  size_t slash = cidr.find('/');
  if (slash == std::string::npos) bad_line(lineno, "band prefix missing '/length'");
  auto addr = Ipv6Addr::try_parse(cidr.substr(0, slash));
  if (!addr) bad_line(lineno, "malformed prefix address '" + cidr + "'");
  uint64_t len = parse_uint(cidr.substr(slash + 1), lineno);
  uint64_t lo = parse_uint(min_s, lineno);
  uint64_t hi = parse_uint(max_s, lineno);
  if (len > 128 || lo > 255 || hi > 255) {
    bad_line(lineno, "band row values out of range");
  }
  PrefixEntry entry{*addr, static_cast<uint8_t>(len), static_cast<uint8_t>(lo),
                    static_cast<uint8_t>(hi)};
  try {
    validate_prefix_entry(entry);
  } catch (const std::invalid_argument& e) {
    bad_line(lineno, e.what());
  }
  return entry;
}

}  // namespace

AppConfig parse_config_text(const std::string& text) {
  AppConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  size_t lineno = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') bad_line(lineno, "unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section != "pipeline" && section != "sketch_ext" &&
          section != "sketch_int" && section != "bloom" && section != "ports" &&
          section != "bands" && section != "scenarios") {
        bad_line(lineno, "unknown section [" + section + "]");
      }
      continue;
    }
    if (section.empty()) bad_line(lineno, "entry before any [section]");

    if (section == "bands") {
      cfg.pipeline.hl_bands.push_back(parse_band_row(line, lineno));
      cfg.has_bands = true;
      continue;
    }

    size_t eq = line.find('=');
    if (eq == std::string::npos) bad_line(lineno, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) bad_line(lineno, "empty key or value");

    if (section == "ports") {
      uint64_t port = parse_uint(key, lineno);
      if (port > 65535) bad_line(lineno, "port id out of range");
      PortRole role;
      if (value == "internal") role = PortRole::Internal;
      else if (value == "external") role = PortRole::External;
      else bad_line(lineno, "port role must be 'internal' or 'external'");
      auto [it, inserted] =
          cfg.pipeline.port_roles.emplace(static_cast<uint16_t>(port), role);
      if (!inserted) bad_line(lineno, "duplicate port " + key);
      cfg.has_port_roles = true;
      continue;
    }

    if (section == "pipeline") {
      if (key == "cap_k") cfg.pipeline.cap_k = static_cast<uint32_t>(parse_uint(value, lineno));
      else if (key == "theta_ext") {
        cfg.pipeline.theta_ext = static_cast<uint32_t>(parse_uint(value, lineno));
        cfg.theta_ext_overridden = true;
      } else if (key == "theta_unicast") {
        cfg.pipeline.theta_unicast = static_cast<uint32_t>(parse_uint(value, lineno));
      } else if (key == "theta_multicast") {
        cfg.pipeline.theta_multicast = static_cast<uint32_t>(parse_uint(value, lineno));
      } else if (key == "window_ext_s") {
        cfg.pipeline.window_ext_ns = seconds_to_ns(parse_double(value, lineno), lineno);
      } else if (key == "window_int_s") {
        cfg.pipeline.window_int_ns = seconds_to_ns(parse_double(value, lineno), lineno);
      } else if (key == "expected_rate_pps") {
        cfg.expected_rate_pps = parse_double(value, lineno);
      } else if (key == "active_prefixes") {
        cfg.active_prefixes = parse_uint(value, lineno);
      } else if (key == "epsilon") {
        cfg.epsilon = parse_double(value, lineno);
      } else {
        bad_line(lineno, "unknown key '" + key + "' in [pipeline]");
      }
      continue;
    }

    if (section == "sketch_ext" || section == "sketch_int") {
      SketchParams& sk = section == "sketch_ext" ? cfg.pipeline.ext_sketch
                                                 : cfg.pipeline.int_sketch;
      if (key == "width") sk.width = static_cast<uint32_t>(parse_uint(value, lineno));
      else if (key == "seed0") sk.row_seeds[0] = parse_uint(value, lineno);
      else if (key == "seed1") sk.row_seeds[1] = parse_uint(value, lineno);
      else if (key == "seed2") sk.row_seeds[2] = parse_uint(value, lineno);
      else bad_line(lineno, "unknown key '" + key + "' in [" + section + "]");
      continue;
    }

    if (section == "bloom") {
      if (key == "bits") cfg.pipeline.bloom.bits = static_cast<uint32_t>(parse_uint(value, lineno));
      else if (key == "seed0") cfg.pipeline.bloom.seeds[0] = parse_uint(value, lineno);
      else if (key == "seed1") cfg.pipeline.bloom.seeds[1] = parse_uint(value, lineno);
      else if (key == "seed2") cfg.pipeline.bloom.seeds[2] = parse_uint(value, lineno);
      else bad_line(lineno, "unknown key '" + key + "' in [bloom]");
      continue;
    }

    // [scenarios]
    if (key == "seed") cfg.scenarios.master_seed = parse_uint(value, lineno);
    else if (key == "duration_windows") {
      cfg.scenarios.duration_windows = static_cast<uint32_t>(parse_uint(value, lineno));
    } else if (key == "attack_start_ms") {
      cfg.scenarios.attack_start_ns = parse_uint(value, lineno) * 1'000'000ULL;
    } else if (key == "benign_ext_syn_pps") {
      cfg.scenarios.benign_ext_syn_pps = static_cast<uint32_t>(parse_uint(value, lineno));
    } else if (key == "benign_int_syn_pps") {
      cfg.scenarios.benign_int_syn_pps = static_cast<uint32_t>(parse_uint(value, lineno));
    } else if (key == "benign_nd_keepalive_pps") {
      cfg.scenarios.benign_nd_keepalive_pps = static_cast<uint32_t>(parse_uint(value, lineno));
    } else if (key == "ext_flood_pps") {
      cfg.scenarios.ext_flood_pps = static_cast<uint32_t>(parse_uint(value, lineno));
    } else if (key == "int_flood_unicast_pps") {
      cfg.scenarios.int_flood_unicast_pps = static_cast<uint32_t>(parse_uint(value, lineno));
    } else if (key == "int_flood_multicast_pps") {
      cfg.scenarios.int_flood_multicast_pps = static_cast<uint32_t>(parse_uint(value, lineno));
    } else if (key == "ext_spoof_pps") {
      cfg.scenarios.ext_spoof_pps = static_cast<uint32_t>(parse_uint(value, lineno));
    } else if (key == "int_spoof_pps") {
      cfg.scenarios.int_spoof_pps = static_cast<uint32_t>(parse_uint(value, lineno));
    } else if (key.rfind("vectors_", 0) == 0) {
      uint64_t id = parse_uint(key.substr(8), lineno);
      if (id < 1 || id > 15) bad_line(lineno, "scenario id in '" + key + "' must be 1..15");
      std::vector<AttackVector> vectors;
      size_t pos = 0;
      while (pos <= value.size()) {
        size_t comma = value.find(',', pos);
        std::string name = trim(value.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos));
        auto vec = attack_vector_from_name(name);
        if (!vec) bad_line(lineno, "unknown attack vector '" + name + "'");
        if (std::find(vectors.begin(), vectors.end(), *vec) != vectors.end()) {
          bad_line(lineno, "repeated attack vector '" + name + "'");
        }
        vectors.push_back(*vec);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      cfg.scenarios.vector_overrides[static_cast<int>(id)] = std::move(vectors);
    } else {
      bad_line(lineno, "unknown key '" + key + "' in [scenarios]");
    }
  }

  if (!cfg.theta_ext_overridden) {
    try {
      cfg.pipeline.theta_ext = compute_threshold(
          cfg.expected_rate_pps, cfg.active_prefixes,
          static_cast<double>(cfg.pipeline.window_ext_ns) / 1e9, cfg.epsilon);
    } catch (const std::domain_error& e) {
      throw ConfigError(std::string("cannot derive theta_ext: ") + e.what());
    }
  }
  if (cfg.pipeline.theta_multicast >= cfg.pipeline.theta_unicast) {
    throw ConfigError("theta_multicast (" +
                      std::to_string(cfg.pipeline.theta_multicast) +
                      ") must be strictly below theta_unicast (" +
                      std::to_string(cfg.pipeline.theta_unicast) + ")");
  }
  return cfg;
}

AppConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_effective_config(const AppConfig& config) {
  char buf[128];
  std::string out;
  out += "[pipeline]\n";
  out += "cap_k = " + std::to_string(config.pipeline.cap_k) + "\n";
  out += "theta_ext = " + std::to_string(config.pipeline.theta_ext) + "\n";
  out += "theta_unicast = " + std::to_string(config.pipeline.theta_unicast) + "\n";
  out += "theta_multicast = " + std::to_string(config.pipeline.theta_multicast) + "\n";
  std::snprintf(buf, sizeof(buf), "window_ext_s = %.9f\n",
                static_cast<double>(config.pipeline.window_ext_ns) / 1e9);
  out += buf;
  std::snprintf(buf, sizeof(buf), "window_int_s = %.9f\n",
                static_cast<double>(config.pipeline.window_int_ns) / 1e9);
  out += buf;

  auto sketch_section = [&](const char* name, const SketchParams& sk) {
    out += std::string("\n[") + name + "]\n";
    out += "width = " + std::to_string(sk.width) + "\n";
    for (int i = 0; i < 3; ++i) {
      std::snprintf(buf, sizeof(buf), "seed%d = 0x%016llX\n", i,
                    static_cast<unsigned long long>(sk.row_seeds[i]));
      out += buf;
    }
  };
  sketch_section("sketch_ext", config.pipeline.ext_sketch);
  sketch_section("sketch_int", config.pipeline.int_sketch);

  out += "\n[bloom]\n";
  out += "bits = " + std::to_string(config.pipeline.bloom.bits) + "\n";
  for (int i = 0; i < 3; ++i) {
    std::snprintf(buf, sizeof(buf), "seed%d = 0x%016llX\n", i,
                  static_cast<unsigned long long>(config.pipeline.bloom.seeds[i]));
    out += buf;
  }

  out += "\n[ports]\n";
  for (const auto& [port, role] : config.pipeline.port_roles) {
    out += std::to_string(port);
    out += role == PortRole::Internal ? " = internal\n" : " = external\n";
  }

  out += "\n[bands]\n";
  for (const PrefixEntry& e : config.pipeline.hl_bands) {
    out += e.prefix.to_string() + "/" + std::to_string(e.length) + " " +
           std::to_string(e.hl_min) + " " + std::to_string(e.hl_max) + "\n";
  }

  out += "\n[scenarios]\n";
  out += "seed = " + std::to_string(config.scenarios.master_seed) + "\n";
  out += "duration_windows = " + std::to_string(config.scenarios.duration_windows) + "\n";
  out += "attack_start_ms = " +
         std::to_string(config.scenarios.attack_start_ns / 1'000'000ULL) + "\n";
  out += "benign_ext_syn_pps = " + std::to_string(config.scenarios.benign_ext_syn_pps) + "\n";
  out += "benign_int_syn_pps = " + std::to_string(config.scenarios.benign_int_syn_pps) + "\n";
  out += "benign_nd_keepalive_pps = " +
         std::to_string(config.scenarios.benign_nd_keepalive_pps) + "\n";
  out += "ext_flood_pps = " + std::to_string(config.scenarios.ext_flood_pps) + "\n";
  out += "int_flood_unicast_pps = " +
         std::to_string(config.scenarios.int_flood_unicast_pps) + "\n";
  out += "int_flood_multicast_pps = " +
         std::to_string(config.scenarios.int_flood_multicast_pps) + "\n";
  out += "ext_spoof_pps = " + std::to_string(config.scenarios.ext_spoof_pps) + "\n";
  out += "int_spoof_pps = " + std::to_string(config.scenarios.int_spoof_pps) + "\n";
  for (const auto& [id, vectors] : config.scenarios.vector_overrides) {
    out += "vectors_" + std::to_string(id) + " = ";
    for (size_t i = 0; i < vectors.size(); ++i) {
      if (i > 0) out += ",";
      out += attack_vector_name(vectors[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace v6edge
