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

#ifndef V6EDGE_CONFIG_HPP
#define V6EDGE_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "v6edge/pipeline.hpp"
#include "v6edge/scenarios.hpp"

namespace v6edge {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything the INI-style config file can express. An empty file (or no
/// file at all) yields pure defaults; θ_ext is derived from
/// (rate, prefixes, window, ε) unless pinned explicitly.
struct AppConfig {
  PipelineConfig pipeline;

  // θ_ext derivation inputs ([pipeline] section).
  double expected_rate_pps = 1000.0;
  uint64_t active_prefixes = 10;
  double epsilon = 0.1;
  bool theta_ext_overridden = false;

  ScenarioDefaults scenarios;

  // true once [ports] / [bands] sections supplied roles and bands (replay
  // configs carry them; scenario runs derive them from the topology).
  bool has_port_roles = false;
  bool has_bands = false;
};

/// Parses config text. Unknown sections/keys, malformed rows and violated
/// invariants (e.g. θ_m ≥ θ_u) raise ConfigError with a line number.
AppConfig parse_config_text(const std::string& text);

/// Loads a config file; missing path raises ConfigError.
AppConfig load_config_file(const std::string& path);

/// Fully resolved config (ports, bands, thresholds, seeds) as config-file
/// text, so a `replay` can reproduce a `run` bit-exactly.
std::string serialize_effective_config(const AppConfig& config);

}  // namespace v6edge

#endif  // V6EDGE_CONFIG_HPP
