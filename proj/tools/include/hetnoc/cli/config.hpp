/*
 * Copyright 2026 The hetnoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetnoc/routing.hpp"
#include "hetnoc/sim.hpp"
#include "hetnoc/topology.hpp"
#include "hetnoc/traffic.hpp"

namespace hetnoc::cli {

enum class SweepAxis { HopDistance, InjectionRate, ClockRatio };

std::string_view to_string(SweepAxis a) noexcept;
std::optional<SweepAxis> parse_sweep_axis(std::string_view s) noexcept;

struct SweepSpec {
  SweepAxis axis = SweepAxis::HopDistance;
  std::vector<double> values;
  std::vector<RoutingVariant> algorithms{RoutingVariant::R1};
  int source_layer = 1;
  int packet_length = 1;  ///< probe length for the zero-load axes
  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Technology library used for the area and clock scaling columns.
enum class ModelLibrary { GP, ULV };

struct ExperimentConfig {
  StackConfig stack;
  RoutingAlgorithm routing;
  RouterKind router_kind = RouterKind::Standard;
  SimParams sim;
  TrafficSpec traffic;
  SweepSpec sweep;
  ModelLibrary library = ModelLibrary::GP;
  std::string output_dir = "out";

  /// Cross-module checks: stack, routing, simulator and traffic.
  /// @throws ConfigError.
  void validate() const;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses YAML text. Relative trace files resolve against `base_dir`.
/// @throws ConfigError naming the offending key.
ExperimentConfig parse_config(std::string_view yaml, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical YAML; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& cfg);

}  // namespace hetnoc::cli
