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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetnoc/cli/config.hpp"

namespace hetnoc::cli {

/// One (axis value, algorithm) result. Latencies are zero-load head latencies
/// on the hop_distance and clock_ratio axes and average flit latencies on the
/// injection_rate axis.
struct SweepRow {
  SweepAxis axis = SweepAxis::HopDistance;
  double value = 0;
  RoutingVariant algorithm = RoutingVariant::R1;
  RouterKind router_kind = RouterKind::Standard;
  double model_latency_ps = 0;
  double sim_latency_ps = 0;
  double xyz_model_latency_ps = 0;
  double xyz_sim_latency_ps = 0;
  double enhancement = 0;        ///< xyz_sim / sim
  double model_enhancement = 0;  ///< xyz_model / model
  std::optional<std::int64_t> threshold_hops;
  std::optional<bool> above_threshold;
};

/// HETERO_NOC_WORKERS when set, otherwise the hardware concurrency.
/// @throws ConfigError for a value that is not a positive integer.
unsigned sweep_workers();

/// Runs the sweep described by cfg.sweep on at most `workers` threads.
/// Rows come out in axis order, then in cfg.sweep.algorithms order.
///
/// On the hop_distance axis the source sits at (0, 0) of the source layer and
/// the value counts hops on that layer's own grid. R2 rows keep the
/// destination in the source layer and force the detour (threshold 0), so the
/// row shows what R2 gains or loses by detouring at that distance; the
/// threshold column holds the configured threshold. Other rows target the
/// routing target layer.
/// @throws ConfigError for an empty or out-of-range axis.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, unsigned workers);

/// Header: axis,value,algorithm,router_kind,model_latency_ps,sim_latency_ps,
/// xyz_model_latency_ps,xyz_sim_latency_ps,enhancement,model_enhancement,
/// threshold_hops,above_threshold
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_svg(const std::vector<SweepRow>& rows);

/// Pipeline case study: a mixed-signal sensor layer on top of two digital
/// layers, 4x3 routers each.
struct CaseStudyLoad {
  int multiplier = 2;  ///< scales the packets each stage emits per frame
  Ticks spacing = 56;  ///< readout gap between packets of one source
  Ticks stagger = 0;
  Ticks frame_interval = 4000;
  int frames = 12;
};

/// R1 on high-VT routers; swap routing/router_kind for other variants.
ExperimentConfig case_study_config(const CaseStudyLoad& load = {});

}  // namespace hetnoc::cli
