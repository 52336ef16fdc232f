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

/**
 * @file sim.hpp
 * @brief Flit-level simulation of a heterogeneous 3D mesh.
 *
 * One global tick equals one cycle of the fastest layer. A router of a layer
 * with period p reads each input port and drives each output port at most
 * once every p ticks. A flit entering a router is forwarded no earlier than
 * delta * p ticks after its arrival. A flit crossing upward into a slower
 * layer arrives one slow period after it was sent.
 *
 * High vertical-throughput routers widen the local and vertical datapaths of
 * slow routers to c_f flits. The fast router below collects c_f flits in a
 * shift register before sending upward and drains downward groups one flit
 * per tick.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetnoc/routing.hpp"
#include "hetnoc/topology.hpp"
#include "hetnoc/traffic.hpp"

namespace hetnoc {

enum class RouterKind { Standard, HighVT };

std::string_view to_string(RouterKind k) noexcept;
std::optional<RouterKind> parse_router_kind(std::string_view s) noexcept;

struct EnergyWeights {
  double buffer_write = 1.0;
  double buffer_read = 1.0;
  double crossbar = 1.0;
  double horizontal_link = 1.0;
  double vertical_link = 0.25;
  bool scale_by_feature_size = true;  ///< multiply by (tau / tau_min)^2 per layer
  friend bool operator==(const EnergyWeights&, const EnergyWeights&) = default;
};

struct SimParams {
  Ticks warmup_ticks = 1000;
  Ticks measure_ticks = 10000;
  Ticks drain_ticks = 20000;
  std::uint64_t seed = 1;
  Ticks watchdog_ticks = 10000;
  int buffer_depth = 8;
  int vcs = 4;
  int slow_vcs = 1;          ///< VCs in slow layers of high-VT networks
  std::vector<int> phases;   ///< per-layer clock phase, default 0
  Ticks hist_bin_ticks = 10;
  EnergyWeights energy;

  Ticks horizon() const noexcept { return warmup_ticks + measure_ticks; }
  Ticks end_tick() const noexcept { return warmup_ticks + measure_ticks + drain_ticks; }
  friend bool operator==(const SimParams&, const SimParams&) = default;
};

struct LayerActivity {
  std::uint64_t buffer_writes = 0;
  std::uint64_t buffer_reads = 0;
  std::uint64_t crossbar_traversals = 0;
  std::uint64_t horizontal_link_traversals = 0;
  std::uint64_t vertical_link_traversals = 0;
  friend bool operator==(const LayerActivity&, const LayerActivity&) = default;
};

struct PacketRecord {
  std::uint32_t id = 0;
  RouterId src;
  RouterId dst;
  int length = 1;
  Ticks created = -1;
  Ticks head_ejected = -1;
  Ticks tail_ejected = -1;
  Ticks flit_latency_sum = 0;  ///< over ejected flits, in ticks
  bool delivered() const noexcept { return tail_ejected >= 0; }
};

struct HistogramBin {
  double lower_ps = 0;
  double upper_ps = 0;
  std::uint64_t count = 0;
};

struct SimReport {
  Ticks ticks = 0;
  Picoseconds tick_ps = 1;
  std::uint64_t packets_created = 0;
  std::uint64_t packets_delivered = 0;
  std::uint64_t flits_injected = 0;
  std::uint64_t flits_ejected = 0;
  std::uint64_t flits_in_flight = 0;
  std::uint64_t measured_packets = 0;
  std::uint64_t measured_flits = 0;
  double avg_flit_latency_ps = 0;
  double p50_flit_latency_ps = 0;
  double p95_flit_latency_ps = 0;
  double p99_flit_latency_ps = 0;
  double max_flit_latency_ps = 0;
  double avg_head_latency_ps = 0;
  double avg_packet_latency_ps = 0;
  std::vector<double> accepted_throughput;  ///< per layer, flits per tick in the window
  std::vector<LayerActivity> activity;      ///< per layer
  double energy_proxy = 0;
  std::vector<HistogramBin> flit_latency_hist;
  std::vector<PacketRecord> packets;

  /// metric,value rows.
  std::string to_csv() const;
  /// bin_lower_ps,bin_upper_ps,count rows.
  std::string histogram_csv() const;
};

struct RunOptions {
  std::ostream* trace = nullptr;  ///< tick,router,port,flit_id,event rows
  /// Called after every simulated tick with (tick, injected, ejected, buffered) flit counts.
  std::function<void(Ticks, std::uint64_t, std::uint64_t, std::uint64_t)> on_tick;
};

/// Rejects parameter combinations the simulator cannot run.
/// @throws ConfigError.
void validate_sim(const TopologyGraph& g, const RoutingAlgorithm& alg, RouterKind kind, const SimParams& p);

/// Simulates an explicit schedule.
/// @throws ConfigError for invalid input; WatchdogAbort when the network stalls.
SimReport run_schedule(const TopologyGraph& g, const RoutingAlgorithm& alg, RouterKind kind,
                       const InjectionSchedule& schedule, const SimParams& p, const RunOptions& opt = {});

/// Generates traffic with p.seed and simulates it.
SimReport run(const TopologyGraph& g, const RoutingAlgorithm& alg, RouterKind kind, const TrafficSpec& traffic,
              const SimParams& p, const RunOptions& opt = {});

/// Zero-load probe: injects one packet per pair, spaced so they never meet,
/// and returns each packet's head latency in ticks.
std::vector<Ticks> measure_zero_load(const TopologyGraph& g, const RoutingAlgorithm& alg, RouterKind kind,
                                     const std::vector<std::pair<RouterId, RouterId>>& pairs, int length,
                                     const SimParams& p);

}  // namespace hetnoc
