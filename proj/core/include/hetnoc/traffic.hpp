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
 * @file traffic.hpp
 * @brief Traffic descriptions and their expansion into injection schedules.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "hetnoc/topology.hpp"
#include "hetnoc/types.hpp"

namespace hetnoc {

/// Bernoulli injection at every router cycle with probability rate / packet_length.
struct UniformTraffic {
  double rate = 0.04;  ///< flits per router per router cycle
  int packet_length = 32;
  Ticks start = 0;
  Ticks stop = -1;  ///< exclusive; negative means the simulation horizon
  friend bool operator==(const UniformTraffic&, const UniformTraffic&) = default;
};

struct FlowStage {
  std::string name;
  std::vector<Address> routers;
  friend bool operator==(const FlowStage&, const FlowStage&) = default;
};

/// Every router of `from` sends packets_per_source packets per frame to the
/// routers of `to`, assigned round-robin.
struct Flow {
  std::string from;
  std::string to;
  int packets_per_source = 1;
  int packet_length = 32;
  Ticks spacing = 0;  ///< ticks between consecutive packets of one source
  Ticks stagger = 0;  ///< extra delay per source index within the stage
  friend bool operator==(const Flow&, const Flow&) = default;
};

/// Stage pipeline. A router of a stage with inputs starts sending frame f once
/// it has received all of its frame-f input packets. Packet k of a source is
/// released i * stagger + k * spacing ticks after source i becomes ready.
struct FlowGraphTraffic {
  std::vector<FlowStage> stages;
  std::vector<Flow> flows;
  Ticks frame_interval = 1000;
  int frames = 1;
  Ticks start = 0;
  friend bool operator==(const FlowGraphTraffic&, const FlowGraphTraffic&) = default;
};

struct TraceEntry {
  Ticks tick = 0;
  Address src;
  Address dst;
  int length = 1;
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct TraceTraffic {
  std::vector<TraceEntry> entries;
  friend bool operator==(const TraceTraffic&, const TraceTraffic&) = default;
};

using TrafficSpec = std::variant<std::monostate, UniformTraffic, FlowGraphTraffic, TraceTraffic>;

struct ScheduledPacket {
  std::uint32_t id = 0;
  RouterId src;
  RouterId dst;
  int length = 1;
  Ticks release = 0;          ///< earliest creation tick
  std::int32_t wait_gate = -1;  ///< held back until this gate opens
  std::int32_t feed_gate = -1;  ///< counts toward this gate on delivery
  Ticks gate_offset = 0;        ///< delay after the wait gate opens
};

/// Data dependency: opens when `required` feeding packets have been delivered.
struct Gate {
  RouterId router;
  int required = 0;
  Ticks earliest = 0;
};

struct InjectionSchedule {
  std::vector<ScheduledPacket> packets;
  std::vector<Gate> gates;
  bool empty() const noexcept { return packets.empty(); }
};

/// @throws ConfigError for a malformed spec (rate out of range, unknown
///         routers or stages, cyclic flow graph, ...).
void validate_traffic(const TrafficSpec& spec, const TopologyGraph& g);

/// Expands a spec. Uniform traffic draws at router cycles in [start, stop),
/// with stop defaulting to `horizon`. `phases` gives per-layer clock phases.
InjectionSchedule generate_traffic(const TrafficSpec& spec, const TopologyGraph& g, std::uint64_t seed, Ticks horizon,
                                   const std::vector<int>& phases = {});

/// Reads tick,src_x,src_y,src_z,dst_x,dst_y,dst_z,length rows.
std::vector<TraceEntry> read_trace_csv(std::istream& in);

/// Portable uniform double in [0, 1) from a 64-bit draw.
inline double unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace hetnoc
