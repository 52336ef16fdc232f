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
 * @file perfmodel.hpp
 * @brief Zero-load latency, throughput, propagation speed and detour thresholds.
 */

#pragma once

#include <cstdint>
#include <limits>
#include <span>

#include "hetnoc/topology.hpp"
#include "hetnoc/types.hpp"

namespace hetnoc {

struct Packet {
  Position src;
  Position dst;
  int length = 1;
};

/// Timing view of one layer.
struct LayerTiming {
  int layer = 1;
  int head_delay = 3;
  int pipeline_depth = 2;
  Picoseconds clk_period_ps = 1000;
  double router_pitch_um = 1000.0;

  static LayerTiming of(const StackConfig& cfg, int z);
  Picoseconds head_time_ps() const noexcept { return head_delay * clk_period_ps; }
};

enum class Vertical { Up, Down };

/// Hop count that exceeds every chip dimension; stands for "never".
inline constexpr std::int64_t kUnboundedHops = (std::int64_t{1} << 31) - 1;

inline bool is_unbounded(double phi_um) noexcept { return phi_um == std::numeric_limits<double>::infinity(); }

/// Manhattan distance between source and destination, in um.
double horizontal_distance(const Packet& pkt);

/// (s / rho + 1) * delta * clk, in ps. Requires both endpoints in the timing's layer.
double head_latency_h(const Packet& pkt, const LayerTiming& t);

/// l / ((l + delta - chi) * clk), in flits per second.
double throughput_h(const Packet& pkt, const LayerTiming& t);

/// Sum of delta * clk over the spanned layers. Moving up adds one cycle of the
/// slower endpoint for every crossing into a slower clock domain.
Picoseconds head_latency_v(const Packet& pkt, const StackConfig& stack, Vertical dir);

/// Minimum horizontal throughput over layers first..last (inclusive), flits per second.
double throughput_v(const Packet& pkt, const StackConfig& stack, int first, int last);

/// rho / (delta * clk), in m/s.
double propagation_speed(const LayerTiming& t);

/// Distance beyond which a detour through the faster layer pays off, in um.
/// Returns +infinity when it never pays.
double rerouting_threshold_phi(const LayerTiming& slow, const LayerTiming& fast);

/// ceil(phi / fast_pitch); kUnboundedHops for an unbounded phi.
std::int64_t rerouting_threshold_hops(double phi_um, double fast_pitch_um);

/// Zero-load head latency along a concrete router sequence.
/// @throws DomainError if consecutive routers are not linked.
Picoseconds route_latency_estimate(const TopologyGraph& g, std::span<const RouterId> route);

/// Interval between consecutive flits of one packet on the route, in ps.
/// With wide slow-layer ports, slow routers that only use local and vertical
/// ports forward at the fastest clock.
Picoseconds route_flit_interval_ps(const TopologyGraph& g, std::span<const RouterId> route, bool wide_vertical);

/// Average zero-load flit latency: head latency plus half the serialization time.
double zero_load_flit_latency_ps(const TopologyGraph& g, std::span<const RouterId> route, int length,
                                 bool wide_vertical);

}  // namespace hetnoc
