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

#include "hetnoc/perfmodel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace hetnoc {

LayerTiming LayerTiming::of(const StackConfig& cfg, int z) {
  const auto& t = cfg.tech(z);
  return LayerTiming{z, t.head_delay, t.pipeline_depth, t.clk_period_ps, t.router_pitch_um};
}

double horizontal_distance(const Packet& pkt) {
  return std::abs(pkt.src.x_um - pkt.dst.x_um) + std::abs(pkt.src.y_um - pkt.dst.y_um);
}

double head_latency_h(const Packet& pkt, const LayerTiming& t) {
  if (pkt.src.z != t.layer || pkt.dst.z != t.layer)
    throw DomainError("horizontal latency needs both endpoints in the timing layer");
  const double s = horizontal_distance(pkt);
  return (s / t.router_pitch_um + 1.0) * static_cast<double>(t.head_time_ps());
}

double throughput_h(const Packet& pkt, const LayerTiming& t) {
  if (t.pipeline_depth > t.head_delay) throw DomainError("pipeline depth exceeds head delay");
  if (pkt.length < 1) throw DomainError("packet length must be >= 1");
  const double l = pkt.length;
  return l / ((l + t.head_delay - t.pipeline_depth) * static_cast<double>(t.clk_period_ps) * 1e-12);
}

Picoseconds head_latency_v(const Packet& pkt, const StackConfig& stack, Vertical dir) {
  const int a = pkt.src.z;
  const int b = pkt.dst.z;
  if (dir == Vertical::Down && a > b) throw DomainError("downward latency needs source above destination");
  if (dir == Vertical::Up && a <= b) throw DomainError("upward latency needs source strictly below destination");
  const int top = std::min(a, b);
  const int bottom = std::max(a, b);
  Picoseconds sum = 0;
  for (int z = top; z <= bottom; ++z) sum += stack.tech(z).head_delay * stack.tech(z).clk_period_ps;
  if (dir == Vertical::Up) {
    for (int z = top; z < bottom; ++z)
      if (stack.tech(z).clk_period_ps > stack.tech(z + 1).clk_period_ps) sum += stack.tech(z).clk_period_ps;
  }
  return sum;
}

double throughput_v(const Packet& pkt, const StackConfig& stack, int first, int last) {
  if (first > last || first < 1 || last > stack.layer_count()) throw DomainError("empty or invalid layer span");
  double best = std::numeric_limits<double>::infinity();
  for (int z = first; z <= last; ++z) {
    Packet local = pkt;
    local.src.z = local.dst.z = z;
    best = std::min(best, throughput_h(local, LayerTiming::of(stack, z)));
  }
  return best;
}

double propagation_speed(const LayerTiming& t) {
  return (t.router_pitch_um * 1e-6) / (t.head_delay * static_cast<double>(t.clk_period_ps) * 1e-12);
}

double rerouting_threshold_phi(const LayerTiming& slow, const LayerTiming& fast) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (slow.layer >= fast.layer) return kInf;
  const double ds = static_cast<double>(slow.head_time_ps());
  const double df = static_cast<double>(fast.head_time_ps());
  const double cs = static_cast<double>(slow.clk_period_ps);
  const double rs = slow.router_pitch_um;
  const double rf = fast.router_pitch_um;
  const double denom = ds * rf - df * rs;
  if (!(denom > 0.0)) return kInf;
  return (ds + df + cs) * rs * rf / denom;
}

std::int64_t rerouting_threshold_hops(double phi_um, double fast_pitch_um) {
  if (!(fast_pitch_um > 0.0)) throw DomainError("router pitch must be > 0");
  if (is_unbounded(phi_um)) return kUnboundedHops;
  const double hops = std::ceil(phi_um / fast_pitch_um);
  return hops >= static_cast<double>(kUnboundedHops) ? kUnboundedHops : static_cast<std::int64_t>(hops);
}

namespace {

void check_route(const TopologyGraph& g, std::span<const RouterId> route) {
  if (route.empty()) throw DomainError("empty route");
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    const auto d = direction_between(g.address(route[i]), g.address(route[i + 1]));
    if (!d || g.neighbor(route[i], *d) != route[i + 1])
      throw DomainError(fmt::format("route is disconnected between routers {} and {}", route[i].value,
                                    route[i + 1].value));
  }
}

}  // namespace

Picoseconds route_latency_estimate(const TopologyGraph& g, std::span<const RouterId> route) {
  check_route(g, route);
  const auto& st = g.stack();
  Picoseconds sum = 0;
  for (std::size_t i = 0; i < route.size(); ++i) {
    const int z = g.layer_of(route[i]);
    sum += st.tech(z).head_delay * st.tech(z).clk_period_ps;
    if (i > 0) {
      const int prev = g.layer_of(route[i - 1]);
      if (z < prev && st.tech(z).clk_period_ps > st.tech(prev).clk_period_ps) sum += st.tech(z).clk_period_ps;
    }
  }
  return sum;
}

Picoseconds route_flit_interval_ps(const TopologyGraph& g, std::span<const RouterId> route, bool wide_vertical) {
  check_route(g, route);
  const auto& st = g.stack();
  const Picoseconds fastest = st.fastest_period_ps();
  Picoseconds interval = 0;
  for (std::size_t i = 0; i < route.size(); ++i) {
    const int z = g.layer_of(route[i]);
    Picoseconds p = st.tech(z).clk_period_ps;
    if (wide_vertical && p > fastest) {
      const bool horizontal_in = i > 0 && g.layer_of(route[i - 1]) == z;
      const bool horizontal_out = i + 1 < route.size() && g.layer_of(route[i + 1]) == z;
      if (!horizontal_in && !horizontal_out) p = fastest;
    }
    interval = std::max(interval, p);
  }
  return interval;
}

double zero_load_flit_latency_ps(const TopologyGraph& g, std::span<const RouterId> route, int length,
                                 bool wide_vertical) {
  if (length < 1) throw DomainError("packet length must be >= 1");
  const double head = static_cast<double>(route_latency_estimate(g, route));
  const double interval = static_cast<double>(route_flit_interval_ps(g, route, wide_vertical));
  return head + 0.5 * (length - 1) * interval;
}

}  // namespace hetnoc
