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

#include "hetnoc/routing.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>

#include "hetnoc/perfmodel.hpp"

namespace hetnoc {

std::string_view to_string(RoutingVariant v) noexcept {
  switch (v) {
    case RoutingVariant::XYZ: return "XYZ";
    case RoutingVariant::R1: return "R1";
    case RoutingVariant::R2: return "R2";
  }
  return "?";
}

std::optional<RoutingVariant> parse_routing_variant(std::string_view s) noexcept {
  if (s == "XYZ" || s == "xyz") return RoutingVariant::XYZ;
  if (s == "R1" || s == "r1") return RoutingVariant::R1;
  if (s == "R2" || s == "r2") return RoutingVariant::R2;
  return std::nullopt;
}

std::string_view to_string(TieBreak t) noexcept { return t == TieBreak::Stay ? "stay" : "descend"; }

std::optional<TieBreak> parse_tie_break(std::string_view s) noexcept {
  if (s == "stay") return TieBreak::Stay;
  if (s == "descend") return TieBreak::Descend;
  return std::nullopt;
}

int RoutingDecision::size() const { return std::popcount(mask_); }

std::string to_string(RoutingDecision d) {
  std::string out = "{";
  for (Direction dir : kDirections) {
    if (!d.contains(dir)) continue;
    if (out.size() > 1) out += ',';
    out += to_string(dir);
  }
  return out + "}";
}

std::optional<Direction> select(RoutingDecision d) {
  if (d.empty()) return std::nullopt;
  if (d.size() > 1) throw DomainError("routing decision " + to_string(d) + " is not deterministic");
  for (Direction dir : kDirections)
    if (d.contains(dir)) return dir;
  return std::nullopt;
}

namespace {

// Sign of omega(b) - omega(a), computed without division.
int compare_speed(const TechnologyNode& a, const TechnologyNode& b) {
  const double lhs = b.router_pitch_um * a.head_delay * static_cast<double>(a.clk_period_ps);
  const double rhs = a.router_pitch_um * b.head_delay * static_cast<double>(b.clk_period_ps);
  return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

}  // namespace

void validate_routing(const RoutingAlgorithm& alg, const StackConfig& stack) {
  const int l = stack.layer_count();
  if (alg.target_layer < 0 || alg.target_layer > l)
    throw ConfigError(fmt::format("target layer {} outside [1, {}]", alg.target_layer, l));
  const auto n = alg.phi_override.size();
  if (n != 0 && n != 1 && n != static_cast<std::size_t>(l))
    throw ConfigError(fmt::format("phi override needs 1 or {} entries, got {}", l, n));
  for (auto p : alg.phi_override)
    if (p < 0) throw ConfigError("phi override entries must be >= 0");
  if (alg.variant == RoutingVariant::XYZ) return;
  for (int z = 1; z < l; ++z)
    for (int w = z + 1; w <= l; ++w)
      if (compare_speed(stack.tech(z), stack.tech(w)) < 0)
        throw ConfigError(fmt::format("{} needs propagation speed non-decreasing with depth; layer {} is faster than "
                                      "layer {}",
                                      to_string(alg.variant), z, w));
}

RoutingTable::RoutingTable(const StackConfig& stack, RoutingAlgorithm alg) : alg_(std::move(alg)) {
  validate_routing(alg_, stack);
  const int l = stack.layer_count();
  target_ = alg_.target_layer == 0 ? l : alg_.target_layer;
  for (int z = 1; z <= l; ++z) {
    const auto& ls = stack.layer(z);
    grids_.push_back(Grid{ls.grid_stride, ls.rows, ls.cols});
    omega_.push_back(propagation_speed(LayerTiming::of(stack, z)));
  }
  const LayerTiming fast = LayerTiming::of(stack, target_);
  for (int z = 1; z <= l; ++z) {
    std::int64_t phi = kUnboundedHops;
    if (z < target_) {
      if (alg_.phi_override.size() == 1)
        phi = alg_.phi_override[0];
      else if (!alg_.phi_override.empty())
        phi = alg_.phi_override[static_cast<std::size_t>(z - 1)];
      else
        phi = rerouting_threshold_hops(rerouting_threshold_phi(LayerTiming::of(stack, z), fast), stack.grid_unit_um());
    }
    phi_.push_back(phi);
  }
}

bool RoutingTable::descends_first(int from, int to) const {
  const double a = omega_.at(static_cast<std::size_t>(from - 1));
  const double b = omega_.at(static_cast<std::size_t>(to - 1));
  return b > a || (b == a && alg_.tie_break == TieBreak::Descend);
}

Address RoutingTable::projection(const Address& d, int z) const {
  const Grid& g = grids_.at(static_cast<std::size_t>(z - 1));
  return Address{g.stride * std::min(d.x / g.stride, g.cols - 1), g.stride * std::min(d.y / g.stride, g.rows - 1), z};
}

RoutingDecision RoutingTable::operator()(const Address& v, const Address& d) const {
  switch (alg_.variant) {
    case RoutingVariant::XYZ: return route_xyz(*this, v, d);
    case RoutingVariant::R1: return route_r1(*this, v, d);
    case RoutingVariant::R2: return route_r2(*this, v, d);
  }
  return {};
}

namespace {

// One dimension-order step toward the x/y of p, or nothing when aligned.
std::optional<Direction> planar_step(const Address& v, const Address& p) {
  if (v.x < p.x) return Direction::East;
  if (v.x > p.x) return Direction::West;
  if (v.y > p.y) return Direction::North;
  if (v.y < p.y) return Direction::South;
  return std::nullopt;
}

}  // namespace

RoutingDecision route_xyz(const RoutingTable& t, const Address& v, const Address& d) {
  if (v == d) return RoutingDecision::local();
  const Address p = v.z < d.z ? t.projection(d, v.z) : d;
  if (auto step = planar_step(v, p)) return RoutingDecision::of(*step);
  if (v.z < d.z) return RoutingDecision::of(Direction::Down);
  return RoutingDecision::of(Direction::Up);
}

RoutingDecision route_r1(const RoutingTable& t, const Address& v, const Address& d) {
  if (v == d) return RoutingDecision::local();
  if (v.z < d.z) {
    if (t.descends_first(v.z, d.z)) return RoutingDecision::of(Direction::Down);
    return route_xyz(t, v, d);
  }
  if (auto step = planar_step(v, d)) return RoutingDecision::of(*step);
  return RoutingDecision::of(Direction::Up);
}

RoutingDecision route_r2(const RoutingTable& t, const Address& v, const Address& d) {
  if (v == d) return RoutingDecision::local();
  if (v.z >= d.z && hop_distance(v, d) > t.phi(v.z)) return RoutingDecision::of(Direction::Down);
  return route_r1(t, v, d);
}

RouteFunction make_route_function(const StackConfig& stack, const RoutingAlgorithm& alg) {
  auto table = std::make_shared<const RoutingTable>(stack, alg);
  return [table](const Address& v, const Address& d) { return (*table)(v, d); };
}

std::string_view to_string(WalkStatus s) noexcept {
  switch (s) {
    case WalkStatus::Delivered: return "delivered";
    case WalkStatus::StoppedEarly: return "stopped_early";
    case WalkStatus::MissingLink: return "missing_link";
    case WalkStatus::MultiChoice: return "multi_choice";
    case WalkStatus::TooLong: return "too_long";
  }
  return "?";
}

RouteWalk walk_route(const TopologyGraph& g, const RouteFunction& r, RouterId s, RouterId d, std::size_t hop_bound) {
  RouteWalk w;
  w.routers.push_back(s);
  const Address dst = g.address(d);
  RouterId cur = s;
  for (std::size_t hops = 0;; ++hops) {
    const RoutingDecision dec = r(g.address(cur), dst);
    if (dec.empty()) {
      w.status = cur == d ? WalkStatus::Delivered : WalkStatus::StoppedEarly;
      return w;
    }
    if (dec.size() > 1) {
      w.status = WalkStatus::MultiChoice;
      return w;
    }
    const auto next = g.neighbor(cur, *select(dec));
    if (!next) {
      w.status = WalkStatus::MissingLink;
      return w;
    }
    if (hops == hop_bound) {
      w.status = WalkStatus::TooLong;
      return w;
    }
    cur = *next;
    w.routers.push_back(cur);
  }
}

std::vector<RouterId> trace_route(const TopologyGraph& g, const RouteFunction& r, RouterId s, RouterId d) {
  auto w = walk_route(g, r, s, d, g.router_count());
  if (w.status != WalkStatus::Delivered)
    throw DomainError(fmt::format("route {} -> {} failed: {}", to_string(g.address(s)), to_string(g.address(d)),
                                  to_string(w.status)));
  return std::move(w.routers);
}

}  // namespace hetnoc
