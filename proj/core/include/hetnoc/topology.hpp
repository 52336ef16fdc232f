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
 * @file topology.hpp
 * @brief Layer stack description and the derived 3D mesh router digraph.
 *
 * All layers share the logical grid of the bottom (finest) layer. A layer with
 * stride k occupies the logical positions (k*i, k*j). The occupied positions of
 * every layer must also be occupied in the layer below it, so each non-bottom
 * router owns exactly one down link.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hetnoc/types.hpp"

namespace hetnoc {

/// Per-layer technology parameters.
struct TechnologyNode {
  double feature_size_nm = 45.0;    ///< tau
  Picoseconds clk_period_ps = 1000; ///< clk
  int head_delay = 3;               ///< delta, cycles
  int pipeline_depth = 2;           ///< chi, cycles
  double router_pitch_um = 1000.0;  ///< rho

  /// @throws ConfigError when an invariant is violated.
  void validate() const;
  friend bool operator==(const TechnologyNode&, const TechnologyNode&) = default;
};

struct LayerSpec {
  std::string name;
  int rows = 2;
  int cols = 2;
  int grid_stride = 1;
  TechnologyNode tech;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Ordered layer list; index 1 is the topmost (coarsest) layer.
struct StackConfig {
  std::vector<LayerSpec> layers;

  int layer_count() const noexcept { return static_cast<int>(layers.size()); }
  /// 1-based layer access.
  const LayerSpec& layer(int z) const;
  LayerSpec& layer(int z);
  const TechnologyNode& tech(int z) const { return layer(z).tech; }

  Picoseconds fastest_period_ps() const;
  /// Clock period of layer z in ticks of the fastest layer.
  int period_ticks(int z) const;
  /// Physical length of one logical grid step (bottom-layer router pitch).
  double grid_unit_um() const { return layers.back().tech.router_pitch_um; }
  /// Logical grid extent: one past the largest occupied x / y coordinate.
  int logical_width() const;
  int logical_height() const;

  /// True when the address names an occupied grid point of its layer.
  bool contains(const Address& a) const noexcept;

  /// @throws ConfigError on a violated stack invariant.
  void validate() const;

  friend bool operator==(const StackConfig&, const StackConfig&) = default;
};

/// A directed link between adjacent routers.
struct Arc {
  RouterId src;
  RouterId dst;
  friend constexpr bool operator==(const Arc&, const Arc&) = default;
};

class TopologyGraph {
 public:
  explicit TopologyGraph(StackConfig cfg);

  const StackConfig& stack() const noexcept { return stack_; }
  std::size_t router_count() const noexcept { return addresses_.size(); }

  const Address& address(RouterId r) const { return addresses_.at(r.value); }
  int layer_of(RouterId r) const { return address(r).z; }
  Position position(RouterId r) const;

  std::optional<RouterId> find(const Address& a) const noexcept;
  RouterId at(const Address& a) const;

  std::optional<RouterId> neighbor(RouterId r, Direction d) const noexcept;
  /// @throws DomainError when the arc is not a link of the graph.
  Direction classify(const Arc& a) const;

  std::span<const Arc> arcs() const noexcept { return arcs_; }
  /// Index of the arc leaving r in direction d, if the link exists.
  std::optional<std::uint32_t> arc_index(RouterId r, Direction d) const noexcept;
  Direction arc_direction(std::uint32_t arc) const { return arc_dirs_.at(arc); }

  /// Routers of one layer, in id order.
  std::vector<RouterId> routers_in_layer(int z) const;

  /// Adjacency list as CSV with header src_id,dst_id,direction.
  std::string to_csv() const;

 private:
  StackConfig stack_;
  std::vector<Address> addresses_;
  std::vector<std::int32_t> lookup_;  // (z-1, y, x) -> id, -1 when empty
  std::vector<std::array<std::int32_t, 6>> links_;  // per router, arc index or -1
  std::vector<Arc> arcs_;
  std::vector<Direction> arc_dirs_;
  int width_ = 0;
  int height_ = 0;
};

TopologyGraph build_topology(const StackConfig& cfg);

inline std::optional<RouterId> neighbor(const TopologyGraph& g, RouterId v, Direction d) {
  return g.neighbor(v, d);
}
inline Direction classify_arc(const TopologyGraph& g, const Arc& a) { return g.classify(a); }

/// x = w_x * grid unit, y = w_y * grid unit.
/// @throws DomainError for an address that is not occupied.
Position address_to_position(const StackConfig& cfg, const Address& w);

/// Manhattan distance on the logical grid, ignoring z.
constexpr int hop_distance(const Address& v, const Address& d) noexcept {
  const int dx = v.x > d.x ? v.x - d.x : d.x - v.x;
  const int dy = v.y > d.y ? v.y - d.y : d.y - v.y;
  return dx + dy;
}

/// Direction of the coordinate change from v to an adjacent w, if any.
std::optional<Direction> direction_between(const Address& v, const Address& w) noexcept;

}  // namespace hetnoc
