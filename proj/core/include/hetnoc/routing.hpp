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
 * @file routing.hpp
 * @brief Deterministic routing functions: dimension-order XYZ, R1 and R2.
 *
 * R1 keeps packets in the fastest available layer: a packet whose destination
 * lies below descends first, then resolves X and Y, then climbs. R2 adds a
 * detour: when the remaining Manhattan distance exceeds the per-layer
 * threshold Phi, the packet descends toward the target layer Lambda even if
 * its destination is in the current layer.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetnoc/topology.hpp"
#include "hetnoc/types.hpp"

namespace hetnoc {

enum class RoutingVariant { XYZ, R1, R2 };
enum class TieBreak { Stay, Descend };

std::string_view to_string(RoutingVariant v) noexcept;
std::optional<RoutingVariant> parse_routing_variant(std::string_view s) noexcept;
std::string_view to_string(TieBreak t) noexcept;
std::optional<TieBreak> parse_tie_break(std::string_view s) noexcept;

struct RoutingAlgorithm {
  RoutingVariant variant = RoutingVariant::XYZ;
  int target_layer = 0;  ///< Lambda; 0 selects the bottom layer
  TieBreak tie_break = TieBreak::Stay;
  /// Hop thresholds per layer (size 1 broadcasts). Empty derives them from the stack.
  std::vector<std::int64_t> phi_override;

  friend bool operator==(const RoutingAlgorithm&, const RoutingAlgorithm&) = default;
};

/// Set of output directions; empty means deliver locally.
class RoutingDecision {
 public:
  constexpr RoutingDecision() = default;
  static constexpr RoutingDecision local() { return {}; }
  static constexpr RoutingDecision of(Direction d) {
    RoutingDecision r;
    r.insert(d);
    return r;
  }
  constexpr void insert(Direction d) { mask_ = static_cast<std::uint8_t>(mask_ | (1u << index_of(d))); }
  constexpr bool contains(Direction d) const { return (mask_ >> index_of(d)) & 1u; }
  constexpr bool empty() const { return mask_ == 0; }
  int size() const;
  friend constexpr bool operator==(RoutingDecision, RoutingDecision) = default;

 private:
  std::uint8_t mask_ = 0;
};

std::string to_string(RoutingDecision d);

/// Collapses a decision to one direction; nullopt means local delivery.
/// @throws DomainError for a multi-direction set.
std::optional<Direction> select(RoutingDecision d);

/// Per-configuration routing state: layer grids, descend flags and thresholds.
class RoutingTable {
 public:
  RoutingTable(const StackConfig& stack, RoutingAlgorithm alg);

  const RoutingAlgorithm& algorithm() const noexcept { return alg_; }
  int layer_count() const noexcept { return static_cast<int>(grids_.size()); }
  int target_layer() const noexcept { return target_; }
  /// Hop threshold of layer z toward the target layer (grid units).
  std::int64_t phi(int z) const { return phi_.at(static_cast<std::size_t>(z - 1)); }
  /// Whether a packet in layer `from` heading to deeper layer `to` descends first.
  bool descends_first(int from, int to) const;
  /// Nearest grid point of layer z to the x/y of d (clamped to the layer edge).
  Address projection(const Address& d, int z) const;

  RoutingDecision operator()(const Address& v, const Address& d) const;

 private:
  struct Grid {
    int stride;
    int rows;
    int cols;
  };
  RoutingAlgorithm alg_;
  std::vector<Grid> grids_;
  std::vector<double> omega_;
  std::vector<std::int64_t> phi_;
  int target_ = 0;
};

RoutingDecision route_xyz(const RoutingTable& t, const Address& v, const Address& d);
RoutingDecision route_r1(const RoutingTable& t, const Address& v, const Address& d);
RoutingDecision route_r2(const RoutingTable& t, const Address& v, const Address& d);

using RouteFunction = std::function<RoutingDecision(const Address&, const Address&)>;

/// Checks algorithm parameters against a stack.
/// @throws ConfigError on an invalid target layer, threshold or layer ordering.
void validate_routing(const RoutingAlgorithm& alg, const StackConfig& stack);

RouteFunction make_route_function(const StackConfig& stack, const RoutingAlgorithm& alg);

enum class WalkStatus { Delivered, StoppedEarly, MissingLink, MultiChoice, TooLong };
std::string_view to_string(WalkStatus s) noexcept;

struct RouteWalk {
  WalkStatus status = WalkStatus::Delivered;
  std::vector<RouterId> routers;  ///< visited routers, source first
};

/// Applies r hop by hop from s until delivery, failure, or hop_bound hops.
RouteWalk walk_route(const TopologyGraph& g, const RouteFunction& r, RouterId s, RouterId d, std::size_t hop_bound);

/// Like walk_route but throws DomainError unless the packet is delivered.
std::vector<RouterId> trace_route(const TopologyGraph& g, const RouteFunction& r, RouterId s, RouterId d);

}  // namespace hetnoc
