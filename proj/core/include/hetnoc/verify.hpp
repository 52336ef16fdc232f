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
 * @file verify.hpp
 * @brief Executable deadlock and livelock checks for deterministic routing.
 *
 * Every check enumerates the route of each (source, destination) pair. The
 * channel dependency graph has one vertex per link and an edge a -> b whenever
 * some route uses b directly after a.
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hetnoc/routing.hpp"
#include "hetnoc/topology.hpp"

namespace hetnoc {

/// 6x6 boolean matrix over (incoming, outgoing) directions.
class TurnMatrix {
 public:
  bool operator()(Direction f, Direction g) const { return cells_[idx(f, g)] != 0; }
  void set(Direction f, Direction g, bool on = true) { cells_[idx(f, g)] = on ? 1 : 0; }
  /// Entries set here but not in `ref`.
  std::vector<std::pair<Direction, Direction>> excess_over(const TurnMatrix& ref) const;
  bool subset_of(const TurnMatrix& ref) const { return excess_over(ref).empty(); }
  /// Rows f, columns g in north,east,south,west,up,down order.
  std::string to_csv() const;
  friend bool operator==(const TurnMatrix&, const TurnMatrix&) = default;

 private:
  static std::size_t idx(Direction f, Direction g) {
    return static_cast<std::size_t>(index_of(f) * 6 + index_of(g));
  }
  std::array<std::uint8_t, 36> cells_{};
};

/// Turns permitted for R1 and R2.
TurnMatrix layer_aware_turns();
/// Turns permitted for XYZ: X before Y before Z, plus planar moves after a
/// descent into a finer grid.
TurnMatrix dimension_order_turns();
TurnMatrix reference_turns(RoutingVariant v);
/// Reference for a configured algorithm. A layer pair with equal propagation
/// speed and the stay tie-break routes in dimension order, so R1 and R2 then
/// also admit the planar-to-down turns.
TurnMatrix reference_turns(const StackConfig& stack, const RoutingAlgorithm& alg);

struct ChannelDependencyGraph {
  std::vector<Arc> vertices;
  std::vector<std::vector<std::uint32_t>> successors;

  std::size_t edge_count() const;
  bool has_edge(std::uint32_t a, std::uint32_t b) const;
};

struct VerifyOptions {
  std::size_t max_exhaustive_routers = 144;  ///< larger graphs use sampled pairs
  std::size_t sample_pairs = 20000;
  std::uint64_t seed = 1;
};

struct PairRoute {
  RouterId src;
  RouterId dst;
  RouteWalk walk;
};

struct RouteEnumeration {
  std::vector<PairRoute> routes;
  bool sampled = false;
};

RouteEnumeration enumerate_routes(const TopologyGraph& g, const RouteFunction& r, std::size_t hop_bound,
                                  const VerifyOptions& opt = {});

/// @throws DomainError naming the offending pair when a route does not terminate.
ChannelDependencyGraph build_cdg(const TopologyGraph& g, const RouteFunction& r, const VerifyOptions& opt = {});
ChannelDependencyGraph build_cdg(const TopologyGraph& g, const RouteEnumeration& e);

/// A closed walk of dependencies as CDG vertex indices, or nullopt if acyclic.
std::optional<std::vector<std::uint32_t>> find_cycle(const ChannelDependencyGraph& cdg);
/// True if consecutive entries (and last to first) are CDG edges.
bool is_closed_walk(const ChannelDependencyGraph& cdg, const std::vector<std::uint32_t>& cycle);

struct ConnectivityVerdict {
  bool connected = true;
  std::optional<std::pair<RouterId, RouterId>> counterexample;
  WalkStatus failure = WalkStatus::Delivered;
};

struct LivelockVerdict {
  bool livelock_free = true;
  std::size_t max_route_length = 0;  ///< hops
  std::optional<std::pair<RouterId, RouterId>> witness;
};

ConnectivityVerdict check_connected(const TopologyGraph& g, const RouteFunction& r, const VerifyOptions& opt = {});
/// @throws DomainError when hop_bound < |V|.
LivelockVerdict check_livelock_free(const TopologyGraph& g, const RouteFunction& r, std::size_t hop_bound,
                                    const VerifyOptions& opt = {});
TurnMatrix extract_turn_matrix(const TopologyGraph& g, const RouteFunction& r, const VerifyOptions& opt = {});

struct VerificationReport {
  bool sampled = false;
  std::size_t pairs = 0;
  ConnectivityVerdict connectivity;
  bool cdg_acyclic = true;
  std::size_t cdg_edges = 0;
  std::vector<Arc> cycle;
  LivelockVerdict livelock;
  TurnMatrix turns;
  TurnMatrix reference;
  std::vector<std::pair<Direction, Direction>> excess_turns;

  bool turns_ok() const { return excess_turns.empty(); }
  bool passed() const { return connectivity.connected && cdg_acyclic && livelock.livelock_free && turns_ok(); }
  /// Header check,passed,detail.
  std::string verdict_csv(const TopologyGraph& g) const;
  /// Header step,src_id,dst_id,src,dst,direction.
  std::string cycle_csv(const TopologyGraph& g) const;
};

VerificationReport verify_routing(const TopologyGraph& g, const RouteFunction& r, const TurnMatrix& reference,
                                  const VerifyOptions& opt = {});

/// Deliberately unsafe routing: XY toward destinations with even x+y and YX
/// toward odd ones, then Z. It permits every planar turn.
RouteFunction make_adversarial_routing();

}  // namespace hetnoc
