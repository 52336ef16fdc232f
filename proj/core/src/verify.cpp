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

#include "hetnoc/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <random>
#include <sstream>

namespace hetnoc {

namespace {

using D = Direction;

TurnMatrix from_rows(const std::array<std::array<int, 6>, 6>& rows) {
  TurnMatrix m;
  for (Direction f : kDirections)
    for (Direction g : kDirections)
      m.set(f, g, rows[static_cast<std::size_t>(index_of(f))][static_cast<std::size_t>(index_of(g))] != 0);
  return m;
}

std::pair<RouterId, RouterId> pair_of(const PairRoute& p) { return {p.src, p.dst}; }

}  // namespace

std::vector<std::pair<Direction, Direction>> TurnMatrix::excess_over(const TurnMatrix& ref) const {
  std::vector<std::pair<Direction, Direction>> out;
  for (Direction f : kDirections)
    for (Direction g : kDirections)
      if ((*this)(f, g) && !ref(f, g)) out.emplace_back(f, g);
  return out;
}

std::string TurnMatrix::to_csv() const {
  std::ostringstream os;
  os << "from,north,east,south,west,up,down\n";
  for (Direction f : kDirections) {
    os << to_string(f);
    for (Direction g : kDirections) os << ',' << ((*this)(f, g) ? 1 : 0);
    os << '\n';
  }
  return os.str();
}

TurnMatrix layer_aware_turns() {
  //        n  e  s  w  u  d
  return from_rows({{{1, 0, 0, 0, 1, 0},
                     {1, 1, 1, 0, 1, 0},
                     {0, 0, 1, 0, 1, 0},
                     {1, 0, 1, 1, 1, 0},
                     {0, 0, 0, 0, 1, 0},
                     {1, 1, 1, 1, 0, 1}}});
}

TurnMatrix dimension_order_turns() {
  //        n  e  s  w  u  d
  return from_rows({{{1, 0, 0, 0, 1, 1},
                     {1, 1, 1, 0, 1, 1},
                     {0, 0, 1, 0, 1, 1},
                     {1, 0, 1, 1, 1, 1},
                     {0, 0, 0, 0, 1, 0},
                     {1, 1, 1, 1, 0, 1}}});
}

TurnMatrix reference_turns(RoutingVariant v) {
  return v == RoutingVariant::XYZ ? dimension_order_turns() : layer_aware_turns();
}

TurnMatrix reference_turns(const StackConfig& stack, const RoutingAlgorithm& alg) {
  TurnMatrix ref = reference_turns(alg.variant);
  if (alg.variant == RoutingVariant::XYZ) return ref;
  const RoutingTable table(stack, alg);
  bool stays = false;
  for (int a = 1; a < stack.layer_count(); ++a)
    for (int b = a + 1; b <= stack.layer_count(); ++b) stays = stays || !table.descends_first(a, b);
  if (stays)
    for (auto f : {Direction::North, Direction::East, Direction::South, Direction::West}) ref.set(f, Direction::Down);
  return ref;
}

std::size_t ChannelDependencyGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : successors) n += s.size();
  return n;
}

bool ChannelDependencyGraph::has_edge(std::uint32_t a, std::uint32_t b) const {
  if (a >= successors.size()) return false;
  const auto& s = successors[a];
  return std::binary_search(s.begin(), s.end(), b);
}

RouteEnumeration enumerate_routes(const TopologyGraph& g, const RouteFunction& r, std::size_t hop_bound,
                                  const VerifyOptions& opt) {
  RouteEnumeration e;
  const auto n = static_cast<std::uint32_t>(g.router_count());
  if (g.router_count() <= opt.max_exhaustive_routers) {
    e.routes.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (std::uint32_t s = 0; s < n; ++s)
      for (std::uint32_t d = 0; d < n; ++d)
        if (s != d) e.routes.push_back({RouterId{s}, RouterId{d}, walk_route(g, r, RouterId{s}, RouterId{d}, hop_bound)});
    return e;
  }
  e.sampled = true;
  std::mt19937_64 rng(opt.seed);
  for (std::size_t i = 0; i < opt.sample_pairs; ++i) {
    const auto s = static_cast<std::uint32_t>(rng() % n);
    auto d = static_cast<std::uint32_t>(rng() % (n - 1));
    if (d >= s) ++d;
    e.routes.push_back({RouterId{s}, RouterId{d}, walk_route(g, r, RouterId{s}, RouterId{d}, hop_bound)});
  }
  return e;
}

ChannelDependencyGraph build_cdg(const TopologyGraph& g, const RouteEnumeration& e) {
  ChannelDependencyGraph cdg;
  cdg.vertices.assign(g.arcs().begin(), g.arcs().end());
  cdg.successors.resize(cdg.vertices.size());
  for (const auto& pr : e.routes) {
    const auto& path = pr.walk.routers;
    std::optional<std::uint32_t> prev;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const auto dir = direction_between(g.address(path[i]), g.address(path[i + 1]));
      const auto arc = g.arc_index(path[i], *dir);
      if (prev) cdg.successors[*prev].push_back(*arc);
      prev = arc;
    }
  }
  for (auto& s : cdg.successors) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return cdg;
}

ChannelDependencyGraph build_cdg(const TopologyGraph& g, const RouteFunction& r, const VerifyOptions& opt) {
  const auto e = enumerate_routes(g, r, g.router_count(), opt);
  for (const auto& pr : e.routes)
    if (pr.walk.status == WalkStatus::TooLong)
      throw DomainError(fmt::format("routing does not terminate for {} -> {}", to_string(g.address(pr.src)),
                                    to_string(g.address(pr.dst))));
  return build_cdg(g, e);
}

std::optional<std::vector<std::uint32_t>> find_cycle(const ChannelDependencyGraph& cdg) {
  const std::size_t n = cdg.successors.size();
  enum : std::uint8_t { kWhite, kGray, kBlack };
  std::vector<std::uint8_t> color(n, kWhite);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    stack.emplace_back(root, 0);
    color[root] = kGray;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == cdg.successors[v].size()) {
        color[v] = kBlack;
        stack.pop_back();
        continue;
      }
      const std::uint32_t w = cdg.successors[v][next++];
      if (color[w] == kGray) {
        std::vector<std::uint32_t> cycle;
        auto it = std::find_if(stack.begin(), stack.end(), [w](const auto& f) { return f.first == w; });
        for (; it != stack.end(); ++it) cycle.push_back(it->first);
        return cycle;
      }
      if (color[w] == kWhite) {
        color[w] = kGray;
        stack.emplace_back(w, 0);
      }
    }
  }
  return std::nullopt;
}

bool is_closed_walk(const ChannelDependencyGraph& cdg, const std::vector<std::uint32_t>& cycle) {
  if (cycle.empty()) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto a = cycle[i];
    const auto b = cycle[(i + 1) % cycle.size()];
    if (!cdg.has_edge(a, b) || cdg.vertices[a].dst != cdg.vertices[b].src) return false;
  }
  return true;
}

namespace {

ConnectivityVerdict connectivity_of(const RouteEnumeration& e) {
  ConnectivityVerdict v;
  for (const auto& pr : e.routes) {
    if (pr.walk.status != WalkStatus::Delivered) {
      v.connected = false;
      v.counterexample = pair_of(pr);
      v.failure = pr.walk.status;
      break;
    }
  }
  return v;
}

LivelockVerdict livelock_of(const RouteEnumeration& e) {
  LivelockVerdict v;
  for (const auto& pr : e.routes) {
    v.max_route_length = std::max(v.max_route_length, pr.walk.routers.size() - 1);
    if (pr.walk.status == WalkStatus::TooLong && v.livelock_free) {
      v.livelock_free = false;
      v.witness = pair_of(pr);
    }
  }
  return v;
}

TurnMatrix turns_of(const TopologyGraph& g, const RouteEnumeration& e) {
  TurnMatrix m;
  for (const auto& pr : e.routes) {
    const auto& path = pr.walk.routers;
    for (std::size_t i = 0; i + 2 < path.size(); ++i) {
      const auto f = direction_between(g.address(path[i]), g.address(path[i + 1]));
      const auto h = direction_between(g.address(path[i + 1]), g.address(path[i + 2]));
      m.set(*f, *h);
    }
  }
  return m;
}

}  // namespace

ConnectivityVerdict check_connected(const TopologyGraph& g, const RouteFunction& r, const VerifyOptions& opt) {
  return connectivity_of(enumerate_routes(g, r, g.router_count(), opt));
}

LivelockVerdict check_livelock_free(const TopologyGraph& g, const RouteFunction& r, std::size_t hop_bound,
                                    const VerifyOptions& opt) {
  if (hop_bound < g.router_count()) throw DomainError("hop bound must be at least the router count");
  return livelock_of(enumerate_routes(g, r, hop_bound, opt));
}

TurnMatrix extract_turn_matrix(const TopologyGraph& g, const RouteFunction& r, const VerifyOptions& opt) {
  return turns_of(g, enumerate_routes(g, r, g.router_count(), opt));
}

VerificationReport verify_routing(const TopologyGraph& g, const RouteFunction& r, const TurnMatrix& reference,
                                  const VerifyOptions& opt) {
  const auto e = enumerate_routes(g, r, g.router_count(), opt);
  VerificationReport rep;
  rep.sampled = e.sampled;
  rep.pairs = e.routes.size();
  rep.connectivity = connectivity_of(e);
  rep.livelock = livelock_of(e);
  const auto cdg = build_cdg(g, e);
  rep.cdg_edges = cdg.edge_count();
  if (auto cyc = find_cycle(cdg)) {
    rep.cdg_acyclic = false;
    for (auto v : *cyc) rep.cycle.push_back(cdg.vertices[v]);
  }
  rep.turns = turns_of(g, e);
  rep.reference = reference;
  rep.excess_turns = rep.turns.excess_over(reference);
  return rep;
}

std::string VerificationReport::verdict_csv(const TopologyGraph& g) const {
  std::ostringstream os;
  os << "check,passed,detail\n";
  auto pair_text = [&](const std::optional<std::pair<RouterId, RouterId>>& p) {
    return p ? to_string(g.address(p->first)) + "->" + to_string(g.address(p->second)) : std::string{};
  };
  os << "connected," << (connectivity.connected ? 1 : 0) << ',';
  if (!connectivity.connected) os << to_string(connectivity.failure) << ' ' << pair_text(connectivity.counterexample);
  os << '\n';
  os << "cdg_acyclic," << (cdg_acyclic ? 1 : 0) << ',' << cdg_edges << " edges";
  if (!cdg_acyclic) os << "; cycle of " << cycle.size() << " arcs";
  os << '\n';
  os << "livelock_free," << (livelock.livelock_free ? 1 : 0) << ",max " << livelock.max_route_length << " hops";
  if (!livelock.livelock_free) os << "; " << pair_text(livelock.witness);
  os << '\n';
  os << "turns_within_reference," << (turns_ok() ? 1 : 0) << ',';
  for (std::size_t i = 0; i < excess_turns.size(); ++i)
    os << (i ? " " : "") << to_string(excess_turns[i].first) << "->" << to_string(excess_turns[i].second);
  os << '\n';
  if (sampled) os << "sampled,1," << pairs << " sampled pairs\n";
  return os.str();
}

std::string VerificationReport::cycle_csv(const TopologyGraph& g) const {
  std::ostringstream os;
  os << "step,src_id,dst_id,src,dst,direction\n";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Arc& a = cycle[i];
    os << i << ',' << a.src.value << ',' << a.dst.value << ",\"" << to_string(g.address(a.src)) << "\",\""
       << to_string(g.address(a.dst)) << "\"," << to_string(g.classify(a)) << '\n';
  }
  return os.str();
}

RouteFunction make_adversarial_routing() {
  return [](const Address& v, const Address& d) -> RoutingDecision {
    if (v == d) return RoutingDecision::local();
    const bool x_first = ((d.x + d.y) % 2) == 0;
    auto x_step = [&]() -> std::optional<Direction> {
      if (v.x < d.x) return Direction::East;
      if (v.x > d.x) return Direction::West;
      return std::nullopt;
    };
    auto y_step = [&]() -> std::optional<Direction> {
      if (v.y > d.y) return Direction::North;
      if (v.y < d.y) return Direction::South;
      return std::nullopt;
    };
    const auto first = x_first ? x_step() : y_step();
    if (first) return RoutingDecision::of(*first);
    const auto second = x_first ? y_step() : x_step();
    if (second) return RoutingDecision::of(*second);
    return RoutingDecision::of(v.z < d.z ? Direction::Down : Direction::Up);
  };
}

}  // namespace hetnoc
