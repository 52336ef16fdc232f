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

#include "hetnoc/traffic.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <istream>
#include <map>
#include <random>
#include <sstream>

namespace hetnoc {

namespace {

RouterId router_at(const TopologyGraph& g, const Address& a, std::string_view what) {
  const auto r = g.find(a);
  if (!r) throw ConfigError(fmt::format("{}: no router at {}", what, to_string(a)));
  return *r;
}

void validate_flow_graph(const FlowGraphTraffic& fg, const TopologyGraph& g) {
  if (fg.frame_interval < 1) throw ConfigError("frame_interval must be >= 1");
  if (fg.frames < 1) throw ConfigError("frames must be >= 1");
  if (fg.start < 0) throw ConfigError("flow start must be >= 0");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < fg.stages.size(); ++i) {
    const auto& st = fg.stages[i];
    if (st.routers.empty()) throw ConfigError(fmt::format("stage '{}' has no routers", st.name));
    if (!index.emplace(st.name, i).second) throw ConfigError(fmt::format("duplicate stage '{}'", st.name));
    for (const auto& a : st.routers) router_at(g, a, "stage " + st.name);
  }
  std::vector<std::vector<std::size_t>> succ(fg.stages.size());
  std::vector<int> indegree(fg.stages.size(), 0);
  for (const auto& f : fg.flows) {
    const auto from = index.find(f.from);
    const auto to = index.find(f.to);
    if (from == index.end()) throw ConfigError(fmt::format("flow references unknown stage '{}'", f.from));
    if (to == index.end()) throw ConfigError(fmt::format("flow references unknown stage '{}'", f.to));
    if (f.packets_per_source < 1) throw ConfigError("packets_per_source must be >= 1");
    if (f.packet_length < 1) throw ConfigError("packet_length must be >= 1");
    if (f.spacing < 0 || f.stagger < 0) throw ConfigError("flow spacing and stagger must be >= 0");
    for (const auto& a : fg.stages[from->second].routers)
      for (const auto& b : fg.stages[to->second].routers)
        if (a == b && fg.stages[to->second].routers.size() == 1)
          throw ConfigError(fmt::format("flow {} -> {} sends from {} to itself", f.from, f.to, to_string(a)));
    succ[from->second].push_back(to->second);
    ++indegree[to->second];
  }
  // Kahn's algorithm: every stage must be consumed for the graph to be acyclic.
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < indegree.size(); ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::size_t seen = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++seen;
    for (auto w : succ[v])
      if (--indegree[w] == 0) ready.push_back(w);
  }
  if (seen != fg.stages.size()) throw ConfigError("flow graph contains a cycle");
}

InjectionSchedule expand_uniform(const UniformTraffic& u, const TopologyGraph& g, std::uint64_t seed, Ticks horizon,
                                 const std::vector<int>& phases) {
  InjectionSchedule s;
  if (u.rate == 0.0) return s;
  const Ticks stop = u.stop < 0 ? horizon : std::min(u.stop, horizon);
  const double p = u.rate / u.packet_length;
  const auto n = static_cast<std::uint32_t>(g.router_count());
  std::mt19937_64 rng(seed);
  const auto& st = g.stack();
  for (Ticks t = u.start; t < stop; ++t) {
    for (std::uint32_t r = 0; r < n; ++r) {
      const int z = g.layer_of(RouterId{r});
      const int period = st.period_ticks(z);
      const int phase = phases.empty() ? 0 : phases[static_cast<std::size_t>(z - 1)];
      if ((t - phase) % period != 0) continue;
      if (unit_interval(rng()) >= p) continue;
      auto d = static_cast<std::uint32_t>(rng() % (n - 1));
      if (d >= r) ++d;
      s.packets.push_back(ScheduledPacket{static_cast<std::uint32_t>(s.packets.size()), RouterId{r}, RouterId{d},
                                          u.packet_length, t, -1, -1, 0});
    }
  }
  return s;
}

InjectionSchedule expand_flow_graph(const FlowGraphTraffic& fg, const TopologyGraph& g) {
  InjectionSchedule s;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < fg.stages.size(); ++i) index.emplace(fg.stages[i].name, i);
  std::vector<bool> has_inputs(fg.stages.size(), false);
  for (const auto& f : fg.flows) has_inputs[index.at(f.to)] = true;

  // Gate per (frame, stage, router) for stages with inputs.
  std::map<std::tuple<int, std::size_t, std::size_t>, std::int32_t> gate_of;
  auto gate = [&](int frame, std::size_t stage, std::size_t member) {
    const auto key = std::make_tuple(frame, stage, member);
    auto it = gate_of.find(key);
    if (it != gate_of.end()) return it->second;
    const auto id = static_cast<std::int32_t>(s.gates.size());
    s.gates.push_back(Gate{g.at(fg.stages[stage].routers[member]), 0, fg.start + frame * fg.frame_interval});
    gate_of.emplace(key, id);
    return id;
  };

  for (int frame = 0; frame < fg.frames; ++frame) {
    const Ticks frame_start = fg.start + frame * fg.frame_interval;
    for (const auto& f : fg.flows) {
      const std::size_t from = index.at(f.from);
      const std::size_t to = index.at(f.to);
      const auto& srcs = fg.stages[from].routers;
      const auto& dsts = fg.stages[to].routers;
      std::size_t next = 0;
      for (std::size_t i = 0; i < srcs.size(); ++i) {
        for (int k = 0; k < f.packets_per_source; ++k) {
          std::size_t j = next++ % dsts.size();
          if (dsts[j] == srcs[i]) j = next++ % dsts.size();
          ScheduledPacket p;
          p.id = static_cast<std::uint32_t>(s.packets.size());
          p.src = g.at(srcs[i]);
          p.dst = g.at(dsts[j]);
          p.length = f.packet_length;
          p.release = frame_start;
          if (has_inputs[from]) {
            p.wait_gate = gate(frame, from, i);
            p.gate_offset = static_cast<Ticks>(i) * f.stagger + k * f.spacing;
          } else {
            p.release += static_cast<Ticks>(i) * f.stagger + k * f.spacing;
          }
          if (std::any_of(fg.flows.begin(), fg.flows.end(), [&](const Flow& o) { return index.at(o.from) == to; })) {
            p.feed_gate = gate(frame, to, j);
            ++s.gates[static_cast<std::size_t>(p.feed_gate)].required;
          }
          s.packets.push_back(p);
        }
      }
    }
  }
  return s;
}

}  // namespace

void validate_traffic(const TrafficSpec& spec, const TopologyGraph& g) {
  if (const auto* u = std::get_if<UniformTraffic>(&spec)) {
    if (!(u->rate >= 0.0 && u->rate <= 1.0)) throw ConfigError(fmt::format("injection rate {} outside [0, 1]", u->rate));
    if (u->packet_length < 1) throw ConfigError("packet_length must be >= 1");
    if (u->start < 0) throw ConfigError("traffic start must be >= 0");
    if (g.router_count() < 2) throw ConfigError("uniform traffic needs at least two routers");
  } else if (const auto* fg = std::get_if<FlowGraphTraffic>(&spec)) {
    validate_flow_graph(*fg, g);
  } else if (const auto* tr = std::get_if<TraceTraffic>(&spec)) {
    for (const auto& e : tr->entries) {
      if (e.tick < 0) throw ConfigError("trace tick must be >= 0");
      if (e.length < 1) throw ConfigError("trace packet length must be >= 1");
      if (router_at(g, e.src, "trace source") == router_at(g, e.dst, "trace destination"))
        throw ConfigError("trace packet with identical source and destination " + to_string(e.src));
    }
  }
}

InjectionSchedule generate_traffic(const TrafficSpec& spec, const TopologyGraph& g, std::uint64_t seed, Ticks horizon,
                                   const std::vector<int>& phases) {
  validate_traffic(spec, g);
  if (const auto* u = std::get_if<UniformTraffic>(&spec)) return expand_uniform(*u, g, seed, horizon, phases);
  if (const auto* fg = std::get_if<FlowGraphTraffic>(&spec)) return expand_flow_graph(*fg, g);
  InjectionSchedule s;
  if (const auto* tr = std::get_if<TraceTraffic>(&spec)) {
    std::vector<TraceEntry> entries = tr->entries;
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.tick < b.tick; });
    for (const auto& e : entries)
      s.packets.push_back(ScheduledPacket{static_cast<std::uint32_t>(s.packets.size()), g.at(e.src), g.at(e.dst),
                                          e.length, e.tick, -1, -1});
  }
  return s;
}

std::vector<TraceEntry> read_trace_csv(std::istream& in) {
  std::vector<TraceEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<long long> v;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoll(cell, &used));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (lineno == 1) continue;  // header
      throw ConfigError(fmt::format("trace line {}: not numeric", lineno));
    }
    if (v.size() != 8) throw ConfigError(fmt::format("trace line {}: expected 8 fields", lineno));
    out.push_back(TraceEntry{v[0], Address{static_cast<int>(v[1]), static_cast<int>(v[2]), static_cast<int>(v[3])},
                             Address{static_cast<int>(v[4]), static_cast<int>(v[5]), static_cast<int>(v[6])},
                             static_cast<int>(v[7])});
  }
  return out;
}

}  // namespace hetnoc
