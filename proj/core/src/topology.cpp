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

#include "hetnoc/topology.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hetnoc {

void TechnologyNode::validate() const {
  if (!(feature_size_nm > 0.0)) throw ConfigError("feature_size_nm must be > 0");
  if (clk_period_ps <= 0) throw ConfigError("clk_period_ps must be > 0");
  if (head_delay < 1) throw ConfigError("head_delay must be >= 1");
  if (pipeline_depth < 0 || pipeline_depth > head_delay)
    throw ConfigError("pipeline_depth must lie in [0, head_delay]");
  if (!(router_pitch_um > 0.0)) throw ConfigError("router_pitch_um must be > 0");
}

const LayerSpec& StackConfig::layer(int z) const {
  if (z < 1 || z > layer_count()) throw DomainError(fmt::format("layer index {} out of range", z));
  return layers[static_cast<std::size_t>(z - 1)];
}

LayerSpec& StackConfig::layer(int z) {
  if (z < 1 || z > layer_count()) throw DomainError(fmt::format("layer index {} out of range", z));
  return layers[static_cast<std::size_t>(z - 1)];
}

Picoseconds StackConfig::fastest_period_ps() const {
  Picoseconds best = 0;
  for (const auto& l : layers)
    if (best == 0 || l.tech.clk_period_ps < best) best = l.tech.clk_period_ps;
  return best;
}

int StackConfig::period_ticks(int z) const {
  return static_cast<int>(tech(z).clk_period_ps / fastest_period_ps());
}

int StackConfig::logical_width() const {
  int w = 0;
  for (const auto& l : layers) w = std::max(w, (l.cols - 1) * l.grid_stride + 1);
  return w;
}

int StackConfig::logical_height() const {
  int h = 0;
  for (const auto& l : layers) h = std::max(h, (l.rows - 1) * l.grid_stride + 1);
  return h;
}

bool StackConfig::contains(const Address& a) const noexcept {
  if (a.z < 1 || a.z > layer_count()) return false;
  const auto& l = layers[static_cast<std::size_t>(a.z - 1)];
  if (a.x < 0 || a.y < 0 || a.x % l.grid_stride != 0 || a.y % l.grid_stride != 0) return false;
  return a.x / l.grid_stride < l.cols && a.y / l.grid_stride < l.rows;
}

void StackConfig::validate() const {
  if (layer_count() < 2) throw ConfigError("a stack needs at least 2 layers");
  for (int z = 1; z <= layer_count(); ++z) {
    const auto& l = layer(z);
    try {
      l.tech.validate();
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("layer {}: {}", z, e.what()));
    }
    if (l.rows < 2 || l.cols < 2) throw ConfigError(fmt::format("layer {}: rows and cols must be >= 2", z));
    if (l.grid_stride < 1) throw ConfigError(fmt::format("layer {}: grid_stride must be >= 1", z));
  }
  for (int z = 1; z < layer_count(); ++z) {
    const auto& up = layer(z);
    const auto& down = layer(z + 1);
    if (up.tech.feature_size_nm < down.tech.feature_size_nm)
      throw ConfigError(fmt::format("feature size must not increase with depth (layer {} < layer {})", z, z + 1));
    for (int i = 0; i < up.cols; ++i) {
      for (int j = 0; j < up.rows; ++j) {
        const Address below{i * up.grid_stride, j * up.grid_stride, z + 1};
        if (!contains(below))
          throw ConfigError(fmt::format("layer {} router at logical ({},{}) has no aligned router in layer {}",
                                        z, below.x, below.y, z + 1));
      }
    }
  }
  const Picoseconds fast = fastest_period_ps();
  for (int z = 1; z <= layer_count(); ++z) {
    if (tech(z).clk_period_ps % fast != 0)
      throw ConfigError(fmt::format("layer {} clock period {} ps is not an integer multiple of {} ps", z,
                                    tech(z).clk_period_ps, fast));
  }
}

std::optional<Direction> direction_between(const Address& v, const Address& w) noexcept {
  if (v == w) return std::nullopt;
  if (v.z == w.z) {
    if (v.y == w.y && v.x < w.x) return Direction::East;
    if (v.y == w.y && v.x > w.x) return Direction::West;
    if (v.x == w.x && v.y > w.y) return Direction::North;
    if (v.x == w.x && v.y < w.y) return Direction::South;
    return std::nullopt;
  }
  if (v.x != w.x || v.y != w.y) return std::nullopt;
  return v.z > w.z ? Direction::Up : Direction::Down;
}

TopologyGraph::TopologyGraph(StackConfig cfg) : stack_(std::move(cfg)) {
  stack_.validate();
  width_ = stack_.logical_width();
  height_ = stack_.logical_height();
  lookup_.assign(static_cast<std::size_t>(width_) * height_ * stack_.layer_count(), -1);
  for (int z = 1; z <= stack_.layer_count(); ++z) {
    const auto& l = stack_.layer(z);
    for (int j = 0; j < l.rows; ++j) {
      for (int i = 0; i < l.cols; ++i) {
        const Address a{i * l.grid_stride, j * l.grid_stride, z};
        lookup_[(static_cast<std::size_t>(z - 1) * height_ + a.y) * width_ + a.x] =
            static_cast<std::int32_t>(addresses_.size());
        addresses_.push_back(a);
      }
    }
  }
  links_.assign(addresses_.size(), {-1, -1, -1, -1, -1, -1});
  for (std::uint32_t id = 0; id < addresses_.size(); ++id) {
    const Address a = addresses_[id];
    const int k = stack_.layer(a.z).grid_stride;
    const std::array<Address, 6> targets{Address{a.x, a.y - k, a.z}, Address{a.x + k, a.y, a.z},
                                         Address{a.x, a.y + k, a.z}, Address{a.x - k, a.y, a.z},
                                         Address{a.x, a.y, a.z - 1},  Address{a.x, a.y, a.z + 1}};
    for (Direction d : kDirections) {
      const auto w = find(targets[static_cast<std::size_t>(index_of(d))]);
      if (!w) continue;
      links_[id][static_cast<std::size_t>(index_of(d))] = static_cast<std::int32_t>(arcs_.size());
      arcs_.push_back(Arc{RouterId{id}, *w});
      arc_dirs_.push_back(d);
    }
  }
}

Position TopologyGraph::position(RouterId r) const {
  const Address& a = address(r);
  const double unit = stack_.grid_unit_um();
  return Position{a.x * unit, a.y * unit, a.z};
}

std::optional<RouterId> TopologyGraph::find(const Address& a) const noexcept {
  if (a.z < 1 || a.z > stack_.layer_count() || a.x < 0 || a.y < 0 || a.x >= width_ || a.y >= height_)
    return std::nullopt;
  const auto id = lookup_[(static_cast<std::size_t>(a.z - 1) * height_ + a.y) * width_ + a.x];
  if (id < 0) return std::nullopt;
  return RouterId{static_cast<std::uint32_t>(id)};
}

RouterId TopologyGraph::at(const Address& a) const {
  const auto r = find(a);
  if (!r) throw DomainError("no router at " + to_string(a));
  return *r;
}

std::optional<RouterId> TopologyGraph::neighbor(RouterId r, Direction d) const noexcept {
  const auto idx = arc_index(r, d);
  if (!idx) return std::nullopt;
  return arcs_[*idx].dst;
}

std::optional<std::uint32_t> TopologyGraph::arc_index(RouterId r, Direction d) const noexcept {
  if (r.value >= links_.size()) return std::nullopt;
  const auto idx = links_[r.value][static_cast<std::size_t>(index_of(d))];
  if (idx < 0) return std::nullopt;
  return static_cast<std::uint32_t>(idx);
}

Direction TopologyGraph::classify(const Arc& a) const {
  if (a.src.value < router_count() && a.dst.value < router_count()) {
    const auto d = direction_between(address(a.src), address(a.dst));
    if (d && neighbor(a.src, *d) == a.dst) return *d;
  }
  throw DomainError(fmt::format("({} -> {}) is not a link of the topology", a.src.value, a.dst.value));
}

std::vector<RouterId> TopologyGraph::routers_in_layer(int z) const {
  std::vector<RouterId> out;
  for (std::uint32_t id = 0; id < addresses_.size(); ++id)
    if (addresses_[id].z == z) out.push_back(RouterId{id});
  return out;
}

std::string TopologyGraph::to_csv() const {
  std::ostringstream os;
  os << "src_id,dst_id,direction\n";
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    os << arcs_[i].src.value << ',' << arcs_[i].dst.value << ',' << to_string(arc_dirs_[i]) << '\n';
  return os.str();
}

TopologyGraph build_topology(const StackConfig& cfg) { return TopologyGraph(cfg); }

Position address_to_position(const StackConfig& cfg, const Address& w) {
  if (!cfg.contains(w)) throw DomainError("address " + to_string(w) + " is not occupied");
  const double unit = cfg.grid_unit_um();
  return Position{w.x * unit, w.y * unit, w.z};
}

}  // namespace hetnoc
