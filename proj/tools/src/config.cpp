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

#include "hetnoc/cli/config.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace hetnoc::cli {

std::string_view to_string(SweepAxis a) noexcept {
  switch (a) {
    case SweepAxis::HopDistance: return "hop_distance";
    case SweepAxis::InjectionRate: return "injection_rate";
    case SweepAxis::ClockRatio: return "clock_ratio";
  }
  return "?";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view s) noexcept {
  if (s == "hop_distance") return SweepAxis::HopDistance;
  if (s == "injection_rate") return SweepAxis::InjectionRate;
  if (s == "clock_ratio" || s == "c_f") return SweepAxis::ClockRatio;
  return std::nullopt;
}

namespace {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : fmt::format("{}.{}", path, key);
}

void check_map(const YAML::Node& n, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!n.IsMap()) throw ConfigError(fmt::format("{}: expected a mapping", path.empty() ? "config" : path));
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(fmt::format("{}: unknown key", join(path, key)));
  }
}

template <class T>
constexpr const char* type_name() {
  if constexpr (std::is_same_v<T, bool>) return "a boolean";
  else if constexpr (std::is_same_v<T, std::string>) return "a string";
  else if constexpr (std::is_floating_point_v<T>) return "a number";
  else if constexpr (std::is_unsigned_v<T>) return "a non-negative integer";
  else return "an integer";
}

template <class T>
T as(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) throw ConfigError(fmt::format("{}: expected {}", path, type_name<T>()));
  if constexpr (std::is_unsigned_v<T>) {
    if (!n.Scalar().empty() && n.Scalar().front() == '-')
      throw ConfigError(fmt::format("{}: expected {}", path, type_name<T>()));
  }
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(fmt::format("{}: expected {}, got '{}'", path, type_name<T>(), n.Scalar()));
  }
}

template <class T>
void read(const YAML::Node& parent, std::string_view key, const std::string& path, T& out) {
  const auto n = parent[std::string(key)];
  if (n) out = as<T>(n, join(path, key));
}

template <class T>
T required(const YAML::Node& parent, std::string_view key, const std::string& path) {
  const auto n = parent[std::string(key)];
  if (!n) throw ConfigError(fmt::format("{}: missing", join(path, key)));
  return as<T>(n, join(path, key));
}

template <class T>
std::vector<T> seq(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence()) throw ConfigError(fmt::format("{}: expected a list", path));
  std::vector<T> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(as<T>(n[i], fmt::format("{}[{}]", path, i)));
  return out;
}

Address parse_address(const YAML::Node& n, const std::string& path) {
  const auto v = seq<int>(n, path);
  if (v.size() != 3) throw ConfigError(fmt::format("{}: expected [x, y, z]", path));
  return Address{v[0], v[1], v[2]};
}

LayerSpec parse_layer(const YAML::Node& n, const std::string& path, Picoseconds base_period) {
  check_map(n, path,
            {"name", "rows", "cols", "stride", "feature_size_nm", "clk_period_ps", "clock_ratio", "head_delay",
             "pipeline_depth", "router_pitch_um"});
  LayerSpec l;
  l.name = required<std::string>(n, "name", path);
  l.rows = required<int>(n, "rows", path);
  l.cols = required<int>(n, "cols", path);
  read(n, "stride", path, l.grid_stride);
  l.tech.feature_size_nm = required<double>(n, "feature_size_nm", path);
  if (n["clk_period_ps"] && n["clock_ratio"])
    throw ConfigError(fmt::format("{}: give clk_period_ps or clock_ratio, not both", path));
  if (n["clock_ratio"]) {
    const int ratio = required<int>(n, "clock_ratio", path);
    if (ratio < 1) throw ConfigError(fmt::format("{}.clock_ratio: must be >= 1", path));
    l.tech.clk_period_ps = ratio * base_period;
  } else {
    l.tech.clk_period_ps = required<Picoseconds>(n, "clk_period_ps", path);
  }
  read(n, "head_delay", path, l.tech.head_delay);
  read(n, "pipeline_depth", path, l.tech.pipeline_depth);
  read(n, "router_pitch_um", path, l.tech.router_pitch_um);
  return l;
}

StackConfig parse_stack(const YAML::Node& n) {
  check_map(n, "stack", {"base_period_ps", "layers"});
  Picoseconds base = 1000;
  read(n, "base_period_ps", "stack", base);
  if (base < 1) throw ConfigError("stack.base_period_ps: must be >= 1");
  const auto layers = n["layers"];
  if (!layers || !layers.IsSequence() || layers.size() == 0) throw ConfigError("stack.layers: expected a non-empty list");
  StackConfig s;
  for (std::size_t i = 0; i < layers.size(); ++i)
    s.layers.push_back(parse_layer(layers[i], fmt::format("stack.layers[{}]", i), base));
  s.validate();
  return s;
}

RoutingAlgorithm parse_routing(const YAML::Node& n) {
  check_map(n, "routing", {"algorithm", "target_layer", "tie_break", "phi_override"});
  RoutingAlgorithm a;
  if (n["algorithm"]) {
    const auto s = as<std::string>(n["algorithm"], "routing.algorithm");
    const auto v = parse_routing_variant(s);
    if (!v) throw ConfigError(fmt::format("routing.algorithm: unknown '{}' (XYZ, R1, R2)", s));
    a.variant = *v;
  }
  read(n, "target_layer", "routing", a.target_layer);
  if (n["tie_break"]) {
    const auto s = as<std::string>(n["tie_break"], "routing.tie_break");
    const auto t = parse_tie_break(s);
    if (!t) throw ConfigError(fmt::format("routing.tie_break: unknown '{}' (stay, descend)", s));
    a.tie_break = *t;
  }
  if (n["phi_override"]) a.phi_override = seq<std::int64_t>(n["phi_override"], "routing.phi_override");
  return a;
}

void parse_router(const YAML::Node& n, ExperimentConfig& c) {
  check_map(n, "router", {"kind", "buffer_depth", "vcs", "slow_vcs"});
  if (n["kind"]) {
    const auto s = as<std::string>(n["kind"], "router.kind");
    const auto k = parse_router_kind(s);
    if (!k) throw ConfigError(fmt::format("router.kind: unknown '{}' (standard, high_vt)", s));
    c.router_kind = *k;
  }
  read(n, "buffer_depth", "router", c.sim.buffer_depth);
  read(n, "vcs", "router", c.sim.vcs);
  read(n, "slow_vcs", "router", c.sim.slow_vcs);
}

void parse_sim(const YAML::Node& n, SimParams& p) {
  check_map(n, "sim", {"warmup_ticks", "measure_ticks", "drain_ticks", "seed", "watchdog_ticks", "phases",
                       "hist_bin_ticks"});
  read(n, "warmup_ticks", "sim", p.warmup_ticks);
  read(n, "measure_ticks", "sim", p.measure_ticks);
  read(n, "drain_ticks", "sim", p.drain_ticks);
  read(n, "seed", "sim", p.seed);
  read(n, "watchdog_ticks", "sim", p.watchdog_ticks);
  read(n, "hist_bin_ticks", "sim", p.hist_bin_ticks);
  if (n["phases"]) p.phases = seq<int>(n["phases"], "sim.phases");
}

void parse_energy(const YAML::Node& n, EnergyWeights& e) {
  check_map(n, "energy", {"buffer_write", "buffer_read", "crossbar", "horizontal_link", "vertical_link",
                          "scale_by_feature_size"});
  read(n, "buffer_write", "energy", e.buffer_write);
  read(n, "buffer_read", "energy", e.buffer_read);
  read(n, "crossbar", "energy", e.crossbar);
  read(n, "horizontal_link", "energy", e.horizontal_link);
  read(n, "vertical_link", "energy", e.vertical_link);
  read(n, "scale_by_feature_size", "energy", e.scale_by_feature_size);
}

FlowStage parse_stage(const YAML::Node& n, const std::string& path, const StackConfig& stack) {
  check_map(n, path, {"name", "routers", "region"});
  FlowStage st;
  st.name = required<std::string>(n, "name", path);
  if (n["routers"] && n["region"]) throw ConfigError(fmt::format("{}: give routers or region, not both", path));
  if (n["routers"]) {
    const auto r = n["routers"];
    if (!r.IsSequence()) throw ConfigError(fmt::format("{}.routers: expected a list", path));
    for (std::size_t i = 0; i < r.size(); ++i)
      st.routers.push_back(parse_address(r[i], fmt::format("{}.routers[{}]", path, i)));
  } else if (n["region"]) {
    // Rectangle of logical coordinates; expands row-major to the occupied points.
    const auto rg = n["region"];
    const auto rp = path + ".region";
    check_map(rg, rp, {"layer", "x", "y"});
    const int z = required<int>(rg, "layer", rp);
    if (z < 1 || z > stack.layer_count()) throw ConfigError(fmt::format("{}.layer: no layer {}", rp, z));
    const auto& l = stack.layer(z);
    std::vector<int> xs{0, (l.cols - 1) * l.grid_stride};
    std::vector<int> ys{0, (l.rows - 1) * l.grid_stride};
    if (rg["x"]) xs = seq<int>(rg["x"], rp + ".x");
    if (rg["y"]) ys = seq<int>(rg["y"], rp + ".y");
    if (xs.size() != 2 || ys.size() != 2) throw ConfigError(fmt::format("{}: x and y are [first, last]", rp));
    for (int y = ys[0]; y <= ys[1]; ++y)
      for (int x = xs[0]; x <= xs[1]; ++x)
        if (stack.contains(Address{x, y, z})) st.routers.push_back(Address{x, y, z});
  }
  return st;
}

TraceEntry parse_trace_entry(const YAML::Node& n, const std::string& path) {
  const auto v = seq<long long>(n, path);
  if (v.size() != 8) throw ConfigError(fmt::format("{}: expected [tick, sx, sy, sz, dx, dy, dz, length]", path));
  auto i = [&](std::size_t k) { return static_cast<int>(v[k]); };
  return TraceEntry{v[0], Address{i(1), i(2), i(3)}, Address{i(4), i(5), i(6)}, i(7)};
}

TrafficSpec parse_traffic(const YAML::Node& n, const StackConfig& stack, const std::filesystem::path& base_dir) {
  if (!n.IsMap()) throw ConfigError("traffic: expected a mapping");
  const auto mode = n["mode"] ? as<std::string>(n["mode"], "traffic.mode") : std::string("none");
  if (mode == "none") {
    check_map(n, "traffic", {"mode"});
    return std::monostate{};
  }
  if (mode == "uniform") {
    check_map(n, "traffic", {"mode", "rate", "packet_length", "start", "stop"});
    UniformTraffic u;
    read(n, "rate", "traffic", u.rate);
    read(n, "packet_length", "traffic", u.packet_length);
    read(n, "start", "traffic", u.start);
    read(n, "stop", "traffic", u.stop);
    return u;
  }
  if (mode == "flow") {
    check_map(n, "traffic", {"mode", "frame_interval", "frames", "start", "stages", "flows"});
    FlowGraphTraffic fg;
    read(n, "frame_interval", "traffic", fg.frame_interval);
    read(n, "frames", "traffic", fg.frames);
    read(n, "start", "traffic", fg.start);
    const auto stages = n["stages"];
    if (!stages || !stages.IsSequence()) throw ConfigError("traffic.stages: expected a list");
    for (std::size_t i = 0; i < stages.size(); ++i)
      fg.stages.push_back(parse_stage(stages[i], fmt::format("traffic.stages[{}]", i), stack));
    const auto flows = n["flows"];
    if (!flows || !flows.IsSequence()) throw ConfigError("traffic.flows: expected a list");
    for (std::size_t i = 0; i < flows.size(); ++i) {
      const auto p = fmt::format("traffic.flows[{}]", i);
      check_map(flows[i], p, {"from", "to", "packets_per_source", "packet_length", "spacing", "stagger"});
      Flow f;
      f.from = required<std::string>(flows[i], "from", p);
      f.to = required<std::string>(flows[i], "to", p);
      read(flows[i], "packets_per_source", p, f.packets_per_source);
      read(flows[i], "packet_length", p, f.packet_length);
      read(flows[i], "spacing", p, f.spacing);
      read(flows[i], "stagger", p, f.stagger);
      fg.flows.push_back(f);
    }
    return fg;
  }
  if (mode == "trace") {
    check_map(n, "traffic", {"mode", "file", "entries"});
    TraceTraffic t;
    if (n["file"] && n["entries"]) throw ConfigError("traffic: give file or entries, not both");
    if (n["file"]) {
      std::filesystem::path f = as<std::string>(n["file"], "traffic.file");
      if (f.is_relative()) f = base_dir / f;
      std::ifstream in(f);
      if (!in) throw ConfigError(fmt::format("traffic.file: cannot open {}", f.string()));
      t.entries = read_trace_csv(in);
    } else if (n["entries"]) {
      const auto e = n["entries"];
      if (!e.IsSequence()) throw ConfigError("traffic.entries: expected a list");
      for (std::size_t i = 0; i < e.size(); ++i)
        t.entries.push_back(parse_trace_entry(e[i], fmt::format("traffic.entries[{}]", i)));
    }
    return t;
  }
  throw ConfigError(fmt::format("traffic.mode: unknown '{}' (none, uniform, flow, trace)", mode));
}

SweepSpec parse_sweep(const YAML::Node& n) {
  check_map(n, "sweep", {"axis", "values", "algorithms", "source_layer", "packet_length"});
  SweepSpec s;
  if (n["axis"]) {
    const auto a = as<std::string>(n["axis"], "sweep.axis");
    const auto v = parse_sweep_axis(a);
    if (!v) throw ConfigError(fmt::format("sweep.axis: unknown '{}' (hop_distance, injection_rate, clock_ratio)", a));
    s.axis = *v;
  }
  if (n["values"]) s.values = seq<double>(n["values"], "sweep.values");
  if (n["algorithms"]) {
    s.algorithms.clear();
    for (const auto& name : seq<std::string>(n["algorithms"], "sweep.algorithms")) {
      const auto v = parse_routing_variant(name);
      if (!v) throw ConfigError(fmt::format("sweep.algorithms: unknown '{}'", name));
      s.algorithms.push_back(*v);
    }
  }
  read(n, "source_layer", "sweep", s.source_layer);
  read(n, "packet_length", "sweep", s.packet_length);
  return s;
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

void ExperimentConfig::validate() const {
  stack.validate();
  const TopologyGraph g(stack);
  validate_routing(routing, stack);
  validate_sim(g, routing, router_kind, sim);
  validate_traffic(traffic, g);
  if (sweep.source_layer < 1 || sweep.source_layer > stack.layer_count())
    throw ConfigError(fmt::format("sweep.source_layer: no layer {}", sweep.source_layer));
  if (sweep.packet_length < 1) throw ConfigError("sweep.packet_length: must be >= 1");
  if (sweep.algorithms.empty()) throw ConfigError("sweep.algorithms: must not be empty");
  if (output_dir.empty()) throw ConfigError("output_dir: must not be empty");
}

ExperimentConfig parse_config(std::string_view yaml, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("malformed config: {}", e.what()));
  }
  check_map(root, "", {"stack", "routing", "router", "traffic", "sim", "energy", "sweep", "model", "output_dir"});
  if (!root["stack"]) throw ConfigError("stack: missing");
  ExperimentConfig c;
  c.stack = parse_stack(root["stack"]);
  if (root["routing"]) c.routing = parse_routing(root["routing"]);
  if (root["router"]) parse_router(root["router"], c);
  if (root["sim"]) parse_sim(root["sim"], c.sim);
  if (root["energy"]) parse_energy(root["energy"], c.sim.energy);
  if (root["traffic"]) c.traffic = parse_traffic(root["traffic"], c.stack, base_dir);
  if (root["sweep"]) c.sweep = parse_sweep(root["sweep"]);
  if (root["model"]) {
    check_map(root["model"], "model", {"library"});
    std::string lib = "gp";
    read(root["model"], "library", "model", lib);
    if (lib == "gp") c.library = ModelLibrary::GP;
    else if (lib == "ulv") c.library = ModelLibrary::ULV;
    else throw ConfigError(fmt::format("model.library: unknown '{}' (gp, ulv)", lib));
  }
  read(root, "output_dir", "", c.output_dir);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config {}", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string emit_config(const ExperimentConfig& c) {
  YAML::Emitter out;
  auto flow_seq = [&](const auto& values) {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& v : values) out << v;
    out << YAML::EndSeq;
  };
  auto address = [&](const Address& a) { flow_seq(std::vector<int>{a.x, a.y, a.z}); };

  out << YAML::BeginMap;
  out << YAML::Key << "stack" << YAML::Value << YAML::BeginMap << YAML::Key << "layers" << YAML::Value
      << YAML::BeginSeq;
  for (const auto& l : c.stack.layers) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << l.name;
    out << YAML::Key << "rows" << YAML::Value << l.rows;
    out << YAML::Key << "cols" << YAML::Value << l.cols;
    out << YAML::Key << "stride" << YAML::Value << l.grid_stride;
    out << YAML::Key << "feature_size_nm" << YAML::Value << num(l.tech.feature_size_nm);
    out << YAML::Key << "clk_period_ps" << YAML::Value << l.tech.clk_period_ps;
    out << YAML::Key << "head_delay" << YAML::Value << l.tech.head_delay;
    out << YAML::Key << "pipeline_depth" << YAML::Value << l.tech.pipeline_depth;
    out << YAML::Key << "router_pitch_um" << YAML::Value << num(l.tech.router_pitch_um);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;

  out << YAML::Key << "routing" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "algorithm" << YAML::Value << std::string(to_string(c.routing.variant));
  out << YAML::Key << "target_layer" << YAML::Value << c.routing.target_layer;
  out << YAML::Key << "tie_break" << YAML::Value << std::string(to_string(c.routing.tie_break));
  out << YAML::Key << "phi_override" << YAML::Value;
  flow_seq(c.routing.phi_override);
  out << YAML::EndMap;

  out << YAML::Key << "router" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << std::string(to_string(c.router_kind));
  out << YAML::Key << "buffer_depth" << YAML::Value << c.sim.buffer_depth;
  out << YAML::Key << "vcs" << YAML::Value << c.sim.vcs;
  out << YAML::Key << "slow_vcs" << YAML::Value << c.sim.slow_vcs;
  out << YAML::EndMap;

  out << YAML::Key << "traffic" << YAML::Value << YAML::BeginMap;
  if (const auto* u = std::get_if<UniformTraffic>(&c.traffic)) {
    out << YAML::Key << "mode" << YAML::Value << "uniform";
    out << YAML::Key << "rate" << YAML::Value << num(u->rate);
    out << YAML::Key << "packet_length" << YAML::Value << u->packet_length;
    out << YAML::Key << "start" << YAML::Value << u->start;
    out << YAML::Key << "stop" << YAML::Value << u->stop;
  } else if (const auto* fg = std::get_if<FlowGraphTraffic>(&c.traffic)) {
    out << YAML::Key << "mode" << YAML::Value << "flow";
    out << YAML::Key << "frame_interval" << YAML::Value << fg->frame_interval;
    out << YAML::Key << "frames" << YAML::Value << fg->frames;
    out << YAML::Key << "start" << YAML::Value << fg->start;
    out << YAML::Key << "stages" << YAML::Value << YAML::BeginSeq;
    for (const auto& st : fg->stages) {
      out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << st.name;
      out << YAML::Key << "routers" << YAML::Value << YAML::BeginSeq;
      for (const auto& a : st.routers) address(a);
      out << YAML::EndSeq << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "flows" << YAML::Value << YAML::BeginSeq;
    for (const auto& f : fg->flows) {
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "from" << YAML::Value << f.from << YAML::Key << "to" << YAML::Value << f.to;
      out << YAML::Key << "packets_per_source" << YAML::Value << f.packets_per_source;
      out << YAML::Key << "packet_length" << YAML::Value << f.packet_length;
      out << YAML::Key << "spacing" << YAML::Value << f.spacing;
      out << YAML::Key << "stagger" << YAML::Value << f.stagger;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  } else if (const auto* tr = std::get_if<TraceTraffic>(&c.traffic)) {
    out << YAML::Key << "mode" << YAML::Value << "trace";
    out << YAML::Key << "entries" << YAML::Value << YAML::BeginSeq;
    for (const auto& e : tr->entries)
      flow_seq(std::vector<long long>{e.tick, e.src.x, e.src.y, e.src.z, e.dst.x, e.dst.y, e.dst.z, e.length});
    out << YAML::EndSeq;
  } else {
    out << YAML::Key << "mode" << YAML::Value << "none";
  }
  out << YAML::EndMap;

  const auto& p = c.sim;
  out << YAML::Key << "sim" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "warmup_ticks" << YAML::Value << p.warmup_ticks;
  out << YAML::Key << "measure_ticks" << YAML::Value << p.measure_ticks;
  out << YAML::Key << "drain_ticks" << YAML::Value << p.drain_ticks;
  out << YAML::Key << "seed" << YAML::Value << p.seed;
  out << YAML::Key << "watchdog_ticks" << YAML::Value << p.watchdog_ticks;
  out << YAML::Key << "hist_bin_ticks" << YAML::Value << p.hist_bin_ticks;
  out << YAML::Key << "phases" << YAML::Value;
  flow_seq(p.phases);
  out << YAML::EndMap;

  const auto& e = p.energy;
  out << YAML::Key << "energy" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "buffer_write" << YAML::Value << num(e.buffer_write);
  out << YAML::Key << "buffer_read" << YAML::Value << num(e.buffer_read);
  out << YAML::Key << "crossbar" << YAML::Value << num(e.crossbar);
  out << YAML::Key << "horizontal_link" << YAML::Value << num(e.horizontal_link);
  out << YAML::Key << "vertical_link" << YAML::Value << num(e.vertical_link);
  out << YAML::Key << "scale_by_feature_size" << YAML::Value << e.scale_by_feature_size;
  out << YAML::EndMap;

  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "axis" << YAML::Value << std::string(to_string(c.sweep.axis));
  out << YAML::Key << "values" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double v : c.sweep.values) out << num(v);
  out << YAML::EndSeq;
  out << YAML::Key << "algorithms" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (auto v : c.sweep.algorithms) out << std::string(to_string(v));
  out << YAML::EndSeq;
  out << YAML::Key << "source_layer" << YAML::Value << c.sweep.source_layer;
  out << YAML::Key << "packet_length" << YAML::Value << c.sweep.packet_length;
  out << YAML::EndMap;

  out << YAML::Key << "model" << YAML::Value << YAML::BeginMap << YAML::Key << "library" << YAML::Value
      << (c.library == ModelLibrary::GP ? "gp" : "ulv") << YAML::EndMap;
  out << YAML::Key << "output_dir" << YAML::Value << c.output_dir;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace hetnoc::cli
