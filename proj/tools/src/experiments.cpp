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

#include "hetnoc/cli/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <thread>
#include <tuple>

#include "hetnoc/cli/svg.hpp"
#include "hetnoc/perfmodel.hpp"

namespace hetnoc::cli {

namespace {

enum class Probe { ToTarget, SameLayer };

struct Job {
  std::size_t value_index = 0;
  RoutingAlgorithm alg;
  RouterKind kind = RouterKind::Standard;
  Probe probe = Probe::ToTarget;

  auto key() const { return std::make_tuple(value_index, alg.variant, alg.phi_override, kind, probe); }
};

struct Measurement {
  double model_ps = 0;
  double sim_ps = 0;
};

int integral_value(double v, std::string_view what) {
  if (!(v == std::floor(v)) || std::abs(v) > 1e6) throw ConfigError(fmt::format("{} {} is not an integer", what, v));
  return static_cast<int>(v);
}

// Destination of the hop-distance probe: walk x first, then y, on the source layer grid.
Address hop_destination(const StackConfig& st, int z, int hops) {
  const auto& l = st.layer(z);
  if (hops < 1) throw ConfigError(fmt::format("hop distance {} must be >= 1", hops));
  const int hx = std::min(hops, l.cols - 1);
  const int hy = hops - hx;
  if (hy > l.rows - 1)
    throw ConfigError(fmt::format("hop distance {} exceeds layer {} ({}x{})", hops, z, l.rows, l.cols));
  return Address{hx * l.grid_stride, hy * l.grid_stride, z};
}

StackConfig with_clock_ratio(const StackConfig& st, int z, int ratio) {
  if (st.layer_count() < 2) throw ConfigError("clock_ratio sweep needs at least two layers");
  if (ratio < 1) throw ConfigError(fmt::format("clock ratio {} must be >= 1", ratio));
  Picoseconds base = 0;
  for (int k = 1; k <= st.layer_count(); ++k)
    if (k != z) base = base == 0 ? st.tech(k).clk_period_ps : std::min(base, st.tech(k).clk_period_ps);
  StackConfig out = st;
  out.layer(z).tech.clk_period_ps = ratio * base;
  out.validate();
  return out;
}

std::vector<std::pair<RouterId, RouterId>> layer_pairs(const TopologyGraph& g, int from, int to) {
  std::vector<std::pair<RouterId, RouterId>> out;
  for (auto s : g.routers_in_layer(from))
    for (auto d : g.routers_in_layer(to))
      if (s != d) out.emplace_back(s, d);
  return out;
}

Measurement zero_load_mean(const TopologyGraph& g, const Job& job, const std::vector<std::pair<RouterId, RouterId>>& pairs,
                           int length, const SimParams& p) {
  const auto route = make_route_function(g.stack(), job.alg);
  const auto ticks = measure_zero_load(g, job.alg, job.kind, pairs, length, p);
  const double tick_ps = static_cast<double>(g.stack().fastest_period_ps());
  Measurement m;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto path = trace_route(g, route, pairs[i].first, pairs[i].second);
    m.model_ps += static_cast<double>(route_latency_estimate(g, path));
    if (ticks[i] < 0) throw Error("zero-load probe packet was not delivered");
    m.sim_ps += static_cast<double>(ticks[i]) * tick_ps;
  }
  m.model_ps /= static_cast<double>(pairs.size());
  m.sim_ps /= static_cast<double>(pairs.size());
  return m;
}

Measurement measure(const ExperimentConfig& cfg, const Job& job) {
  const auto& sw = cfg.sweep;
  const double v = sw.values[job.value_index];
  switch (sw.axis) {
    case SweepAxis::HopDistance: {
      const TopologyGraph g(cfg.stack);
      const RoutingTable table(cfg.stack, cfg.routing);
      const Address src{0, 0, sw.source_layer};
      Address dst = hop_destination(cfg.stack, sw.source_layer, integral_value(v, "hop distance"));
      if (job.probe == Probe::ToTarget) dst = table.projection(dst, table.target_layer());
      return zero_load_mean(g, job, {{g.at(src), g.at(dst)}}, sw.packet_length, cfg.sim);
    }
    case SweepAxis::ClockRatio: {
      const auto st = with_clock_ratio(cfg.stack, sw.source_layer, integral_value(v, "clock ratio"));
      validate_routing(job.alg, st);
      const TopologyGraph g(st);
      const RoutingTable table(st, cfg.routing);
      return zero_load_mean(g, job, layer_pairs(g, sw.source_layer, table.target_layer()), sw.packet_length,
                            cfg.sim);
    }
    case SweepAxis::InjectionRate: {
      const TopologyGraph g(cfg.stack);
      UniformTraffic u;
      if (const auto* cu = std::get_if<UniformTraffic>(&cfg.traffic)) u = *cu;
      else u.packet_length = sw.packet_length;
      u.rate = v;
      const auto rep = run(g, job.alg, job.kind, u, cfg.sim);
      const auto route = make_route_function(cfg.stack, job.alg);
      const bool wide = job.kind == RouterKind::HighVT;
      double sum = 0;
      std::size_t n = 0;
      const auto count = static_cast<std::uint32_t>(g.router_count());
      for (std::uint32_t s = 0; s < count; ++s)
        for (std::uint32_t d = 0; d < count; ++d) {
          if (s == d) continue;
          const auto path = trace_route(g, route, RouterId{s}, RouterId{d});
          sum += zero_load_flit_latency_ps(g, path, u.packet_length, wide);
          ++n;
        }
      return Measurement{sum / static_cast<double>(n), rep.avg_flit_latency_ps};
    }
  }
  return {};
}

template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& body) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string opt_cell(const std::optional<std::int64_t>& v) { return v ? fmt::format("{}", *v) : std::string(); }

}  // namespace

unsigned sweep_workers() {
  if (const char* env = std::getenv("HETERO_NOC_WORKERS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096)
      throw ConfigError(fmt::format("HETERO_NOC_WORKERS='{}' must be a positive integer", env));
    return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, unsigned workers) {
  const auto& sw = cfg.sweep;
  if (sw.values.empty()) throw ConfigError("sweep.values: empty axis");
  if (sw.algorithms.empty()) throw ConfigError("sweep.algorithms: must not be empty");
  if (sw.axis == SweepAxis::InjectionRate)
    for (double v : sw.values)
      if (!(v > 0.0 && v <= 1.0)) throw ConfigError(fmt::format("injection rate {} outside (0, 1]", v));

  std::vector<Job> jobs;
  std::map<decltype(Job{}.key()), std::size_t> index;
  auto add = [&](const Job& j) {
    const auto [it, fresh] = index.emplace(j.key(), jobs.size());
    if (fresh) jobs.push_back(j);
    return it->second;
  };
  struct Plan {
    std::size_t value_index;
    RoutingVariant variant;
    RouterKind kind;
    Probe probe;
    std::size_t job;
    std::size_t baseline;
  };
  std::vector<Plan> plan;
  for (std::size_t vi = 0; vi < sw.values.size(); ++vi) {
    for (auto variant : sw.algorithms) {
      Job j{vi, cfg.routing, variant == RoutingVariant::XYZ ? RouterKind::Standard : cfg.router_kind, Probe::ToTarget};
      j.alg.variant = variant;
      if (sw.axis == SweepAxis::HopDistance && variant == RoutingVariant::R2) {
        j.probe = Probe::SameLayer;
        j.alg.phi_override = {0};
      }
      Job base{vi, cfg.routing, RouterKind::Standard, j.probe};
      base.alg.variant = RoutingVariant::XYZ;
      base.alg.phi_override.clear();
      plan.push_back(Plan{vi, variant, j.kind, j.probe, add(j), add(base)});
    }
  }

  std::vector<Measurement> results(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t i) { results[i] = measure(cfg, jobs[i]); });

  std::vector<SweepRow> rows;
  for (const auto& p : plan) {
    SweepRow r;
    r.axis = sw.axis;
    r.value = sw.values[p.value_index];
    r.algorithm = p.variant;
    r.router_kind = p.kind;
    r.model_latency_ps = results[p.job].model_ps;
    r.sim_latency_ps = results[p.job].sim_ps;
    r.xyz_model_latency_ps = results[p.baseline].model_ps;
    r.xyz_sim_latency_ps = results[p.baseline].sim_ps;
    r.enhancement = r.xyz_sim_latency_ps / r.sim_latency_ps;
    r.model_enhancement = r.xyz_model_latency_ps / r.model_latency_ps;
    if (p.probe == Probe::SameLayer) {
      RoutingAlgorithm alg = cfg.routing;
      alg.variant = RoutingVariant::R2;
      const RoutingTable table(cfg.stack, alg);
      r.threshold_hops = table.phi(sw.source_layer);
      const auto grid_hops = static_cast<std::int64_t>(r.value) * cfg.stack.layer(sw.source_layer).grid_stride;
      r.above_threshold = grid_hops > *r.threshold_hops;
    }
    rows.push_back(r);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "axis,value,algorithm,router_kind,model_latency_ps,sim_latency_ps,xyz_model_latency_ps,xyz_sim_latency_ps,"
      "enhancement,model_enhancement,threshold_hops,above_threshold\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.axis), r.value, to_string(r.algorithm),
                       to_string(r.router_kind), r.model_latency_ps, r.sim_latency_ps, r.xyz_model_latency_ps,
                       r.xyz_sim_latency_ps, r.enhancement, r.model_enhancement, opt_cell(r.threshold_hops),
                       r.above_threshold ? (*r.above_threshold ? "1" : "0") : "");
  return out;
}

std::string sweep_svg(const std::vector<SweepRow>& rows) {
  PlotSpec spec;
  spec.guide_y = 1.0;
  spec.y_label = "enhancement over XYZ";
  if (!rows.empty()) {
    spec.x_label = std::string(to_string(rows.front().axis));
    spec.title = fmt::format("Latency enhancement vs {}", spec.x_label);
  }
  std::vector<RoutingVariant> order;
  for (const auto& r : rows)
    if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) order.push_back(r.algorithm);
  for (auto v : order) {
    PlotSeries sim{fmt::format("{} sim", to_string(v)), {}, {}, false};
    PlotSeries model{fmt::format("{} model", to_string(v)), {}, {}, true};
    for (const auto& r : rows) {
      if (r.algorithm != v) continue;
      sim.x.push_back(r.value);
      sim.y.push_back(r.enhancement);
      model.x.push_back(r.value);
      model.y.push_back(r.model_enhancement);
    }
    spec.series.push_back(std::move(sim));
    spec.series.push_back(std::move(model));
  }
  return svg_line_plot(spec);
}

ExperimentConfig case_study_config(const CaseStudyLoad& load) {
  ExperimentConfig c;
  auto layer = [](std::string name, double tau, Picoseconds period) {
    LayerSpec l;
    l.name = std::move(name);
    l.rows = 3;
    l.cols = 4;
    l.tech = TechnologyNode{tau, period, 3, 2, 1000.0};
    return l;
  };
  c.stack.layers = {layer("mixed", 30, 2000), layer("digital", 15, 1000), layer("cpu", 15, 1000)};
  c.routing.variant = RoutingVariant::R1;
  c.router_kind = RouterKind::HighVT;

  auto stage = [](std::string name, int x0, int x1, int z) {
    FlowStage st;
    st.name = std::move(name);
    for (int y = 0; y < 3; ++y)
      for (int x = x0; x <= x1; ++x) st.routers.push_back(Address{x, y, z});
    return st;
  };
  FlowGraphTraffic fg;
  fg.stages = {stage("adc", 1, 3, 1), stage("bayer", 2, 3, 2), stage("simd", 0, 1, 2), stage("acc", 0, 0, 1),
               stage("track", 0, 3, 3)};
  const int m = load.multiplier;
  fg.flows = {{"adc", "bayer", 4 * m, 32, load.spacing, load.stagger},
              {"bayer", "simd", 6 * m, 32, load.spacing, load.stagger},
              {"simd", "acc", 2 * m, 32, load.spacing, load.stagger},
              {"acc", "track", 4 * m, 32, load.spacing, load.stagger}};
  fg.frame_interval = load.frame_interval;
  fg.frames = load.frames;
  c.traffic = fg;

  c.sim.warmup_ticks = 2 * load.frame_interval;
  c.sim.measure_ticks = 8 * load.frame_interval;
  c.sim.drain_ticks = 50000;
  c.output_dir = "out/case_study";
  return c;
}

}  // namespace hetnoc::cli
