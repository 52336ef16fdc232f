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

// Acceptance run: one PASS/FAIL line per criterion. Exit status 0 iff all pass.
// An optional argument names a directory that receives criterion_<n>.csv.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hetnoc/cli/commands.hpp"
#include "hetnoc/cli/experiments.hpp"
#include "hetnoc/perfmodel.hpp"
#include "hetnoc/sim.hpp"
#include "hetnoc/techmodel.hpp"
#include "hetnoc/verify.hpp"

namespace {

using namespace hetnoc;
using namespace hetnoc::cli;

struct Outcome {
  bool pass = false;
  std::string detail;
  std::string csv;  // compared byte-for-byte on the rerun
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // runtime bound; 0 for none
  std::function<Outcome()> run;
};

RoutingAlgorithm algorithm(RoutingVariant v, TieBreak tie = TieBreak::Stay, std::vector<std::int64_t> phi = {}) {
  RoutingAlgorithm a;
  a.variant = v;
  a.tie_break = tie;
  a.phi_override = std::move(phi);
  return a;
}

// ---------------------------------------------------------------- criterion 1

StackConfig zero_load_stack() {
  StackConfig s;
  LayerSpec slow{"slow", 4, 4, 2, TechnologyNode{90, 2000, 3, 2, 2000.0}};
  LayerSpec fast{"fast", 8, 8, 1, TechnologyNode{45, 1000, 3, 2, 1000.0}};
  s.layers = {slow, fast};
  return s;
}

Outcome zero_load_equivalence() {
  const TopologyGraph g(zero_load_stack());
  std::vector<std::pair<RouterId, RouterId>> pairs;
  const auto n = static_cast<std::uint32_t>(g.router_count());
  for (std::uint32_t s = 0; s < n; ++s)
    for (std::uint32_t d = 0; d < n; ++d)
      if (s != d) pairs.emplace_back(RouterId{s}, RouterId{d});

  struct Case {
    std::string label;
    RoutingAlgorithm alg;
  };
  // Both layers have the same propagation speed here, so the tie-break and a
  // threshold override are varied to make R1 and R2 leave the XYZ paths.
  const std::vector<Case> cases{
      {"XYZ", algorithm(RoutingVariant::XYZ)},
      {"R1 stay", algorithm(RoutingVariant::R1)},
      {"R1 descend", algorithm(RoutingVariant::R1, TieBreak::Descend)},
      {"R2 derived", algorithm(RoutingVariant::R2)},
      {"R2 phi=2", algorithm(RoutingVariant::R2, TieBreak::Stay, {2})},
      {"R2 phi=0", algorithm(RoutingVariant::R2, TieBreak::Stay, {0})},
  };
  Outcome o;
  o.pass = true;
  o.csv = "case,pairs,mismatches,max_abs_diff_ps,mean_latency_ps,paths_differing_from_xyz\n";
  const auto xyz = make_route_function(g.stack(), cases[0].alg);
  std::size_t total_mismatch = 0;
  for (const auto& c : cases) {
    const auto route = make_route_function(g.stack(), c.alg);
    const auto ticks = measure_zero_load(g, c.alg, RouterKind::Standard, pairs, 1, SimParams{});
    std::size_t mismatches = 0, differing = 0;
    double max_diff = 0, sum = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto path = trace_route(g, route, pairs[i].first, pairs[i].second);
      if (path != trace_route(g, xyz, pairs[i].first, pairs[i].second)) ++differing;
      const double model = static_cast<double>(route_latency_estimate(g, path));
      const double sim = static_cast<double>(ticks[i]) * 1000.0;
      if (model != sim) ++mismatches;
      max_diff = std::max(max_diff, std::abs(model - sim));
      sum += sim;
    }
    total_mismatch += mismatches;
    o.csv += fmt::format("{},{},{},{},{},{}\n", c.label, pairs.size(), mismatches, max_diff,
                         sum / static_cast<double>(pairs.size()), differing);
  }
  o.pass = total_mismatch == 0;
  o.detail = fmt::format("{} cases x {} pairs, {} mismatches (tolerance 0 ticks)", cases.size(), pairs.size(),
                         total_mismatch);
  return o;
}

// ------------------------------------------------------------ criteria 2 and 3

struct ClockChoice {
  double tau_fast;
  int ratio;
  double raw;
};

// Digital nodes under a 130 nm mixed-signal layer whose fitted clock gain
// rounds to 2, 3 and 4.
std::vector<ClockChoice> clock_choices() {
  std::vector<ClockChoice> out;
  for (double tau : {65.0, 45.0, 40.0}) {
    const double raw = clock_scaling(130.0 / tau, kClockGP) / clock_scaling(1.0, kClockGP);
    out.push_back({tau, static_cast<int>(std::lround(raw)), raw});
  }
  return out;
}

ExperimentConfig hop_sweep_config(const ClockChoice& c, RoutingVariant v) {
  ExperimentConfig cfg;
  cfg.stack.layers = {LayerSpec{"mixed", 4, 4, 2, TechnologyNode{130, 1000LL * c.ratio, 2, 1, 2000.0}},
                      LayerSpec{"digital", 8, 8, 1, TechnologyNode{c.tau_fast, 1000, 1, 1, 1000.0}}};
  cfg.routing = algorithm(RoutingVariant::R1);
  cfg.sweep.axis = SweepAxis::HopDistance;
  cfg.sweep.values = {1, 2, 3, 4, 5, 6};
  cfg.sweep.algorithms = {v};
  cfg.sweep.source_layer = 1;
  cfg.validate();
  return cfg;
}

Outcome r1_enhancement_shape() {
  Outcome o;
  o.pass = true;
  std::vector<std::string> peaks;
  for (const auto& c : clock_choices()) {
    const auto rows = run_sweep(hop_sweep_config(c, RoutingVariant::R1), sweep_workers());
    o.csv += fmt::format("# tau_fast={} clock_gain={} ratio={}\n", c.tau_fast, c.raw, c.ratio);
    o.csv += sweep_csv(rows);
    double prev = 0, peak = 0;
    for (const auto& r : rows) {
      if (r.enhancement < 1.0 || r.enhancement < prev) o.pass = false;
      if (r.enhancement != r.model_enhancement) o.pass = false;
      prev = r.enhancement;
      peak = std::max(peak, r.enhancement);
    }
    if (peak < 1.5 || peak > 6.5) o.pass = false;
    peaks.push_back(fmt::format("c={} peak {:.3f}", c.ratio, peak));
  }
  o.detail = fmt::format("monotone, >= 1, model == sim; {} (band [1.5, 6.5])", fmt::join(peaks, ", "));
  return o;
}

Outcome r2_threshold() {
  Outcome o;
  o.pass = true;
  std::vector<std::string> notes;
  for (const auto& c : clock_choices()) {
    const auto rows = run_sweep(hop_sweep_config(c, RoutingVariant::R2), sweep_workers());
    o.csv += fmt::format("# ratio={}\n", c.ratio);
    o.csv += sweep_csv(rows);
    double floor = INFINITY;
    int below = 0, above = 0;
    for (const auto& r : rows) {
      const bool is_above = *r.above_threshold;
      if (is_above ? !(r.enhancement > 1.0) : !(r.enhancement < 1.0)) o.pass = false;
      (is_above ? above : below) += 1;
      if (!is_above) floor = std::min(floor, r.enhancement);
    }
    if (floor < 0.5) o.pass = false;
    notes.push_back(fmt::format("c={} Phi={} ({} below, {} above, floor {:.3f})", c.ratio, *rows.front().threshold_hops,
                                below, above, floor));
  }
  o.detail = fmt::format("{} (floor >= 0.5)", fmt::join(notes, "; "));
  return o;
}

// ---------------------------------------------------------------- criterion 4

Outcome deadlock_verification() {
  ExperimentConfig cfg;
  cfg.stack.layers = {LayerSpec{"mixed", 4, 4, 1, TechnologyNode{130, 4000, 3, 2, 1000.0}},
                      LayerSpec{"digital", 4, 4, 1, TechnologyNode{65, 2000, 3, 2, 1000.0}},
                      LayerSpec{"cpu", 4, 4, 1, TechnologyNode{28, 1000, 3, 2, 1000.0}}};
  const auto dir = std::filesystem::temp_directory_path() / "hetnoc_acceptance_verify";
  Outcome o;
  o.pass = true;
  std::vector<std::string> notes;
  for (auto v : {RoutingVariant::XYZ, RoutingVariant::R1, RoutingVariant::R2}) {
    cfg.routing = algorithm(v);
    cfg.validate();
    std::ostringstream out, err;
    const int code = cmd_verify(cfg, false, CommandContext{dir, false, false, &out, &err});
    o.csv += fmt::format("# {}\n{}", to_string(v), out.str());
    if (code != kExitOk) o.pass = false;
    notes.push_back(fmt::format("{} exit {}", to_string(v), code));
  }
  std::ostringstream out, err;
  const int code = cmd_verify(cfg, true, CommandContext{dir, false, false, &out, &err});
  o.csv += "# adversarial\n" + out.str();
  // The witness must be a closed walk of links: each arc starts where the previous one ends.
  const TopologyGraph g(cfg.stack);
  const auto rep = verify_routing(g, make_adversarial_routing(), reference_turns(cfg.stack, cfg.routing));
  bool closed = !rep.cycle.empty();
  for (std::size_t i = 0; closed && i < rep.cycle.size(); ++i)
    closed = rep.cycle[i].dst == rep.cycle[(i + 1) % rep.cycle.size()].src;
  const bool witness_file = std::filesystem::exists(dir / "cdg_cycle.csv");
  if (code != kExitVerify || rep.cdg_acyclic || !closed || !witness_file) o.pass = false;
  o.csv += rep.cycle_csv(g);
  o.detail = fmt::format("{}; adversarial exit {}, cycle of {} arcs, closed walk {}, witness file {}",
                         fmt::join(notes, ", "), code, rep.cycle.size(), closed ? "yes" : "no",
                         witness_file ? "yes" : "no");
  std::filesystem::remove_all(dir);
  return o;
}

// ---------------------------------------------------------------- criterion 5

Outcome weakest_link_throughput() {
  Outcome o;
  o.pass = true;
  o.csv = "clock_ratio,router_kind,flits_per_window,expected\n";
  std::vector<std::string> notes;
  for (int c : {2, 4}) {
    StackConfig s;
    s.layers = {LayerSpec{"slow", 4, 4, 1, TechnologyNode{130, 1000LL * c, 3, 3, 1000.0}},
                LayerSpec{"fast", 4, 4, 1, TechnologyNode{45, 1000, 3, 3, 1000.0}}};
    const TopologyGraph g(s);
    TraceTraffic stream;
    for (int i = 0; i < 200; ++i) stream.entries.push_back({0, Address{2, 2, 1}, Address{2, 2, 2}, 128});
    SimParams p;
    p.buffer_depth = 16;
    p.warmup_ticks = 1000;
    p.measure_ticks = 10000;
    p.drain_ticks = 0;
    double got[2] = {0, 0};
    for (auto kind : {RouterKind::Standard, RouterKind::HighVT}) {
      const auto rep = run(g, algorithm(RoutingVariant::R1), kind, stream, p);
      const double flits = rep.accepted_throughput[1] * 10000.0;
      const double expected = kind == RouterKind::Standard ? 10000.0 / c : 10000.0;
      if (std::abs(flits - expected) > 1.0) o.pass = false;
      got[kind == RouterKind::HighVT] = flits;
      o.csv += fmt::format("{},{},{},{}\n", c, to_string(kind), flits, expected);
    }
    notes.push_back(fmt::format("c={}: standard {} / high-vt {} flits per 10000 ticks ({}x)", c, got[0], got[1],
                                got[1] / got[0]));
  }
  o.detail = fmt::format("{} (tolerance +-1 flit)", fmt::join(notes, "; "));
  return o;
}

// ------------------------------------------------------------ criteria 6 and 8

struct CaseRun {
  SimReport baseline;
  SimReport proposed;
};

CaseRun run_case(const CaseStudyLoad& load, RoutingVariant v) {
  auto cfg = case_study_config(load);
  cfg.routing = algorithm(v);
  cfg.router_kind = RouterKind::HighVT;
  cfg.validate();
  const TopologyGraph g(cfg.stack);
  CaseRun r;
  r.proposed = run(g, cfg.routing, cfg.router_kind, cfg.traffic, cfg.sim);
  r.baseline = run(g, algorithm(RoutingVariant::XYZ), RouterKind::Standard, cfg.traffic, cfg.sim);
  return r;
}

// Speedup restricted to packets whose baseline or proposed route enters the
// mixed-signal layer, where the co-design changes anything.
struct PathSpeedup {
  double model = 0;
  double sim = 0;
  std::size_t packets = 0;
};

PathSpeedup heterogeneous_path_speedup(const CaseStudyLoad& load, RoutingVariant v) {
  auto cfg = case_study_config(load);
  const TopologyGraph g(cfg.stack);
  const auto xyz_alg = algorithm(RoutingVariant::XYZ);
  const auto alg = algorithm(v);
  const auto xyz = make_route_function(cfg.stack, xyz_alg);
  const auto het = make_route_function(cfg.stack, alg);
  const auto base = run(g, xyz_alg, RouterKind::Standard, cfg.traffic, cfg.sim);
  const auto prop = run(g, alg, RouterKind::HighVT, cfg.traffic, cfg.sim);
  double model_base = 0, model_prop = 0, sim_base = 0, sim_prop = 0, flits_base = 0, flits_prop = 0;
  PathSpeedup out;
  for (std::size_t i = 0; i < base.packets.size(); ++i) {
    const auto& pb = base.packets[i];
    const auto& pp = prop.packets[i];
    const auto rb = trace_route(g, xyz, pb.src, pb.dst);
    const auto rp = trace_route(g, het, pb.src, pb.dst);
    const auto touches = [&](const std::vector<RouterId>& r) {
      return std::any_of(r.begin(), r.end(), [&](RouterId id) { return g.layer_of(id) == 1; });
    };
    if (!touches(rb) && !touches(rp)) continue;
    ++out.packets;
    model_base += zero_load_flit_latency_ps(g, rb, pb.length, false);
    model_prop += zero_load_flit_latency_ps(g, rp, pp.length, true);
    if (pb.delivered()) sim_base += static_cast<double>(pb.flit_latency_sum), flits_base += pb.length;
    if (pp.delivered()) sim_prop += static_cast<double>(pp.flit_latency_sum), flits_prop += pp.length;
  }
  out.model = model_base / model_prop;
  out.sim = (sim_base / flits_base) / (sim_prop / flits_prop);
  return out;
}

const CaseStudyLoad kLoaded{2, 56, 0, 4000, 12};
const CaseStudyLoad kLowLoad{1, 1000, 100, 12000, 12};

Outcome case_study() {
  Outcome o;
  o.pass = true;
  o.csv = "algorithm,flit_speedup,packet_speedup,hetero_model,hetero_sim,hetero_packets\n";
  std::vector<std::string> notes;
  for (auto v : {RoutingVariant::R1, RoutingVariant::R2}) {
    const auto r = run_case(kLoaded, v);
    const double flit = r.baseline.avg_flit_latency_ps / r.proposed.avg_flit_latency_ps;
    const double packet = r.baseline.avg_packet_latency_ps / r.proposed.avg_packet_latency_ps;
    const auto hp = heterogeneous_path_speedup(kLowLoad, v);
    const double gap = std::abs(hp.model / hp.sim - 1.0);
    if (flit < 1.8 || packet < 1.5 || gap > 0.10) o.pass = false;
    if (r.proposed.packets_delivered != r.proposed.packets_created) o.pass = false;
    o.csv += fmt::format("{},{},{},{},{},{}\n", to_string(v), flit, packet, hp.model, hp.sim, hp.packets);
    notes.push_back(fmt::format("{}: flit {:.3f}x, packet {:.3f}x, model {:.3f} vs low-load sim {:.3f} ({:.1f}%)",
                                to_string(v), flit, packet, hp.model, hp.sim, 100.0 * gap));
  }
  o.detail = fmt::format("{} (need flit >= 1.8, packet >= 1.5, gap <= 10%)", fmt::join(notes, "; "));
  return o;
}

Outcome activity_proxy() {
  Outcome o;
  o.pass = true;
  o.csv = "algorithm,xyz_slow_horizontal,proposed_slow_horizontal,xyz_energy,proposed_energy\n";
  std::vector<std::string> notes;
  for (auto v : {RoutingVariant::R1, RoutingVariant::R2}) {
    const auto r = run_case(kLoaded, v);
    const auto base = r.baseline.activity[0].horizontal_link_traversals;
    const auto prop = r.proposed.activity[0].horizontal_link_traversals;
    if (!(prop < base)) o.pass = false;
    o.csv += fmt::format("{},{},{},{},{}\n", to_string(v), base, prop, r.baseline.energy_proxy, r.proposed.energy_proxy);
    notes.push_back(fmt::format("{}: {} vs XYZ {}", to_string(v), prop, base));
  }
  o.detail = "slow-layer horizontal traversals " + fmt::format("{}", fmt::join(notes, ", "));
  return o;
}

// ---------------------------------------------------------------- criterion 7

// Box-Muller on a portable uniform source.
double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - unit_interval(rng());
  const double u2 = unit_interval(rng());
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::vector<Sample> synth(const std::function<double(double)>& f, double lo, double hi, int n, double noise,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    const double xi = lo + (hi - lo) * i / (n - 1);
    out.push_back({xi, f(xi) * (1.0 + noise * gaussian(rng))});
  }
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome fit_round_trip() {
  Outcome o;
  o.pass = true;
  const auto area_f = [](double xi) { return area_scaling(xi, kAreaGP); };
  const auto clock_f = [](double xi) { return clock_scaling(xi, kClockGP); };
  const ClockFitOptions copt{std::nullopt, kClockGP.beta_bar};
  std::vector<std::string> notes;
  for (double noise : {0.0, 0.01}) {
    const double tol = noise == 0.0 ? 1e-3 : 0.05;
    const auto a = fit_area(synth(area_f, 1.0, 9.0, 25, noise, 11), kAreaGP.alpha);
    const auto c = fit_clock(synth(clock_f, 1.0, 10.0, 30, noise, 12), copt);
    const double ea = rel(a.params.alpha_hat, kAreaGP.alpha_hat);
    const double ec = std::max({rel(c.params.beta, kClockGP.beta), rel(c.params.beta_hat, kClockGP.beta_hat),
                                rel(c.params.beta_tilde, kClockGP.beta_tilde)});
    if (ea > tol || ec > tol || !std::isfinite(a.rmse) || !std::isfinite(c.rmse)) o.pass = false;
    o.csv += fmt::format("# noise {}\n{}{}", noise, fit_report_csv(a), fit_report_csv(c));
    notes.push_back(fmt::format("noise {}: area err {:.2e} rmse {:.3g}, clock err {:.2e} rmse {:.3g} (tol {})", noise,
                                ea, a.rmse, ec, c.rmse, tol));
  }
  o.detail = fmt::format("{}", fmt::join(notes, "; "));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path csv_dir = argc > 1 ? argv[1] : "";
  if (!csv_dir.empty()) std::filesystem::create_directories(csv_dir);
  const std::vector<Criterion> criteria{
      {1, "zero-load model equals simulation", 60, zero_load_equivalence},
      {2, "R1 enhancement shape", 120, r1_enhancement_shape},
      {3, "R2 threshold behavior", 120, r2_threshold},
      {4, "deadlock verification", 60, deadlock_verification},
      {5, "weakest-link vs high-vt throughput", 60, weakest_link_throughput},
      {6, "case-study load test", 300, case_study},
      {7, "fit round trip", 10, fit_round_trip},
      {8, "activity proxy", 300, activity_proxy},
  };
  bool all = true;
  std::vector<std::string> first_csv;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = fmt::format("exception: {}", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.pass && secs < c.limit_s;
    all = all && ok;
    first_csv.push_back(o.csv);
    if (!csv_dir.empty()) std::ofstream(csv_dir / fmt::format("criterion_{}.csv", c.id), std::ios::binary) << o.csv;
    fmt::print("{} criterion {}: {} | {} | {:.2f} s (limit {} s)\n", ok ? "PASS" : "FAIL", c.id, c.name, o.detail,
               secs, c.limit_s);
    std::fflush(stdout);
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<int> differing;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string csv;
    try {
      csv = criteria[i].run().csv;
    } catch (const std::exception&) {
    }
    if (csv.empty() || csv != first_csv[i]) differing.push_back(criteria[i].id);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool det = differing.empty();
  all = all && det;
  fmt::print("{} criterion 9: determinism | reran criteria 1-8, {} | {:.2f} s\n", det ? "PASS" : "FAIL",
             det ? "all CSV outputs byte-identical" : fmt::format("differing: {}", fmt::join(differing, ",")), secs);
  return all ? 0 : 1;
}
