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

#include "hetnoc/cli/commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "hetnoc/cli/experiments.hpp"
#include "hetnoc/cli/svg.hpp"
#include "hetnoc/perfmodel.hpp"
#include "hetnoc/techmodel.hpp"
#include "hetnoc/verify.hpp"

namespace hetnoc::cli {

namespace {

std::ostream& out_of(const CommandContext& c) { return c.out ? *c.out : std::cout; }
std::ostream& err_of(const CommandContext& c) { return c.err ? *c.err : std::cerr; }

void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot write {}", (dir / name).string()));
  f << text;
}

std::vector<Sample> read_samples(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError(fmt::format("cannot open {}", p.string()));
  try {
    return read_samples_csv(in);
  } catch (const DomainError& e) {
    throw ConfigError(fmt::format("{}: {}", p.string(), e.what()));
  }
}

}  // namespace

int cmd_fit(const FitOptions& opt, const CommandContext& ctx) {
  const auto samples = read_samples(opt.input);
  std::string report;
  std::function<double(double)> predict;
  try {
    if (opt.model == FitModel::Area) {
      const auto r = fit_area(samples, opt.alpha);
      report = fit_report_csv(r);
      predict = [p = r.params](double xi) { return area_scaling(xi, p); };
    } else {
      const auto r = fit_clock(samples, ClockFitOptions{opt.beta_fixed, opt.beta_bar});
      report = fit_report_csv(r);
      predict = [p = r.params](double xi) { return clock_scaling(xi, p); };
    }
  } catch (const DomainError& e) {
    throw ConfigError(fmt::format("fit: {}", e.what()));
  }
  std::string curve = "xi,observed,predicted\n";
  PlotSeries observed{"observed", {}, {}, true}, predicted{"fit", {}, {}, false};
  for (const auto& s : samples) {
    curve += fmt::format("{},{},{}\n", s.xi, s.value, predict(s.xi));
    observed.x.push_back(s.xi);
    observed.y.push_back(s.value);
  }
  write_file(ctx.out_dir, "fit.csv", report);
  write_file(ctx.out_dir, "fit_curve.csv", curve);
  if (ctx.plot) {
    double lo = samples.front().xi, hi = lo;
    for (const auto& s : samples) lo = std::min(lo, s.xi), hi = std::max(hi, s.xi);
    for (int i = 0; i <= 60; ++i) {
      const double xi = lo + (hi - lo) * i / 60.0;
      predicted.x.push_back(xi);
      predicted.y.push_back(predict(xi));
    }
    PlotSpec spec{opt.model == FitModel::Area ? "Area scaling fit" : "Clock scaling fit", "xi",
                  opt.model == FitModel::Area ? "s_f" : "c_f", {observed, predicted}};
    write_file(ctx.out_dir, "fit.svg", svg_line_plot(spec));
  }
  out_of(ctx) << report;
  return kExitOk;
}

std::string eval_model_csv(const ExperimentConfig& cfg) {
  const auto& st = cfg.stack;
  const auto area = cfg.library == ModelLibrary::GP ? kAreaGP : kAreaULV;
  const auto clock = cfg.library == ModelLibrary::GP ? kClockGP : kClockULV;
  const double tau_top = st.tech(1).feature_size_nm;
  const double fastest = static_cast<double>(st.fastest_period_ps());
  std::string out = "kind,from_layer,to_layer,name,value\n";
  auto row = [&](std::string_view kind, int a, int b, std::string_view name, const std::string& v) {
    out += fmt::format("{},{},{},{},{}\n", kind, a, b, name, v);
  };
  auto num = [](double v) { return std::isinf(v) ? std::string("inf") : fmt::format("{}", v); };
  for (int z = 1; z <= st.layer_count(); ++z) {
    const auto t = LayerTiming::of(st, z);
    double xi = 0;
    try {
      xi = relative_scaling(tau_top, st.tech(z).feature_size_nm);
      row("layer", z, z, "feature_size_nm", num(st.tech(z).feature_size_nm));
      row("layer", z, z, "clk_period_ps", fmt::format("{}", st.tech(z).clk_period_ps));
      row("layer", z, z, "xi", num(xi));
      row("layer", z, z, "area_scaling", num(area_scaling(xi, area)));
      row("layer", z, z, "clock_scaling", num(clock_scaling(xi, clock) / clock_scaling(1.0, clock)));
    } catch (const DomainError& e) {
      throw ConfigError(fmt::format("layer {}: {}", z, e.what()));
    }
    row("layer", z, z, "clock_ratio", num(static_cast<double>(st.tech(z).clk_period_ps) / fastest));
    row("layer", z, z, "head_time_ps", fmt::format("{}", t.head_time_ps()));
    row("layer", z, z, "omega_m_per_s", num(propagation_speed(t)));
  }
  for (int a = 1; a <= st.layer_count(); ++a) {
    for (int b = a + 1; b <= st.layer_count(); ++b) {
      const auto ta = LayerTiming::of(st, a), tb = LayerTiming::of(st, b);
      const double phi = rerouting_threshold_phi(ta, tb);
      const auto hops = rerouting_threshold_hops(phi, st.grid_unit_um());
      const auto& la = st.layer(a);
      const std::int64_t span = static_cast<std::int64_t>(la.cols - 1 + la.rows - 1) * la.grid_stride;
      row("pair", a, b, "omega_ratio", num(propagation_speed(tb) / propagation_speed(ta)));
      row("pair", a, b, "phi_um", num(phi));
      row("pair", a, b, "phi_hops", fmt::format("{}", hops));
      row("pair", a, b, "detour_pays", hops != kUnboundedHops && hops < span ? "1" : "0");
    }
  }
  return out;
}

int cmd_eval_model(const ExperimentConfig& cfg, const CommandContext& ctx) {
  const auto csv = eval_model_csv(cfg);
  write_file(ctx.out_dir, "model.csv", csv);
  out_of(ctx) << csv;
  return kExitOk;
}

int cmd_verify(const ExperimentConfig& cfg, bool adversarial, const CommandContext& ctx) {
  const TopologyGraph g(cfg.stack);
  const auto route = adversarial ? make_adversarial_routing() : make_route_function(cfg.stack, cfg.routing);
  VerifyOptions opt;
  opt.seed = cfg.sim.seed;
  const auto rep = verify_routing(g, route, reference_turns(cfg.stack, cfg.routing), opt);
  if (rep.sampled)
    err_of(ctx) << fmt::format("warning: {} routers exceed the enumeration bound; checked {} sampled pairs\n",
                               g.router_count(), rep.pairs);
  const auto verdict = rep.verdict_csv(g);
  write_file(ctx.out_dir, "verdict.csv", verdict);
  write_file(ctx.out_dir, "turns.csv", rep.turns.to_csv());
  const auto witness = ctx.out_dir / "cdg_cycle.csv";
  if (!rep.cdg_acyclic)
    write_file(ctx.out_dir, "cdg_cycle.csv", rep.cycle_csv(g));
  else
    std::filesystem::remove(witness);
  out_of(ctx) << verdict;
  return rep.passed() ? kExitOk : kExitVerify;
}

int cmd_simulate(const ExperimentConfig& cfg, const CommandContext& ctx) {
  const TopologyGraph g(cfg.stack);
  std::filesystem::create_directories(ctx.out_dir);
  std::ofstream trace;
  RunOptions ro;
  if (ctx.trace) {
    trace.open(ctx.out_dir / "trace.csv", std::ios::binary);
    if (!trace) throw Error("cannot write trace.csv");
    ro.trace = &trace;
  }
  SimReport rep;
  try {
    rep = run(g, cfg.routing, cfg.router_kind, cfg.traffic, cfg.sim, ro);
  } catch (const WatchdogAbort& e) {
    err_of(ctx) << "watchdog: " << e.what() << '\n';
    return kExitWatchdog;
  }
  write_file(ctx.out_dir, "report.csv", rep.to_csv());
  write_file(ctx.out_dir, "flit_latency_hist.csv", rep.histogram_csv());
  const double accepted = std::accumulate(rep.accepted_throughput.begin(), rep.accepted_throughput.end(), 0.0);
  out_of(ctx) << fmt::format(
      "avg_flit_latency_ps={:.3f} avg_packet_latency_ps={:.3f} accepted_throughput_flits_per_tick={:.6f} "
      "packets_delivered={}/{}\n",
      rep.avg_flit_latency_ps, rep.avg_packet_latency_ps, accepted, rep.packets_delivered, rep.packets_created);
  return kExitOk;
}

int cmd_sweep(const ExperimentConfig& cfg, const CommandContext& ctx) {
  const auto rows = run_sweep(cfg, sweep_workers());
  const auto csv = sweep_csv(rows);
  write_file(ctx.out_dir, "sweep.csv", csv);
  if (ctx.plot) write_file(ctx.out_dir, "sweep.svg", sweep_svg(rows));
  out_of(ctx) << csv;
  return kExitOk;
}

int cmd_route_trace(const ExperimentConfig& cfg, const Address& src, const Address& dst, const CommandContext& ctx) {
  const TopologyGraph g(cfg.stack);
  const auto s = g.find(src);
  const auto d = g.find(dst);
  if (!s) throw ConfigError(fmt::format("--src: no router at {}", to_string(src)));
  if (!d) throw ConfigError(fmt::format("--dst: no router at {}", to_string(dst)));
  const auto route = trace_route(g, make_route_function(cfg.stack, cfg.routing), *s, *d);
  std::string csv = "hop,router_id,x,y,z,layer,latency_ps\n";
  for (std::size_t i = 0; i < route.size(); ++i) {
    const auto& a = g.address(route[i]);
    const auto lat = route_latency_estimate(g, std::span<const RouterId>(route.data(), i + 1));
    csv += fmt::format("{},{},{},{},{},{},{}\n", i, route[i].value, a.x, a.y, a.z, cfg.stack.layer(a.z).name, lat);
  }
  write_file(ctx.out_dir, "route.csv", csv);
  out_of(ctx) << csv;
  return kExitOk;
}

Address parse_address_arg(const std::string& s) {
  std::stringstream ss(s);
  std::string cell;
  std::vector<int> v;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("address '{}' is not x,y,z", s));
    }
  }
  if (v.size() != 3) throw ConfigError(fmt::format("address '{}' is not x,y,z", s));
  return Address{v[0], v[1], v[2]};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heterogeneous 3D NoC models, routing verification and simulation", "hetnoc"};
  app.require_subcommand(1);
  std::string config_path, out_dir, seed_text;
  bool plot = false, trace = false;
  app.add_option("--config", config_path, "experiment config (YAML)");
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_option("--seed", seed_text, "simulation seed (overrides sim.seed)");
  app.add_flag("--plot", plot, "also write SVG plots");
  app.add_flag("--trace", trace, "write the per-tick event trace");

  auto* fit = app.add_subcommand("fit", "fit the area or clock scaling model to samples");
  std::string fit_input, fit_model = "area";
  double alpha = 1.0, beta_bar = 1.0;
  std::optional<double> beta_fixed;
  fit->add_option("--input", fit_input, "CSV with xi,value columns")->required();
  fit->add_option("--model", fit_model, "area or clock")->check(CLI::IsMember({"area", "clock"}));
  fit->add_option("--alpha", alpha, "pinned alpha of the area model");
  fit->add_option("--beta-fixed", beta_fixed, "hold beta of the clock model fixed");
  fit->add_option("--beta-bar", beta_bar, "pinned beta_bar of the clock model");
  auto* eval = app.add_subcommand("eval-model", "print model quantities per layer and layer pair");
  auto* verify = app.add_subcommand("verify", "check connectivity, deadlock and livelock freedom");
  bool adversarial = false;
  verify->add_flag("--adversarial", adversarial, "verify the built-in all-turns routing instead");
  auto* simulate = app.add_subcommand("simulate", "run the cycle-accurate simulator");
  auto* sweep = app.add_subcommand("sweep", "sweep hop distance, injection rate or clock ratio");
  auto* trace_cmd = app.add_subcommand("route-trace", "print the hop sequence of one packet");
  std::string src_text, dst_text;
  trace_cmd->add_option("--src", src_text, "source x,y,z")->required();
  trace_cmd->add_option("--dst", dst_text, "destination x,y,z")->required();
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, w;
    const int code = app.exit(e, o, w);
    out << o.str();
    err << w.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    CommandContext ctx;
    ctx.out = &out;
    ctx.err = &err;
    ctx.plot = plot;
    ctx.trace = trace;
    if (fit->parsed()) {
      ctx.out_dir = out_dir.empty() ? "out" : out_dir;
      return cmd_fit(FitOptions{fit_input, fit_model == "area" ? FitModel::Area : FitModel::Clock, alpha, beta_fixed,
                                beta_bar},
                     ctx);
    }
    if (config_path.empty()) throw ConfigError("--config is required");
    auto cfg = load_config(config_path);
    if (!seed_text.empty()) {
      char* end = nullptr;
      errno = 0;
      const auto seed = std::strtoull(seed_text.c_str(), &end, 10);
      if (*end != '\0' || seed_text.front() == '-' || errno != 0)
        throw ConfigError(fmt::format("--seed: '{}' is not a non-negative integer", seed_text));
      cfg.sim.seed = seed;
    }
    ctx.out_dir = out_dir.empty() ? std::filesystem::path(cfg.output_dir) : std::filesystem::path(out_dir);
    if (eval->parsed()) return cmd_eval_model(cfg, ctx);
    if (verify->parsed()) return cmd_verify(cfg, adversarial, ctx);
    if (simulate->parsed()) return cmd_simulate(cfg, ctx);
    if (sweep->parsed()) return cmd_sweep(cfg, ctx);
    if (trace_cmd->parsed()) return cmd_route_trace(cfg, parse_address_arg(src_text), parse_address_arg(dst_text), ctx);
  } catch (const WatchdogAbort& e) {
    err << "watchdog: " << e.what() << '\n';
    return kExitWatchdog;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace hetnoc::cli
