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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hetnoc/cli/config.hpp"

namespace hetnoc::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitVerify = 2, kExitWatchdog = 3 };

struct CommandContext {
  std::filesystem::path out_dir = "out";
  bool plot = false;
  bool trace = false;
  std::ostream* out = nullptr;  ///< summary text; defaults to std::cout
  std::ostream* err = nullptr;  ///< warnings; defaults to std::cerr
};

enum class FitModel { Area, Clock };

struct FitOptions {
  std::filesystem::path input;
  FitModel model = FitModel::Area;
  double alpha = 1.0;
  std::optional<double> beta_fixed;
  double beta_bar = 1.0;
};

/// Writes fit.csv (param,value,rmse) and fit_curve.csv (xi,observed,predicted).
int cmd_fit(const FitOptions& opt, const CommandContext& ctx);

/// Writes model.csv with header kind,from_layer,to_layer,name,value.
/// Layer rows: feature_size_nm, clk_period_ps, xi, area_scaling, clock_scaling,
/// clock_ratio, head_time_ps, omega_m_per_s. Pair rows (upper, lower):
/// omega_ratio, phi_um (inf when the detour never pays), phi_hops
/// (2147483647 when unbounded), detour_pays.
int cmd_eval_model(const ExperimentConfig& cfg, const CommandContext& ctx);
std::string eval_model_csv(const ExperimentConfig& cfg);

/// Writes verdict.csv and turns.csv, plus cdg_cycle.csv when a cycle exists.
/// Returns kExitVerify when any check fails.
int cmd_verify(const ExperimentConfig& cfg, bool adversarial, const CommandContext& ctx);

/// Writes report.csv, flit_latency_hist.csv and, with ctx.trace, trace.csv.
int cmd_simulate(const ExperimentConfig& cfg, const CommandContext& ctx);

/// Writes sweep.csv and, with ctx.plot, sweep.svg.
int cmd_sweep(const ExperimentConfig& cfg, const CommandContext& ctx);

/// Writes route.csv with header hop,router_id,x,y,z,layer,latency_ps where
/// latency_ps is the head latency on arrival through that router.
int cmd_route_trace(const ExperimentConfig& cfg, const Address& src, const Address& dst, const CommandContext& ctx);

/// Parses "x,y,z".
Address parse_address_arg(const std::string& s);

/// Full command line; maps errors to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hetnoc::cli
