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
 * @file techmodel.hpp
 * @brief Technology scaling factors for router area and clock, plus fitting.
 *
 * Both scaling models carry one redundant parameter. The area factor only
 * depends on alpha_hat / alpha and the clock factor only on
 * beta_hat * exp(beta_tilde * beta_bar). The fitters therefore take the
 * redundant parameter as a fixed normalization and estimate the rest.
 */

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hetnoc {

struct AreaParams {
  double alpha = 1.0;
  double alpha_hat = 0.0;
  void validate() const;
};

struct ClockParams {
  double beta = 1.0;
  double beta_hat = 1.0;
  double beta_tilde = 1.0;
  double beta_bar = 1.0;
  void validate() const;
};

/// Published fits for a general-purpose (GP) and an ultra-low-voltage (ULV) library.
inline constexpr AreaParams kAreaGP{3462.7, 29.8};
inline constexpr AreaParams kAreaULV{13.2, 0.124};
inline constexpr ClockParams kClockGP{32.85, 7.88, 0.76, 1.26};
inline constexpr ClockParams kClockULV{77.45, 2.48, 0.76, 2.77};

template <class Params>
struct FitResult {
  Params params;
  double rmse = 0.0;
};

struct Sample {
  double xi = 1.0;
  double value = 1.0;
};

/// Xi = tau_coarse / tau_fine.
double relative_scaling(double tau_coarse_nm, double tau_fine_nm);
/// s_f = (alpha + alpha_hat) / (alpha / xi^2 + alpha_hat).
double area_scaling(double xi, const AreaParams& p);
/// c_f = beta / (1 + beta_hat * exp(-beta_tilde * (xi - beta_bar))).
double clock_scaling(double xi, const ClockParams& p);
/// floor(base * s_f): routers that fit in the same area after scaling.
long scaled_router_count(long base, double s_f);

/// Least-squares fit of the area model with alpha held at @p alpha.
FitResult<AreaParams> fit_area(std::span<const Sample> samples, double alpha = 1.0);

struct ClockFitOptions {
  std::optional<double> beta_fixed;
  double beta_bar = 1.0;  ///< normalization of the sigmoid offset
};

/// Least-squares fit of the clock model (multi-start Levenberg-Marquardt).
FitResult<ClockParams> fit_clock(std::span<const Sample> samples, const ClockFitOptions& opt = {});

double rmse_area(std::span<const Sample> samples, const AreaParams& p);
double rmse_clock(std::span<const Sample> samples, const ClockParams& p);

/// Reads a CSV with header columns `xi` and `value` (other columns ignored).
std::vector<Sample> read_samples_csv(std::istream& in);

/// CSV with header param,value,rmse.
std::string fit_report_csv(const FitResult<AreaParams>& r);
std::string fit_report_csv(const FitResult<ClockParams>& r);

}  // namespace hetnoc
