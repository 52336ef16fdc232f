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

#include "hetnoc/techmodel.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>
#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

#include "hetnoc/types.hpp"

namespace hetnoc {

namespace {

void check_xi(double xi) {
  if (!(xi >= 1.0)) throw DomainError(fmt::format("scaling factor xi = {} must be >= 1", xi));
}

void check_samples(std::span<const Sample> samples, std::size_t minimum) {
  if (samples.size() < minimum)
    throw DomainError(fmt::format("fit needs at least {} samples, got {}", minimum, samples.size()));
  const bool degenerate = std::all_of(samples.begin(), samples.end(),
                                      [&](const Sample& s) { return s.xi == samples.front().xi; });
  if (degenerate) throw DomainError("all samples share the same xi");
  for (const auto& s : samples)
    if (!std::isfinite(s.xi) || !std::isfinite(s.value)) throw DomainError("non-finite sample");
}

double clamp_exp(double v) { return std::exp(std::clamp(v, -700.0, 700.0)); }

template <class Functor>
double run_lm(Functor& f, Eigen::VectorXd& x) {
  Eigen::LevenbergMarquardt<Functor> lm(f);
  lm.setMaxfev(4000);
  lm.setXtol(1e-15);
  lm.setFtol(1e-15);
  lm.setGtol(0.0);
  lm.minimize(x);
  Eigen::VectorXd r(f.values());
  f(x, r);
  return r.squaredNorm();
}

// Residuals of the area model in the free ratio r = alpha_hat / alpha.
struct AreaFunctor : Eigen::DenseFunctor<double> {
  std::span<const Sample> s;
  explicit AreaFunctor(std::span<const Sample> samples)
      : DenseFunctor<double>(1, static_cast<int>(samples.size())), s(samples) {}
  int operator()(const InputType& x, ValueType& f) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double q = 1.0 / (s[i].xi * s[i].xi);
      f(static_cast<Eigen::Index>(i)) = (1.0 + x(0)) / (q + x(0)) - s[i].value;
    }
    return 0;
  }
  int df(const InputType& x, JacobianType& j) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double q = 1.0 / (s[i].xi * s[i].xi);
      j(static_cast<Eigen::Index>(i), 0) = (q - 1.0) / ((q + x(0)) * (q + x(0)));
    }
    return 0;
  }
};

// Clock model in identifiable form beta / (1 + exp(lnK - exp(t) * xi)).
// Parameter vector: [lnK, t] when beta is fixed, else [lnK, t, beta].
struct ClockFunctor : Eigen::DenseFunctor<double> {
  std::span<const Sample> s;
  std::optional<double> beta_fixed;
  ClockFunctor(std::span<const Sample> samples, std::optional<double> fixed)
      : DenseFunctor<double>(fixed ? 2 : 3, static_cast<int>(samples.size())), s(samples), beta_fixed(fixed) {}
  double beta(const InputType& x) const { return beta_fixed ? *beta_fixed : x(2); }
  int operator()(const InputType& x, ValueType& f) const {
    const double bt = clamp_exp(x(1));
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double e = clamp_exp(x(0) - bt * s[i].xi);
      f(static_cast<Eigen::Index>(i)) = beta(x) / (1.0 + e) - s[i].value;
    }
    return 0;
  }
  int df(const InputType& x, JacobianType& j) const {
    const double bt = clamp_exp(x(1));
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const double e = clamp_exp(x(0) - bt * s[i].xi);
      const double d = 1.0 + e;
      const double g = e / (d * d);
      j(row, 0) = -beta(x) * g;
      j(row, 1) = beta(x) * g * bt * s[i].xi;
      if (!beta_fixed) j(row, 2) = 1.0 / d;
    }
    return 0;
  }
};

}  // namespace

void AreaParams::validate() const {
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
  if (!(alpha_hat >= 0.0)) throw DomainError("alpha_hat must be >= 0");
}

void ClockParams::validate() const {
  if (!(beta >= 1.0)) throw DomainError("beta must be >= 1");
  if (!(beta_hat > 0.0)) throw DomainError("beta_hat must be > 0");
  if (!(beta_tilde > 0.0)) throw DomainError("beta_tilde must be > 0");
}

double relative_scaling(double tau_coarse_nm, double tau_fine_nm) {
  if (!(tau_fine_nm > 0.0) || !(tau_coarse_nm > 0.0)) throw DomainError("feature sizes must be positive");
  if (tau_coarse_nm < tau_fine_nm) throw DomainError("coarse feature size is smaller than fine feature size");
  return tau_coarse_nm / tau_fine_nm;
}

double area_scaling(double xi, const AreaParams& p) {
  check_xi(xi);
  p.validate();
  return (p.alpha + p.alpha_hat) / (p.alpha / (xi * xi) + p.alpha_hat);
}

double clock_scaling(double xi, const ClockParams& p) {
  check_xi(xi);
  p.validate();
  return p.beta / (1.0 + p.beta_hat * std::exp(-p.beta_tilde * (xi - p.beta_bar)));
}

long scaled_router_count(long base, double s_f) {
  if (base < 1) throw DomainError("base router count must be >= 1");
  if (!(s_f >= 1.0)) throw DomainError("area scaling factor must be >= 1");
  return static_cast<long>(std::floor(static_cast<double>(base) * s_f));
}

double rmse_area(std::span<const Sample> samples, const AreaParams& p) {
  double acc = 0.0;
  for (const auto& s : samples) {
    const double r = (p.alpha + p.alpha_hat) / (p.alpha / (s.xi * s.xi) + p.alpha_hat) - s.value;
    acc += r * r;
  }
  return samples.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(samples.size()));
}

double rmse_clock(std::span<const Sample> samples, const ClockParams& p) {
  double acc = 0.0;
  for (const auto& s : samples) {
    const double r = p.beta / (1.0 + p.beta_hat * std::exp(-p.beta_tilde * (s.xi - p.beta_bar))) - s.value;
    acc += r * r;
  }
  return samples.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(samples.size()));
}

FitResult<AreaParams> fit_area(std::span<const Sample> samples, double alpha) {
  check_samples(samples, 3);
  if (!(alpha > 0.0)) throw DomainError("alpha normalization must be > 0");
  AreaFunctor f(samples);
  constexpr double kStarts[] = {0.0, 1e-3, 1e-2, 0.1, 0.5, 1.0, 10.0, 100.0};
  double best_cost = std::numeric_limits<double>::infinity();
  double best_r = 0.0;
  for (double r0 : kStarts) {
    Eigen::VectorXd x(1);
    x << r0;
    run_lm(f, x);
    // The ratio is bounded below by zero; compare against the boundary too.
    for (double r : {std::max(0.0, x(0)), 0.0}) {
      Eigen::VectorXd y(1), res(f.values());
      y << r;
      f(y, res);
      if (res.squaredNorm() < best_cost) {
        best_cost = res.squaredNorm();
        best_r = r;
      }
    }
  }
  FitResult<AreaParams> out{AreaParams{alpha, best_r * alpha}, 0.0};
  out.rmse = rmse_area(samples, out.params);
  return out;
}

FitResult<ClockParams> fit_clock(std::span<const Sample> samples, const ClockFitOptions& opt) {
  check_samples(samples, opt.beta_fixed ? 3 : 4);
  if (opt.beta_fixed && !(*opt.beta_fixed >= 1.0)) throw DomainError("fixed beta must be >= 1");
  double lo = samples.front().xi, hi = lo, vmax = 0.0;
  for (const auto& s : samples) {
    lo = std::min(lo, s.xi);
    hi = std::max(hi, s.xi);
    vmax = std::max(vmax, s.value);
  }
  ClockFunctor f(samples, opt.beta_fixed);
  const double beta0 = opt.beta_fixed ? *opt.beta_fixed : 1.1 * vmax;
  // Eight deterministic starts: slope and sigmoid midpoint spread over the data range.
  constexpr double kSlopes[] = {0.1, 0.3, 0.76, 1.5, 3.0, 0.5, 1.0, 2.0};
  constexpr double kMid[] = {0.5, 0.5, 0.5, 0.5, 0.5, 0.0, 1.0, 0.25};
  double best_cost = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best;
  for (int k = 0; k < 8; ++k) {
    const double mid = lo + kMid[k] * (hi - lo);
    Eigen::VectorXd x(f.inputs());
    x(0) = kSlopes[k] * mid;
    x(1) = std::log(kSlopes[k]);
    if (!opt.beta_fixed) x(2) = beta0;
    const double cost = run_lm(f, x);
    if (std::isfinite(cost) && cost < best_cost) {
      best_cost = cost;
      best = x;
    }
  }
  if (best.size() == 0) throw DomainError("clock fit did not converge");
  ClockParams p;
  p.beta = opt.beta_fixed ? *opt.beta_fixed : best(2);
  p.beta_tilde = std::exp(best(1));
  p.beta_bar = opt.beta_bar;
  p.beta_hat = std::exp(best(0) - p.beta_tilde * p.beta_bar);
  return FitResult<ClockParams>{p, rmse_clock(samples, p)};
}

std::vector<Sample> read_samples_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw DomainError("sample file is empty");
  const auto header = split(line);
  auto column = [&](const char* name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DomainError(fmt::format("sample file lacks column '{}'", name));
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cx = column("xi");
  const std::size_t cv = column("value");
  std::vector<Sample> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() <= std::max(cx, cv)) throw DomainError(fmt::format("line {}: missing fields", lineno));
    try {
      out.push_back(Sample{std::stod(cells[cx]), std::stod(cells[cv])});
    } catch (const std::exception&) {
      throw DomainError(fmt::format("line {}: not a number", lineno));
    }
  }
  return out;
}

std::string fit_report_csv(const FitResult<AreaParams>& r) {
  return fmt::format("param,value,rmse\nalpha,{},{}\nalpha_hat,{},{}\n", r.params.alpha, r.rmse,
                     r.params.alpha_hat, r.rmse);
}

std::string fit_report_csv(const FitResult<ClockParams>& r) {
  return fmt::format("param,value,rmse\nbeta,{0},{4}\nbeta_hat,{1},{4}\n"
                     "beta_tilde,{2},{4}\nbeta_bar,{3},{4}\n",
                     r.params.beta, r.params.beta_hat, r.params.beta_tilde, r.params.beta_bar, r.rmse);
}

}  // namespace hetnoc
