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

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hetnoc/perfmodel.hpp"
#include "hetnoc/routing.hpp"
#include "hetnoc/sim.hpp"
#include "hetnoc/techmodel.hpp"
#include "hetnoc/verify.hpp"

namespace {

using namespace hetnoc;

// Slow n x n layer at stride 2 over a 2n x 2n fast layer.
StackConfig two_layer(int n) {
  StackConfig s;
  s.layers = {LayerSpec{"slow", n, n, 2, TechnologyNode{130, 2000, 2, 1, 2000.0}},
              LayerSpec{"fast", 2 * n, 2 * n, 1, TechnologyNode{65, 1000, 1, 1, 1000.0}}};
  return s;
}

StackConfig three_layer(int n) {
  StackConfig s;
  s.layers = {LayerSpec{"mixed", n, n, 1, TechnologyNode{130, 4000, 3, 2, 1000.0}},
              LayerSpec{"digital", n, n, 1, TechnologyNode{65, 2000, 3, 2, 1000.0}},
              LayerSpec{"cpu", n, n, 1, TechnologyNode{28, 1000, 3, 2, 1000.0}}};
  return s;
}

RoutingAlgorithm alg(RoutingVariant v) {
  RoutingAlgorithm a;
  a.variant = v;
  return a;
}

void BM_RouteDecision(benchmark::State& state) {
  const auto stack = two_layer(8);
  const TopologyGraph g(stack);
  const RoutingTable table(stack, alg(static_cast<RoutingVariant>(state.range(0))));
  const auto n = static_cast<std::uint32_t>(g.router_count());
  std::uint32_t i = 0;
  for (auto _ : state) {
    const auto& v = g.address(RouterId{i % n});
    const auto& d = g.address(RouterId{(i * 7919u + 13u) % n});
    benchmark::DoNotOptimize(table(v, d));
    ++i;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RouteDecision)->Arg(0)->Arg(1)->Arg(2)->ArgName("variant");

void BM_TraceAllPairs(benchmark::State& state) {
  const auto stack = two_layer(static_cast<int>(state.range(0)));
  const TopologyGraph g(stack);
  const auto route = make_route_function(stack, alg(RoutingVariant::R1));
  const auto n = static_cast<std::uint32_t>(g.router_count());
  for (auto _ : state) {
    std::size_t hops = 0;
    for (std::uint32_t s = 0; s < n; ++s)
      for (std::uint32_t d = 0; d < n; ++d)
        if (s != d) hops += trace_route(g, route, RouterId{s}, RouterId{d}).size();
    benchmark::DoNotOptimize(hops);
  }
  state.SetItemsProcessed(state.iterations() * n * (n - 1));
}
BENCHMARK(BM_TraceAllPairs)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_VerifyRouting(benchmark::State& state) {
  const auto stack = three_layer(static_cast<int>(state.range(0)));
  const TopologyGraph g(stack);
  const auto a = alg(RoutingVariant::R1);
  const auto route = make_route_function(stack, a);
  const auto ref = reference_turns(stack, a);
  for (auto _ : state) benchmark::DoNotOptimize(verify_routing(g, route, ref).passed());
}
BENCHMARK(BM_VerifyRouting)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_FindCycleAdversarial(benchmark::State& state) {
  const TopologyGraph g(three_layer(4));
  const auto cdg = build_cdg(g, make_adversarial_routing());
  for (auto _ : state) benchmark::DoNotOptimize(find_cycle(cdg));
}
BENCHMARK(BM_FindCycleAdversarial)->Unit(benchmark::kMicrosecond);

void BM_SimulateUniform(benchmark::State& state) {
  const auto stack = three_layer(4);
  const TopologyGraph g(stack);
  SimParams p;
  p.warmup_ticks = 1000;
  p.measure_ticks = 10000;
  p.drain_ticks = 10000;
  const UniformTraffic traffic{static_cast<double>(state.range(0)) / 100.0, 8};
  Ticks ticks = 0;
  for (auto _ : state) ticks += run(g, alg(RoutingVariant::R1), RouterKind::HighVT, traffic, p).ticks;
  state.counters["ticks_per_s"] = benchmark::Counter(static_cast<double>(ticks), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SimulateUniform)->Arg(1)->Arg(4)->Arg(10)->ArgName("rate_pct")->Unit(benchmark::kMillisecond);

void BM_FitClock(benchmark::State& state) {
  std::vector<Sample> samples;
  for (int i = 0; i < 30; ++i) {
    const double xi = 1.0 + 9.0 * i / 29.0;
    samples.push_back({xi, clock_scaling(xi, kClockGP) * (1.0 + 0.01 * std::sin(7.0 * i))});
  }
  const ClockFitOptions opt{std::nullopt, kClockGP.beta_bar};
  for (auto _ : state) benchmark::DoNotOptimize(fit_clock(samples, opt).rmse);
}
BENCHMARK(BM_FitClock)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
