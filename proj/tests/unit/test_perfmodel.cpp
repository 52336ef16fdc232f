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

#include <doctest.h>

#include <hetnoc/perfmodel.hpp>

#include <cmath>
#include <vector>

#include "generators.hpp"

using namespace hetnoc;

namespace {

constexpr double kThroughputL31 = 484374999.99999994;  // flits/s, l=31 delta=3 chi=2 clk=2000
constexpr double kOmega = 333333.3333333333;           // m/s, rho=1000um delta=3 clk=1000
constexpr double kPhiExample = 2111.1111111111113;     // um, slow 3x4000 vs fast 3x1000, rho 1000

LayerTiming timing(int layer, int delta, int chi, Picoseconds clk, double pitch) {
  return LayerTiming{layer, delta, chi, clk, pitch};
}

StackConfig pair(Picoseconds slow_clk, Picoseconds fast_clk, int rows = 4, int delta = 3) {
  StackConfig s;
  for (int i = 0; i < 2; ++i) {
    LayerSpec l;
    l.name = i == 0 ? "slow" : "fast";
    l.rows = l.cols = rows;
    l.tech.clk_period_ps = i == 0 ? slow_clk : fast_clk;
    l.tech.head_delay = delta;
    l.tech.pipeline_depth = delta - 1;
    s.layers.push_back(l);
  }
  return s;
}

Packet at(double sx, double sy, int sz, double dx, double dy, int dz, int length = 1) {
  return Packet{Position{sx, sy, sz}, Position{dx, dy, dz}, length};
}

}  // namespace

TEST_SUITE("perfmodel") {
  TEST_CASE("horizontal_distance") {
    CHECK(horizontal_distance(at(5, 5, 1, 5, 5, 1)) == 0.0);
    CHECK(horizontal_distance(at(0, 0, 1, 1500, 1000, 1)) == 2500.0);
    CHECK(horizontal_distance(at(1500, 1000, 1, 0, 0, 1)) == 2500.0);
  }

  TEST_CASE("head_latency_h") {
    const auto t = timing(1, 3, 2, 1000, 1000.0);
    CHECK(head_latency_h(at(0, 0, 1, 0, 0, 1), t) == 3000.0);
    CHECK(head_latency_h(at(0, 0, 1, 3000, 0, 1), t) == 12000.0);
    const double l1 = head_latency_h(at(0, 0, 1, 1e6, 0, 1), t);
    const double l2 = head_latency_h(at(0, 0, 1, 2e6, 0, 1), t);
    CHECK(std::abs(l2 - 2 * l1) <= 3000.0);
    CHECK_THROWS_AS(head_latency_h(at(0, 0, 2, 0, 0, 2), t), DomainError);
  }

  TEST_CASE("throughput_h") {
    CHECK(throughput_h(at(0, 0, 1, 0, 0, 1, 10), timing(1, 3, 3, 1000, 1)) == doctest::Approx(1e9).epsilon(1e-15));
    CHECK(throughput_h(at(0, 0, 1, 0, 0, 1, 31), timing(1, 3, 2, 2000, 1)) ==
          doctest::Approx(kThroughputL31).epsilon(1e-15));
    CHECK(throughput_h(at(0, 0, 1, 0, 0, 1, 1 << 30), timing(1, 3, 0, 1000, 1)) ==
          doctest::Approx(1e9).epsilon(1e-8));
  }

  TEST_CASE("head_latency_v") {
    const auto s = pair(2000, 1000);
    CHECK(head_latency_v(at(0, 0, 2, 0, 0, 2), s, Vertical::Down) == 3000);
    CHECK(head_latency_v(at(0, 0, 2, 0, 0, 1), s, Vertical::Up) == 11000);
    CHECK(head_latency_v(at(0, 0, 1, 0, 0, 2), s, Vertical::Down) == 9000);
    CHECK_THROWS_AS(head_latency_v(at(0, 0, 1, 0, 0, 1), s, Vertical::Up), DomainError);
    CHECK_THROWS_AS(head_latency_v(at(0, 0, 2, 0, 0, 1), s, Vertical::Down), DomainError);
  }

  TEST_CASE("throughput_v") {
    auto s = pair(2000, 1000);
    for (auto& l : s.layers) l.tech.pipeline_depth = l.tech.head_delay;
    const Packet p = at(0, 0, 1, 0, 0, 2, 16);
    CHECK(throughput_v(p, s, 1, 2) == doctest::Approx(0.5e9).epsilon(1e-15));
    CHECK(throughput_v(p, s, 2, 2) == doctest::Approx(throughput_h(at(0, 0, 2, 0, 0, 2, 16), LayerTiming::of(s, 2))));
    CHECK(throughput_v(p, s, 1, 2) <= throughput_v(p, s, 1, 1));
  }

  TEST_CASE("propagation_speed") {
    const auto t = timing(1, 3, 2, 1000, 1000.0);
    CHECK(propagation_speed(t) == doctest::Approx(kOmega).epsilon(1e-15));
    CHECK(propagation_speed(timing(1, 3, 2, 500, 1000.0)) == doctest::Approx(2 * kOmega).epsilon(1e-15));
    const double s = 1e9;
    const Packet p = at(0, 0, 1, s, 0, 1);
    const double ratio = propagation_speed(t) * head_latency_h(p, t) * 1e-12 / (s * 1e-6);
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-5));
  }

  TEST_CASE("rerouting threshold") {
    const auto slow = timing(1, 3, 2, 4000, 1000.0);
    const auto fast = timing(2, 3, 2, 1000, 1000.0);
    const double phi = rerouting_threshold_phi(slow, fast);
    CHECK(phi == doctest::Approx(kPhiExample).epsilon(1e-14));
    const double edge = 4 * 1000.0;
    CHECK(phi / edge >= 0.45);
    CHECK(phi / edge <= 0.63);
    CHECK(rerouting_threshold_hops(phi, fast.router_pitch_um) == 3);

    CHECK(is_unbounded(rerouting_threshold_phi(fast, slow)));
    CHECK(is_unbounded(rerouting_threshold_phi(slow, slow)));
    CHECK(is_unbounded(rerouting_threshold_phi(timing(1, 3, 2, 1000, 1000.0), timing(2, 3, 2, 1000, 1000.0))));

    CHECK(rerouting_threshold_hops(3000.0, 1000.0) == 3);
    const auto inf = rerouting_threshold_hops(std::numeric_limits<double>::infinity(), 1000.0);
    CHECK(inf == kUnboundedHops);
    CHECK(inf > 1000 + 1000);
  }

  TEST_CASE("route_latency_estimate") {
    TopologyGraph g(pair(2000, 1000));
    const std::vector<RouterId> single{g.at({1, 1, 1})};
    CHECK(route_latency_estimate(g, single) == 6000);

    std::vector<RouterId> row;
    for (int x = 0; x < 4; ++x) row.push_back(g.at({x, 0, 2}));
    CHECK(route_latency_estimate(g, row) == 4 * 3000);
    CHECK(static_cast<double>(route_latency_estimate(g, row)) ==
          head_latency_h(at(0, 0, 2, 3000, 0, 2), LayerTiming::of(g.stack(), 2)));

    std::vector<RouterId> detour{g.at({0, 0, 1})};
    for (int x = 0; x < 4; ++x) detour.push_back(g.at({x, 0, 2}));
    detour.push_back(g.at({3, 0, 1}));
    const auto& st = g.stack();
    const Picoseconds composed = head_latency_v(at(0, 0, 1, 0, 0, 2), st, Vertical::Down) +
                                 static_cast<Picoseconds>(head_latency_h(at(0, 0, 2, 3000, 0, 2), LayerTiming::of(st, 2))) +
                                 head_latency_v(at(3000, 0, 2, 3000, 0, 1), st, Vertical::Up) - 2 * 3 * 1000;
    CHECK(route_latency_estimate(g, detour) == composed);
    CHECK(composed == 26000);

    const std::vector<RouterId> broken{g.at({0, 0, 1}), g.at({2, 0, 1})};
    CHECK_THROWS_AS(route_latency_estimate(g, broken), DomainError);
  }

  TEST_CASE("zero-load flit latency") {
    TopologyGraph g(pair(2000, 1000));
    const std::vector<RouterId> down{g.at({0, 0, 1}), g.at({0, 0, 2})};
    CHECK(route_flit_interval_ps(g, down, false) == 2000);
    CHECK(route_flit_interval_ps(g, down, true) == 1000);
    CHECK(zero_load_flit_latency_ps(g, down, 5, false) == 9000.0 + 0.5 * 4 * 2000);
    CHECK(zero_load_flit_latency_ps(g, down, 1, true) == 9000.0);
    const std::vector<RouterId> across{g.at({0, 0, 1}), g.at({1, 0, 1})};
    CHECK(route_flit_interval_ps(g, across, true) == 2000);
  }

  TEST_CASE("property: detour beats staying exactly beyond phi") {
    testgen::Gen gen(31);
    int bounded = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const auto slow = timing(1, gen.range(1, 5), 0, 1000LL * gen.range(1, 6), 250.0 * gen.range(1, 8));
      const auto fast = timing(2, gen.range(1, 5), 0, 1000LL * gen.range(1, 3), 250.0 * gen.range(1, 8));
      const double phi = rerouting_threshold_phi(slow, fast);
      const double ds = static_cast<double>(slow.head_time_ps());
      const double df = static_cast<double>(fast.head_time_ps());
      auto stay = [&](double s) { return (s / slow.router_pitch_um + 1) * ds; };
      auto detour = [&](double s) {
        return (ds + df) + (s / fast.router_pitch_um + 1) * df + (ds + df + static_cast<double>(slow.clk_period_ps)) -
               2 * df;
      };
      if (is_unbounded(phi)) {
        for (double s = 0; s < 1e6; s += 997.0) CHECK(detour(s) >= stay(s) - 1e-6);
        continue;
      }
      ++bounded;
      const double eps = 1e-6 * std::max(1.0, phi);
      CHECK(detour(phi + eps) < stay(phi + eps));
      if (phi > eps) CHECK(detour(phi - eps) > stay(phi - eps));
    }
    CHECK(bounded > 50);
  }

  TEST_CASE("property: evaluation is deterministic") {
    testgen::Gen gen(32);
    for (int trial = 0; trial < 100; ++trial) {
      const auto t = timing(1, gen.range(1, 5), 1, 1000LL * gen.range(1, 4), gen.real(100, 2000));
      const Packet p = at(0, 0, 1, gen.real(0, 1e4), gen.real(0, 1e4), 1, gen.range(1, 64));
      CHECK(head_latency_h(p, t) == head_latency_h(p, t));
      CHECK(throughput_h(p, t) == throughput_h(p, t));
    }
  }
}
