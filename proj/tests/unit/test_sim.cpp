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
#include <hetnoc/sim.hpp>

#include <sstream>

#include "generators.hpp"

using namespace hetnoc;

namespace {

StackConfig stack2(int slow_period, int delta = 3, int chi = 2, int n = 4) {
  StackConfig s;
  for (int z = 1; z <= 2; ++z) {
    LayerSpec l;
    l.name = z == 1 ? "slow" : "fast";
    l.rows = l.cols = n;
    l.tech.feature_size_nm = z == 1 ? 130 : 45;
    l.tech.clk_period_ps = z == 1 ? 1000LL * slow_period : 1000;
    l.tech.head_delay = delta;
    l.tech.pipeline_depth = chi;
    s.layers.push_back(l);
  }
  return s;
}

RoutingAlgorithm variant(RoutingVariant v) {
  RoutingAlgorithm a;
  a.variant = v;
  return a;
}

TraceTraffic one(Address s, Address d, int length, Ticks at = 0) {
  TraceTraffic t;
  t.entries.push_back({at, s, d, length});
  return t;
}

TraceTraffic stream(Address s, Address d, int length, int count) {
  TraceTraffic t;
  for (int i = 0; i < count; ++i) t.entries.push_back({0, s, d, length});
  return t;
}

SimParams quick() {
  SimParams p;
  p.warmup_ticks = 0;
  p.measure_ticks = 2000;
  p.drain_ticks = 2000;
  return p;
}

SimParams window() {
  SimParams p;
  p.buffer_depth = 16;
  p.warmup_ticks = 1000;
  p.measure_ticks = 10000;
  p.drain_ticks = 0;
  return p;
}

}  // namespace

TEST_SUITE("sim") {
  TEST_CASE("router kind names") {
    CHECK(parse_router_kind(to_string(RouterKind::HighVT)) == RouterKind::HighVT);
    CHECK(parse_router_kind("standard") == RouterKind::Standard);
    CHECK_FALSE(parse_router_kind("fast"));
  }

  TEST_CASE("zero-load head latency on a homogeneous layer") {
    TopologyGraph g(stack2(1));
    const auto rep = run(g, variant(RoutingVariant::XYZ), RouterKind::Standard, one({0, 0, 2}, {3, 2, 2}, 1), quick());
    REQUIRE(rep.packets.size() == 1);
    CHECK(rep.packets[0].head_ejected - rep.packets[0].created == (5 + 1) * 3);
  }

  TEST_CASE("upward crossing matches the vertical model") {
    TopologyGraph g(stack2(2));
    const auto rep = run(g, variant(RoutingVariant::R1), RouterKind::Standard, one({1, 1, 2}, {1, 1, 1}, 1), quick());
    const Packet pk{Position{0, 0, 2}, Position{0, 0, 1}, 1};
    CHECK((rep.packets[0].head_ejected - rep.packets[0].created) * 1000 ==
          head_latency_v(pk, g.stack(), Vertical::Up));
    const auto down = run(g, variant(RoutingVariant::R1), RouterKind::Standard, one({1, 1, 1}, {1, 1, 2}, 1), quick());
    CHECK((down.packets[0].head_ejected - down.packets[0].created) * 1000 ==
          head_latency_v(Packet{Position{0, 0, 1}, Position{0, 0, 2}, 1}, g.stack(), Vertical::Down));
  }

  TEST_CASE("a packet occupies one router for delta + l cycles") {
    TopologyGraph g(stack2(1));
    const int l = 6;
    const auto rep = run(g, variant(RoutingVariant::XYZ), RouterKind::Standard, one({0, 0, 2}, {1, 0, 2}, l), quick());
    const auto& r = rep.packets[0];
    CHECK(r.head_ejected - r.created == 2 * 3);
    CHECK(r.tail_ejected - r.head_ejected == l - 1);
  }

  TEST_CASE("back-to-back packets leave a delta - chi bubble") {
    TopologyGraph g(stack2(1, 3, 2));
    const auto rep = run(g, variant(RoutingVariant::XYZ), RouterKind::Standard, stream({0, 0, 2}, {2, 0, 2}, 4, 2), quick());
    REQUIRE(rep.packets.size() == 2);
    CHECK(rep.packets[1].head_ejected - rep.packets[0].tail_ejected == 1 + (3 - 2));
    TopologyGraph full(stack2(1, 3, 3));
    const auto piped =
        run(full, variant(RoutingVariant::XYZ), RouterKind::Standard, stream({0, 0, 2}, {2, 0, 2}, 4, 2), quick());
    CHECK(piped.packets[1].head_ejected - piped.packets[0].tail_ejected == 1);
  }

  TEST_CASE("crossbar traversals count flits times routers") {
    TopologyGraph g(stack2(2));
    const int l = 5;
    const auto rep = run(g, variant(RoutingVariant::XYZ), RouterKind::Standard, one({0, 0, 1}, {2, 1, 2}, l), quick());
    std::uint64_t xbar = 0;
    for (const auto& a : rep.activity) xbar += a.crossbar_traversals;
    CHECK(xbar == static_cast<std::uint64_t>(l) * (3 + 1 + 1));
    CHECK(rep.activity[0].horizontal_link_traversals == static_cast<std::uint64_t>(l) * 3);
    CHECK(rep.activity[0].vertical_link_traversals == static_cast<std::uint64_t>(l));
  }

  TEST_CASE("zero energy weights give a zero proxy") {
    TopologyGraph g(stack2(2));
    SimParams p = quick();
    p.energy = EnergyWeights{0, 0, 0, 0, 0, true};
    const auto rep = run(g, variant(RoutingVariant::R1), RouterKind::Standard, UniformTraffic{0.05, 4}, p);
    CHECK(rep.flits_ejected > 0);
    CHECK(rep.energy_proxy == 0.0);
    p.energy = EnergyWeights{};
    CHECK(run(g, variant(RoutingVariant::R1), RouterKind::Standard, UniformTraffic{0.05, 4}, p).energy_proxy > 0.0);
  }

  TEST_CASE("weakest link: standard routers run at the slow clock") {
    for (int c : {2, 4}) {
      TopologyGraph g(stack2(c, 3, 3));
      const auto rep = run(g, variant(RoutingVariant::R1), RouterKind::Standard, stream({2, 2, 1}, {2, 2, 2}, 128, 200),
                           window());
      CHECK(std::abs(rep.accepted_throughput[1] * 10000 - 10000.0 / c) <= 1.0);
    }
  }

  TEST_CASE("weakest link with pipeline bubbles") {
    TopologyGraph g(stack2(2, 3, 2));
    const int l = 32;
    const Packet pk{Position{0, 0, 1}, Position{0, 0, 2}, l};
    const double per_tick = throughput_v(pk, g.stack(), 1, 2) * 1e-12 * 1000;
    // One lane per port: every packet pays the full bubble.
    SimParams single = window();
    single.vcs = 1;
    const auto rep = run(g, variant(RoutingVariant::R1), RouterKind::Standard, stream({2, 2, 1}, {2, 2, 2}, l, 400),
                         single);
    CHECK(std::abs(rep.accepted_throughput[1] * 10000 - per_tick * 10000) <= 1.0);
    // Extra lanes overlap the next head with the current body.
    const auto multi = run(g, variant(RoutingVariant::R1), RouterKind::Standard, stream({2, 2, 1}, {2, 2, 2}, l, 400),
                           window());
    CHECK(multi.accepted_throughput[1] * 10000 >= per_tick * 10000 - 1.0);
    CHECK(multi.accepted_throughput[1] * 10000 <= 5000.0 + 1.0);
  }

  TEST_CASE("high-vt bubble is paid in slow cycles") {
    for (int c : {2, 4}) {
      TopologyGraph g(stack2(c, 3, 2));
      const int l = 32;
      const auto rep =
          run(g, variant(RoutingVariant::R1), RouterKind::HighVT, stream({2, 2, 1}, {2, 2, 2}, l, 400), window());
      const double per_tick = static_cast<double>(l) / (l + c * (3 - 2));
      CHECK(std::abs(rep.accepted_throughput[1] * 10000 - per_tick * 10000) <= 1.0);
    }
  }

  TEST_CASE("homogeneous vertical link moves a flit per cycle") {
    TopologyGraph g(stack2(1, 3, 3));
    const auto rep =
        run(g, variant(RoutingVariant::R1), RouterKind::Standard, stream({2, 2, 1}, {2, 2, 2}, 128, 200), window());
    CHECK(std::abs(rep.accepted_throughput[1] * 10000 - 10000.0) <= 1.0);
  }

  TEST_CASE("high-vt routers lift the slow layer to the fast clock") {
    for (int c : {2, 4}) {
      TopologyGraph g(stack2(c, 3, 3));
      const auto down =
          run(g, variant(RoutingVariant::R1), RouterKind::HighVT, stream({2, 2, 1}, {2, 2, 2}, 128, 200), window());
      CHECK(std::abs(down.accepted_throughput[1] * 10000 - 10000.0) <= 1.0);
      const auto up =
          run(g, variant(RoutingVariant::R1), RouterKind::HighVT, stream({2, 2, 2}, {2, 2, 1}, 128, 200), window());
      CHECK(std::abs(up.accepted_throughput[0] * 10000 - 10000.0) <= 1.0);
    }
  }

  TEST_CASE("single-flit packets gain nothing from high-vt") {
    TopologyGraph g(stack2(2));
    for (auto [s, d] : {std::pair<Address, Address>{{1, 1, 1}, {3, 1, 2}}, {{3, 1, 2}, {1, 1, 1}}}) {
      const auto a = run(g, variant(RoutingVariant::R1), RouterKind::Standard, one(s, d, 1), quick());
      const auto b = run(g, variant(RoutingVariant::R1), RouterKind::HighVT, one(s, d, 1), quick());
      const auto la = a.packets[0].tail_ejected - a.packets[0].created;
      const auto lb = b.packets[0].tail_ejected - b.packets[0].created;
      CHECK(std::abs(la - lb) <= 2);
    }
  }

  TEST_CASE("configuration checks") {
    TopologyGraph g(stack2(4));
    SimParams p = quick();
    CHECK_THROWS_AS(validate_sim(g, variant(RoutingVariant::XYZ), RouterKind::HighVT, p), ConfigError);
    p.buffer_depth = 3;
    CHECK_THROWS_AS(validate_sim(g, variant(RoutingVariant::R1), RouterKind::HighVT, p), ConfigError);
    p = quick();
    p.phases = {0};
    CHECK_THROWS_AS(validate_sim(g, variant(RoutingVariant::R1), RouterKind::Standard, p), ConfigError);
    p.phases = {4, 0};
    CHECK_THROWS_AS(validate_sim(g, variant(RoutingVariant::R1), RouterKind::Standard, p), ConfigError);
    p = quick();
    p.vcs = 0;
    CHECK_THROWS_AS(validate_sim(g, variant(RoutingVariant::R1), RouterKind::Standard, p), ConfigError);
  }

  TEST_CASE("watchdog aborts a stalled network") {
    TopologyGraph g(stack2(1));
    SimParams p = quick();
    p.watchdog_ticks = 1;
    CHECK_THROWS_AS(run(g, variant(RoutingVariant::XYZ), RouterKind::Standard, one({0, 0, 2}, {3, 3, 2}, 1), p),
                    WatchdogAbort);
  }

  TEST_CASE("same seed, same report") {
    TopologyGraph g(stack2(2));
    SimParams p = quick();
    p.seed = 99;
    const auto a = run(g, variant(RoutingVariant::R2), RouterKind::HighVT, UniformTraffic{0.1, 8}, p);
    const auto b = run(g, variant(RoutingVariant::R2), RouterKind::HighVT, UniformTraffic{0.1, 8}, p);
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.histogram_csv() == b.histogram_csv());
    CHECK(a.to_csv().rfind("metric,value\n", 0) == 0);
    CHECK(a.histogram_csv().rfind("bin_lower_ps,bin_upper_ps,count\n", 0) == 0);
  }

  TEST_CASE("event trace rows") {
    TopologyGraph g(stack2(1));
    std::ostringstream trace;
    RunOptions opt;
    opt.trace = &trace;
    run(g, variant(RoutingVariant::XYZ), RouterKind::Standard, one({0, 0, 2}, {1, 0, 2}, 2), quick(), opt);
    const auto text = trace.str();
    CHECK(text.rfind("tick,router,port,flit_id,event\n", 0) == 0);
    CHECK(text.find("inject") != std::string::npos);
    CHECK(text.find("eject") != std::string::npos);
  }

  TEST_CASE("property: flits are conserved every tick under load") {
    testgen::Gen gen(61);
    for (int trial = 0; trial < 8; ++trial) {
      const auto cfg = testgen::random_stack(gen, {.max_layers = 3, .max_bottom = 4});
      TopologyGraph g(cfg);
      const auto v = gen.pick(std::vector<RoutingVariant>{RoutingVariant::XYZ, RoutingVariant::R1, RoutingVariant::R2});
      const auto kind = v == RoutingVariant::XYZ || gen.coin() ? RouterKind::Standard : RouterKind::HighVT;
      SimParams p = quick();
      p.measure_ticks = 1500;
      p.drain_ticks = 20000;
      p.buffer_depth = 8;
      p.seed = static_cast<std::uint64_t>(trial) + 1;
      bool balanced = true;
      RunOptions opt;
      opt.on_tick = [&](Ticks, std::uint64_t in, std::uint64_t out, std::uint64_t held) {
        if (in != out + held) balanced = false;
      };
      const auto rep = run(g, variant(v), kind, UniformTraffic{gen.real(0.05, 0.3), gen.range(1, 12)}, p, opt);
      CHECK(balanced);
      CHECK(rep.packets_delivered == rep.packets_created);
      CHECK(rep.flits_in_flight == 0);
      CHECK(rep.flits_injected == rep.flits_ejected);
    }
  }

  TEST_CASE("property: zero-load head latency equals the model on random stacks") {
    testgen::Gen gen(62);
    for (int trial = 0; trial < 10; ++trial) {
      const auto cfg = testgen::random_stack(gen, {.max_layers = 3, .max_bottom = 4});
      TopologyGraph g(cfg);
      for (auto v : {RoutingVariant::XYZ, RoutingVariant::R1, RoutingVariant::R2}) {
        const auto fn = make_route_function(cfg, variant(v));
        std::vector<std::pair<RouterId, RouterId>> pairs;
        for (int k = 0; k < 40; ++k) {
          const auto s = g.at(testgen::random_address(gen, cfg));
          const auto d = g.at(testgen::random_address(gen, cfg));
          if (s != d) pairs.emplace_back(s, d);
        }
        const int length = gen.range(1, 6);
        const auto lat = measure_zero_load(g, variant(v), RouterKind::Standard, pairs, length, SimParams{});
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          const auto route = trace_route(g, fn, pairs[i].first, pairs[i].second);
          CHECK(lat[i] * cfg.fastest_period_ps() == route_latency_estimate(g, route));
        }
      }
    }
  }
}
