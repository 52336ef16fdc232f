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

#include <fmt/format.h>

#include "hetnoc/sim.hpp"

namespace hetnoc {

std::string SimReport::to_csv() const {
  std::string out = "metric,value\n";
  auto row = [&out](std::string_view name, auto value) { out += fmt::format("{},{}\n", name, value); };
  row("ticks", ticks);
  row("tick_ps", tick_ps);
  row("packets_created", packets_created);
  row("packets_delivered", packets_delivered);
  row("flits_injected", flits_injected);
  row("flits_ejected", flits_ejected);
  row("flits_in_flight", flits_in_flight);
  row("measured_packets", measured_packets);
  row("measured_flits", measured_flits);
  row("avg_flit_latency_ps", avg_flit_latency_ps);
  row("p50_flit_latency_ps", p50_flit_latency_ps);
  row("p95_flit_latency_ps", p95_flit_latency_ps);
  row("p99_flit_latency_ps", p99_flit_latency_ps);
  row("max_flit_latency_ps", max_flit_latency_ps);
  row("avg_head_latency_ps", avg_head_latency_ps);
  row("avg_packet_latency_ps", avg_packet_latency_ps);
  for (std::size_t z = 0; z < accepted_throughput.size(); ++z)
    row(fmt::format("layer{}_accepted_flits_per_tick", z + 1), accepted_throughput[z]);
  for (std::size_t z = 0; z < activity.size(); ++z) {
    const auto& a = activity[z];
    row(fmt::format("layer{}_buffer_writes", z + 1), a.buffer_writes);
    row(fmt::format("layer{}_buffer_reads", z + 1), a.buffer_reads);
    row(fmt::format("layer{}_crossbar_traversals", z + 1), a.crossbar_traversals);
    row(fmt::format("layer{}_horizontal_link_traversals", z + 1), a.horizontal_link_traversals);
    row(fmt::format("layer{}_vertical_link_traversals", z + 1), a.vertical_link_traversals);
  }
  row("energy_proxy", energy_proxy);
  return out;
}

std::string SimReport::histogram_csv() const {
  std::string out = "bin_lower_ps,bin_upper_ps,count\n";
  for (const auto& b : flit_latency_hist) out += fmt::format("{},{},{}\n", b.lower_ps, b.upper_ps, b.count);
  return out;
}

}  // namespace hetnoc
