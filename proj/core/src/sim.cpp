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

#include "hetnoc/sim.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <ostream>
#include <queue>

namespace hetnoc {

std::string_view to_string(RouterKind k) noexcept { return k == RouterKind::Standard ? "standard" : "high_vt"; }

std::optional<RouterKind> parse_router_kind(std::string_view s) noexcept {
  if (s == "standard") return RouterKind::Standard;
  if (s == "high_vt") return RouterKind::HighVT;
  return std::nullopt;
}

namespace {

constexpr int kLocal = 6;
constexpr int kPorts = 7;
constexpr Ticks kNever = std::numeric_limits<Ticks>::min() / 4;
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

const char* port_name(int p) {
  static constexpr const char* kNames[] = {"north", "east", "south", "west", "up", "down", "local"};
  return kNames[p];
}

struct Flit {
  std::uint32_t packet;
  std::uint32_t seq;
  Ticks ready;
  bool head;
  bool tail;
};

struct VirtualChannel {
  std::deque<Flit> q;
  int capacity = 0;
  int route = -1;     // output requested by the head at the front
  int out_port = -1;  // output held by the packet currently leaving
  int out_vc = -1;
};

struct InPort {
  bool present = false;
  int width = 1;
  Ticks next_read = 0;
  int up_router = -1;
  int up_port = -1;
  std::vector<VirtualChannel> vcs;
};

struct OutPort {
  bool present = false;
  bool fill = false;  // collect a full group before sending (shift register)
  bool horizontal = false;
  int group = 1;
  int link_period = 1;
  Ticks sync = 0;
  Ticks xbar_next = 0;
  Ticks link_next = 0;
  Ticks last_tail = kNever;
  int down_router = -1;
  int down_port = -1;
  std::vector<int> credits;
  std::vector<int> owner;
  std::vector<Flit> staging;
  int staging_vc = -1;
  int staging_slot = -1;
  int rr = 0;
  int vc_rr = 0;
};

struct Node {
  int z = 1;
  int period = 1;
  int delta = 1;
  int chi = 0;
  int width = 1;  // c_f for high-VT routers, else 1
  bool high_vt = false;
  int vcs = 1;
  std::array<InPort, kPorts> in;
  std::array<OutPort, kPorts> out;
  std::uint64_t held = 0;
  std::deque<std::uint32_t> pending;
  std::uint32_t inj_packet = kNone;
  std::uint32_t inj_seq = 0;
  int inj_vc = -1;
  int ni_rr = 0;
  Ticks ni_next = 0;
};

struct PacketState {
  PacketRecord rec;
  std::uint32_t ejected = 0;
  std::int32_t wait_gate = -1;
  std::int32_t feed_gate = -1;
  Ticks gate_offset = 0;
};

struct CreditReturn {
  int router;
  int port;
  int vc;
  int count;
};

class Engine {
 public:
  Engine(const TopologyGraph& g, const RoutingAlgorithm& alg, RouterKind kind, const InjectionSchedule& s,
         const SimParams& p, const RunOptions& opt)
      : g_(g), table_(g.stack(), alg), p_(p), opt_(opt), gates_(s.gates) {
    build_nodes(kind);
    packets_.reserve(s.packets.size());
    gate_waiters_.resize(gates_.size());
    gate_count_.assign(gates_.size(), 0);
    for (const auto& sp : s.packets) {
      PacketState ps;
      ps.rec.id = sp.id;
      ps.rec.src = sp.src;
      ps.rec.dst = sp.dst;
      ps.rec.length = sp.length;
      ps.wait_gate = sp.wait_gate;
      ps.feed_gate = sp.feed_gate;
      ps.gate_offset = sp.gate_offset;
      const auto idx = static_cast<std::uint32_t>(packets_.size());
      if (sp.wait_gate >= 0)
        gate_waiters_[static_cast<std::size_t>(sp.wait_gate)].push_back(idx);
      else
        releases_.emplace(sp.release, idx);
      packets_.push_back(ps);
    }
    for (std::size_t gi = 0; gi < gates_.size(); ++gi)
      if (gates_[gi].required == 0) open_gate(gi, gates_[gi].earliest);
    layer_ejects_.assign(static_cast<std::size_t>(g.stack().layer_count()), 0);
    activity_.assign(static_cast<std::size_t>(g.stack().layer_count()), LayerActivity{});
    if (opt_.trace) *opt_.trace << "tick,router,port,flit_id,event\n";
  }

  SimReport run() {
    const Ticks end = p_.end_tick();
    Ticks t = 0;
    Ticks last_progress = 0;
    while (t < end) {
      while (!releases_.empty() && releases_.top().first <= t) {
        const auto idx = releases_.top().second;
        releases_.pop();
        auto& ps = packets_[idx];
        ps.rec.created = t;
        nodes_[ps.rec.src.value].pending.push_back(idx);
        ++pending_;
        ++created_;
      }
      if (in_network_ == 0 && pending_ == 0) {
        if (releases_.empty()) break;
        t = std::max(t, releases_.top().first);
        last_progress = t;
        continue;
      }
      progress_ = false;
      for (std::size_t r = 0; r < nodes_.size(); ++r)
        if (nodes_[r].held > 0) process_router(static_cast<int>(r), t);
      for (std::size_t r = 0; r < nodes_.size(); ++r)
        if (nodes_[r].inj_packet != kNone || !nodes_[r].pending.empty()) inject(static_cast<int>(r), t);
      for (const auto& c : credit_returns_)
        nodes_[static_cast<std::size_t>(c.router)].out[static_cast<std::size_t>(c.port)].credits[static_cast<std::size_t>(c.vc)] +=
            c.count;
      credit_returns_.clear();
      if (opt_.on_tick) opt_.on_tick(t, injected_, ejected_, in_network_);
      if (progress_) last_progress = t;
      if (t - last_progress > p_.watchdog_ticks) abort_stalled(t);
      ++t;
    }
    return finish(t);
  }

 private:
  void build_nodes(RouterKind kind) {
    const auto& st = g_.stack();
    nodes_.resize(g_.router_count());
    for (std::uint32_t r = 0; r < g_.router_count(); ++r) {
      Node& n = nodes_[r];
      n.z = g_.layer_of(RouterId{r});
      n.period = st.period_ticks(n.z);
      n.delta = st.tech(n.z).head_delay;
      n.chi = st.tech(n.z).pipeline_depth;
      n.high_vt = kind == RouterKind::HighVT && n.period > 1;
      n.width = n.high_vt ? n.period : 1;
      n.vcs = n.high_vt ? p_.slow_vcs : p_.vcs;
    }
    for (std::uint32_t r = 0; r < g_.router_count(); ++r) {
      Node& n = nodes_[r];
      for (int port = 0; port < kPorts; ++port) {
        std::optional<RouterId> nb;
        if (port != kLocal) {
          nb = g_.neighbor(RouterId{r}, kDirections[static_cast<std::size_t>(port)]);
          if (!nb) continue;
        }
        const bool wide = n.high_vt && (port == kLocal || port >= 4);
        InPort& in = n.in[static_cast<std::size_t>(port)];
        in.present = true;
        in.width = wide ? n.width : 1;
        in.vcs.resize(static_cast<std::size_t>(n.vcs));
        for (auto& vc : in.vcs) vc.capacity = p_.buffer_depth * in.width;
        OutPort& out = n.out[static_cast<std::size_t>(port)];
        out.present = true;
        out.horizontal = port < 4;
        if (port == kLocal) {
          out.group = n.width;
          out.link_period = n.period;
          continue;
        }
        const Node& u = nodes_[nb->value];
        in.up_router = static_cast<int>(nb->value);
        in.up_port = index_of(opposite(kDirections[static_cast<std::size_t>(port)]));
        out.down_router = static_cast<int>(nb->value);
        out.down_port = index_of(opposite(kDirections[static_cast<std::size_t>(port)]));
        if (port < 4) {
          out.group = 1;
          out.link_period = n.period;
        } else {
          out.link_period = std::max(n.period, u.period);
          if (n.high_vt && u.high_vt)
            out.group = std::min(n.width, u.width);
          else
            out.group = std::max(n.width, u.width);
          out.fill = !n.high_vt && u.high_vt;
          if (port == index_of(Direction::Up) && u.period > n.period) out.sync = u.period;
        }
        out.credits.assign(static_cast<std::size_t>(u.vcs), 0);
        out.owner.assign(static_cast<std::size_t>(u.vcs), -1);
      }
    }
    // Credits equal the downstream buffer capacity.
    for (auto& n : nodes_)
      for (int port = 0; port < kLocal; ++port) {
        OutPort& out = n.out[static_cast<std::size_t>(port)];
        if (!out.present) continue;
        const InPort& din = nodes_[static_cast<std::size_t>(out.down_router)].in[static_cast<std::size_t>(out.down_port)];
        for (std::size_t v = 0; v < out.credits.size(); ++v) out.credits[v] = din.vcs[v].capacity;
      }
  }

  int route_port(int r, std::uint32_t packet) const {
    const auto dir = select(table_(g_.address(RouterId{static_cast<std::uint32_t>(r)}),
                                   g_.address(packets_[packet].rec.dst)));
    return dir ? index_of(*dir) : kLocal;
  }

  void trace(Ticks t, int r, int port, const Flit& f, const char* event) {
    if (!opt_.trace) return;
    *opt_.trace << t << ',' << r << ',' << port_name(port) << ',' << packets_[f.packet].rec.id << '.' << f.seq << ','
                << event << '\n';
  }

  void process_router(int r, Ticks t) {
    Node& n = nodes_[static_cast<std::size_t>(r)];
    const int stride = std::max(p_.vcs, p_.slow_vcs);
    std::array<std::vector<int>, kPorts>& req = requests_;
    for (auto& v : req) v.clear();
    for (int i = 0; i < kPorts; ++i) {
      InPort& in = n.in[static_cast<std::size_t>(i)];
      if (!in.present || in.next_read > t) continue;
      for (int v = 0; v < n.vcs; ++v) {
        VirtualChannel& vc = in.vcs[static_cast<std::size_t>(v)];
        if (vc.q.empty() || vc.q.front().ready > t) continue;
        int o = vc.out_port;
        if (o < 0) {
          if (vc.route < 0) vc.route = route_port(r, vc.q.front().packet);
          o = vc.route;
        }
        req[static_cast<std::size_t>(o)].push_back(i * stride + v);
      }
    }
    for (int k = 0; k < kPorts; ++k) {
      const int o = static_cast<int>((t + k) % kPorts);
      OutPort& out = n.out[static_cast<std::size_t>(o)];
      if (!out.present) continue;
      if (t >= out.xbar_next && static_cast<int>(out.staging.size()) < out.group && !req[static_cast<std::size_t>(o)].empty())
        traverse(r, o, t, stride);
      flush(r, o, t);
    }
  }

  // Picks one requesting input VC for output o and moves its flits into the staging register.
  void traverse(int r, int o, Ticks t, int stride) {
    Node& n = nodes_[static_cast<std::size_t>(r)];
    OutPort& out = n.out[static_cast<std::size_t>(o)];
    auto& cand = requests_[static_cast<std::size_t>(o)];
    std::sort(cand.begin(), cand.end());
    const auto start = std::lower_bound(cand.begin(), cand.end(), out.rr) - cand.begin();
    for (std::size_t j = 0; j < cand.size(); ++j) {
      const int slot = cand[(static_cast<std::size_t>(start) + j) % cand.size()];
      const int i = slot / stride;
      const int v = slot % stride;
      InPort& in = n.in[static_cast<std::size_t>(i)];
      if (in.next_read > t) continue;
      if (!out.staging.empty() && out.staging_slot != slot) continue;
      VirtualChannel& vc = in.vcs[static_cast<std::size_t>(v)];
      int w = vc.out_vc;
      if (vc.out_port < 0) {
        if (!out.staging.empty()) continue;
        if (out.last_tail != kNever && t < out.last_tail + static_cast<Ticks>(1 + n.delta - n.chi) * n.period) continue;
        if (o != kLocal) {
          w = free_vc(out);
          if (w < 0) continue;
        }
      } else if (o != kLocal && out.credits[static_cast<std::size_t>(w)] <= 0) {
        continue;
      }
      move(r, i, v, o, w, t);
      out.rr = slot + 1;
      out.staging_slot = slot;
      in.next_read = t + n.period;
      out.xbar_next = t + n.period;
      return;
    }
  }

  int free_vc(OutPort& out) {
    const int nv = static_cast<int>(out.owner.size());
    for (int j = 0; j < nv; ++j) {
      const int w = (out.vc_rr + j) % nv;
      if (out.owner[static_cast<std::size_t>(w)] < 0 && out.credits[static_cast<std::size_t>(w)] > 0) {
        out.vc_rr = (w + 1) % nv;
        return w;
      }
    }
    return -1;
  }

  void move(int r, int i, int v, int o, int w, Ticks t) {
    Node& n = nodes_[static_cast<std::size_t>(r)];
    InPort& in = n.in[static_cast<std::size_t>(i)];
    OutPort& out = n.out[static_cast<std::size_t>(o)];
    VirtualChannel& vc = in.vcs[static_cast<std::size_t>(v)];
    LayerActivity& act = activity_[static_cast<std::size_t>(n.z - 1)];
    const int limit = std::min(in.width, out.group - static_cast<int>(out.staging.size()));
    int k = 0;
    while (k < limit && !vc.q.empty()) {
      const Flit f = vc.q.front();
      if (f.ready > t || (k > 0 && f.head)) break;
      if (o != kLocal && out.credits[static_cast<std::size_t>(w)] <= 0) break;
      vc.q.pop_front();
      out.staging.push_back(f);
      out.staging_vc = w;
      if (o != kLocal) --out.credits[static_cast<std::size_t>(w)];
      ++k;
      ++act.buffer_reads;
      ++act.crossbar_traversals;
      trace(t, r, o, f, "traverse");
      if (f.head) {
        vc.out_port = o;
        vc.out_vc = w;
        vc.route = -1;
        if (o != kLocal) out.owner[static_cast<std::size_t>(w)] = i * 64 + v;
      }
      if (f.tail) {
        vc.out_port = -1;
        vc.out_vc = -1;
        if (o != kLocal) out.owner[static_cast<std::size_t>(w)] = -1;
        out.last_tail = t;
        break;
      }
    }
    if (k > 0) {
      progress_ = true;
      if (i != kLocal) credit_returns_.push_back({in.up_router, in.up_port, v, k});
    }
  }

  void flush(int r, int o, Ticks t) {
    Node& n = nodes_[static_cast<std::size_t>(r)];
    OutPort& out = n.out[static_cast<std::size_t>(o)];
    if (out.staging.empty() || t < out.link_next) return;
    if (out.fill && static_cast<int>(out.staging.size()) < out.group && !out.staging.back().tail) return;
    const auto count = out.staging.size();
    if (o == kLocal) {
      for (const Flit& f : out.staging) eject(r, f, t);
    } else {
      Node& u = nodes_[static_cast<std::size_t>(out.down_router)];
      VirtualChannel& dvc =
          u.in[static_cast<std::size_t>(out.down_port)].vcs[static_cast<std::size_t>(out.staging_vc)];
      LayerActivity& act = activity_[static_cast<std::size_t>(n.z - 1)];
      LayerActivity& dact = activity_[static_cast<std::size_t>(u.z - 1)];
      for (Flit f : out.staging) {
        f.ready = t + out.sync + static_cast<Ticks>(u.delta) * u.period;
        dvc.q.push_back(f);
        ++dact.buffer_writes;
        if (out.horizontal)
          ++act.horizontal_link_traversals;
        else
          ++act.vertical_link_traversals;
        trace(t, r, o, f, "send");
      }
      u.held += count;
    }
    n.held -= count;
    out.staging.clear();
    out.staging_slot = -1;
    out.link_next = t + out.link_period;
    progress_ = true;
  }

  void eject(int r, const Flit& f, Ticks t) {
    PacketState& ps = packets_[f.packet];
    if (f.seq != ps.ejected)
      throw std::logic_error(fmt::format("packet {} ejected flit {} out of order", ps.rec.id, f.seq));
    ++ps.ejected;
    --in_network_;
    ++ejected_;
    trace(t, r, kLocal, f, "eject");
    const Ticks window_end = p_.warmup_ticks + p_.measure_ticks;
    if (t >= p_.warmup_ticks && t < window_end) ++layer_ejects_[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(r)].z - 1)];
    flit_latency_.emplace_back(f.packet, t - ps.rec.created);
    ps.rec.flit_latency_sum += t - ps.rec.created;
    if (f.head) ps.rec.head_ejected = t;
    if (f.tail) {
      ps.rec.tail_ejected = t;
      ++delivered_;
      if (ps.feed_gate >= 0) {
        const auto gi = static_cast<std::size_t>(ps.feed_gate);
        if (++gate_count_[gi] == gates_[gi].required) open_gate(gi, t);
      }
    }
  }

  void open_gate(std::size_t gi, Ticks t) {
    const Ticks when = std::max(t, gates_[gi].earliest);
    for (auto idx : gate_waiters_[gi]) releases_.emplace(when + packets_[idx].gate_offset, idx);
    gate_waiters_[gi].clear();
  }

  void inject(int r, Ticks t) {
    Node& n = nodes_[static_cast<std::size_t>(r)];
    if (n.ni_next > t) return;
    InPort& in = n.in[kLocal];
    if (n.inj_packet == kNone) {
      if (n.pending.empty()) return;
      int chosen = -1;
      for (int j = 0; j < n.vcs; ++j) {
        const int v = (n.ni_rr + j) % n.vcs;
        const auto& vc = in.vcs[static_cast<std::size_t>(v)];
        if (static_cast<int>(vc.q.size()) < vc.capacity) {
          chosen = v;
          break;
        }
      }
      if (chosen < 0) return;
      n.ni_rr = (chosen + 1) % n.vcs;
      n.inj_vc = chosen;
      n.inj_packet = n.pending.front();
      n.inj_seq = 0;
      n.pending.pop_front();
      --pending_;
    }
    VirtualChannel& vc = in.vcs[static_cast<std::size_t>(n.inj_vc)];
    const PacketState& ps = packets_[n.inj_packet];
    const auto len = static_cast<std::uint32_t>(ps.rec.length);
    const int space = vc.capacity - static_cast<int>(vc.q.size());
    const int k = std::min<int>({in.width, static_cast<int>(len - n.inj_seq), space});
    if (k <= 0) return;
    LayerActivity& act = activity_[static_cast<std::size_t>(n.z - 1)];
    for (int j = 0; j < k; ++j) {
      const std::uint32_t seq = n.inj_seq++;
      const Flit f{n.inj_packet, seq, t + static_cast<Ticks>(n.delta) * n.period, seq == 0, seq + 1 == len};
      vc.q.push_back(f);
      ++act.buffer_writes;
      trace(t, r, kLocal, f, "inject");
    }
    n.held += static_cast<std::uint64_t>(k);
    in_network_ += static_cast<std::uint64_t>(k);
    injected_ += static_cast<std::uint64_t>(k);
    if (n.inj_seq == len) n.inj_packet = kNone;
    n.ni_next = t + n.period;
    progress_ = true;
  }

  [[noreturn]] void abort_stalled(Ticks t) {
    std::string where;
    int shown = 0;
    for (std::size_t r = 0; r < nodes_.size() && shown < 8; ++r) {
      if (nodes_[r].held == 0) continue;
      where += fmt::format(" {}:{}", to_string(g_.address(RouterId{static_cast<std::uint32_t>(r)})), nodes_[r].held);
      ++shown;
    }
    throw WatchdogAbort(fmt::format("no flit movement for {} ticks at tick {}; {} flits buffered, {} packets queued;"
                                    " occupied routers:{}",
                                    p_.watchdog_ticks, t, in_network_, pending_, where));
  }

  SimReport finish(Ticks t) {
    const auto& st = g_.stack();
    SimReport rep;
    rep.ticks = t;
    rep.tick_ps = st.fastest_period_ps();
    rep.packets_created = created_;
    rep.packets_delivered = delivered_;
    rep.flits_injected = injected_;
    rep.flits_ejected = ejected_;
    rep.flits_in_flight = in_network_;
    const Ticks lo = p_.warmup_ticks;
    const Ticks hi = p_.warmup_ticks + p_.measure_ticks;
    auto measured = [&](const PacketState& ps) {
      return ps.rec.delivered() && ps.rec.created >= lo && ps.rec.created < hi;
    };
    const double tp = static_cast<double>(rep.tick_ps);
    std::vector<Ticks> lat;
    for (const auto& [pk, l] : flit_latency_)
      if (measured(packets_[pk])) lat.push_back(l);
    double head_sum = 0, pkt_sum = 0;
    for (const auto& ps : packets_) {
      if (!measured(ps)) continue;
      ++rep.measured_packets;
      head_sum += static_cast<double>(ps.rec.head_ejected - ps.rec.created);
      pkt_sum += static_cast<double>(ps.rec.tail_ejected - ps.rec.created);
    }
    rep.measured_flits = lat.size();
    if (!lat.empty()) {
      std::sort(lat.begin(), lat.end());
      double sum = 0;
      for (auto l : lat) sum += static_cast<double>(l);
      auto pct = [&](double q) {
        const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(lat.size())));
        return static_cast<double>(lat[std::max<std::size_t>(rank, 1) - 1]) * tp;
      };
      rep.avg_flit_latency_ps = sum / static_cast<double>(lat.size()) * tp;
      rep.p50_flit_latency_ps = pct(0.50);
      rep.p95_flit_latency_ps = pct(0.95);
      rep.p99_flit_latency_ps = pct(0.99);
      rep.max_flit_latency_ps = static_cast<double>(lat.back()) * tp;
      rep.avg_head_latency_ps = head_sum / static_cast<double>(rep.measured_packets) * tp;
      rep.avg_packet_latency_ps = pkt_sum / static_cast<double>(rep.measured_packets) * tp;
      const Ticks bin = p_.hist_bin_ticks;
      const Ticks bins = lat.back() / bin + 1;
      rep.flit_latency_hist.resize(static_cast<std::size_t>(bins));
      for (Ticks b = 0; b < bins; ++b)
        rep.flit_latency_hist[static_cast<std::size_t>(b)] =
            HistogramBin{static_cast<double>(b * bin) * tp, static_cast<double>((b + 1) * bin) * tp, 0};
      for (auto l : lat) ++rep.flit_latency_hist[static_cast<std::size_t>(l / bin)].count;
    }
    for (auto e : layer_ejects_)
      rep.accepted_throughput.push_back(p_.measure_ticks > 0 ? static_cast<double>(e) / static_cast<double>(p_.measure_ticks)
                                                             : 0.0);
    rep.activity = activity_;
    double tau_min = st.layers.back().tech.feature_size_nm;
    for (const auto& l : st.layers) tau_min = std::min(tau_min, l.tech.feature_size_nm);
    const auto& w = p_.energy;
    for (int z = 1; z <= st.layer_count(); ++z) {
      const auto& a = activity_[static_cast<std::size_t>(z - 1)];
      const double ratio = st.tech(z).feature_size_nm / tau_min;
      const double scale = w.scale_by_feature_size ? ratio * ratio : 1.0;
      rep.energy_proxy += scale * (w.buffer_write * static_cast<double>(a.buffer_writes) +
                                   w.buffer_read * static_cast<double>(a.buffer_reads) +
                                   w.crossbar * static_cast<double>(a.crossbar_traversals) +
                                   w.horizontal_link * static_cast<double>(a.horizontal_link_traversals) +
                                   w.vertical_link * static_cast<double>(a.vertical_link_traversals));
    }
    rep.packets.reserve(packets_.size());
    for (const auto& ps : packets_) rep.packets.push_back(ps.rec);
    return rep;
  }

  const TopologyGraph& g_;
  RoutingTable table_;
  const SimParams& p_;
  const RunOptions& opt_;
  std::vector<Node> nodes_;
  std::vector<PacketState> packets_;
  std::vector<Gate> gates_;
  std::vector<std::vector<std::uint32_t>> gate_waiters_;
  std::vector<int> gate_count_;
  std::priority_queue<std::pair<Ticks, std::uint32_t>, std::vector<std::pair<Ticks, std::uint32_t>>, std::greater<>>
      releases_;
  std::vector<CreditReturn> credit_returns_;
  std::array<std::vector<int>, kPorts> requests_;
  std::vector<std::pair<std::uint32_t, Ticks>> flit_latency_;
  std::vector<std::uint64_t> layer_ejects_;
  std::vector<LayerActivity> activity_;
  std::uint64_t in_network_ = 0;
  std::uint64_t pending_ = 0;
  std::uint64_t injected_ = 0;
  std::uint64_t ejected_ = 0;
  std::uint64_t created_ = 0;
  std::uint64_t delivered_ = 0;
  bool progress_ = false;
};

}  // namespace

void validate_sim(const TopologyGraph& g, const RoutingAlgorithm& alg, RouterKind kind, const SimParams& p) {
  const auto& st = g.stack();
  validate_routing(alg, st);
  if (p.buffer_depth < 2) throw ConfigError("buffer_depth must be >= 2");
  if (p.vcs < 1 || p.slow_vcs < 1) throw ConfigError("VC counts must be >= 1");
  if (p.vcs > 64 || p.slow_vcs > 64) throw ConfigError("VC counts must be <= 64");
  if (p.warmup_ticks < 0 || p.measure_ticks < 0 || p.drain_ticks < 0) throw ConfigError("tick windows must be >= 0");
  if (p.watchdog_ticks < 1) throw ConfigError("watchdog_ticks must be >= 1");
  if (p.hist_bin_ticks < 1) throw ConfigError("hist_bin_ticks must be >= 1");
  if (!p.phases.empty()) {
    if (p.phases.size() != static_cast<std::size_t>(st.layer_count()))
      throw ConfigError("phases needs one entry per layer");
    for (int z = 1; z <= st.layer_count(); ++z) {
      const int ph = p.phases[static_cast<std::size_t>(z - 1)];
      if (ph < 0 || ph >= st.period_ticks(z)) throw ConfigError(fmt::format("layer {} phase outside [0, period)", z));
    }
  }
  if (kind == RouterKind::HighVT) {
    if (alg.variant == RoutingVariant::XYZ)
      throw ConfigError("high_vt routers require R1 or R2 routing");
    for (int z = 1; z <= st.layer_count(); ++z)
      if (st.period_ticks(z) > p.buffer_depth)
        throw ConfigError(fmt::format("buffer_depth must be >= the clock ratio {} of layer {}", st.period_ticks(z), z));
  }
}

SimReport run_schedule(const TopologyGraph& g, const RoutingAlgorithm& alg, RouterKind kind,
                       const InjectionSchedule& schedule, const SimParams& p, const RunOptions& opt) {
  validate_sim(g, alg, kind, p);
  Engine e(g, alg, kind, schedule, p, opt);
  return e.run();
}

SimReport run(const TopologyGraph& g, const RoutingAlgorithm& alg, RouterKind kind, const TrafficSpec& traffic,
              const SimParams& p, const RunOptions& opt) {
  validate_sim(g, alg, kind, p);
  const auto schedule = generate_traffic(traffic, g, p.seed, p.horizon(), p.phases);
  Engine e(g, alg, kind, schedule, p, opt);
  return e.run();
}

std::vector<Ticks> measure_zero_load(const TopologyGraph& g, const RoutingAlgorithm& alg, RouterKind kind,
                                     const std::vector<std::pair<RouterId, RouterId>>& pairs, int length,
                                     const SimParams& p) {
  const auto& st = g.stack();
  Ticks slowest = 1, head = 0;
  for (int z = 1; z <= st.layer_count(); ++z) {
    slowest = std::max<Ticks>(slowest, st.period_ticks(z));
    head = std::max<Ticks>(head, static_cast<Ticks>(st.tech(z).head_delay) * st.period_ticks(z));
  }
  const Ticks gap = 2 * (static_cast<Ticks>(g.router_count()) + 1) * (head + slowest) + 2 * length * slowest;
  InjectionSchedule s;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    s.packets.push_back(ScheduledPacket{static_cast<std::uint32_t>(i), pairs[i].first, pairs[i].second, length,
                                        static_cast<Ticks>(i) * gap, -1, -1});
  SimParams q = p;
  q.warmup_ticks = 0;
  q.measure_ticks = static_cast<Ticks>(pairs.size() + 1) * gap;
  q.drain_ticks = gap;
  const auto rep = run_schedule(g, alg, kind, s, q);
  std::vector<Ticks> out;
  out.reserve(pairs.size());
  for (const auto& rec : rep.packets) out.push_back(rec.head_ejected < 0 ? -1 : rec.head_ejected - rec.created);
  return out;
}

}  // namespace hetnoc
