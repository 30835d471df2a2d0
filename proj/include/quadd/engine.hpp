// Copyright 2026 The quadd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Event-driven simulation with inertial gate delays and a per-transition
// energy ledger, plus the measurement helpers and the worst-case stimuli.
//
// Time is kept in integer ticks of 0.1 ps. Simultaneous events are applied in
// net-id order, then every affected gate is evaluated in instance-id order, so
// a run is a pure function of (circuit, stimulus).

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "quadd/builders.hpp"
#include "quadd/errors.hpp"
#include "quadd/gates.hpp"
#include "quadd/netlist.hpp"

namespace quadd {

struct StimulusEvent {
  double t_ps;
  std::string port;
  LogicLevel level;

  friend bool operator==(const StimulusEvent&, const StimulusEvent&) = default;
};

struct Stimulus {
  std::map<std::string, LogicLevel> initial;
  std::vector<StimulusEvent> events;
  double duration_ps = 0.0;

  friend bool operator==(const Stimulus&, const Stimulus&) = default;
};

struct WavePoint {
  Tick t;
  LogicLevel level;
  double voltage;  // NaN while the net is X
};

struct LedgerEntry {
  Tick t;
  NetId net;
  double joules;
};

struct Trace {
  std::vector<std::string> net_names;
  std::map<std::string, NetId> ports;
  std::vector<std::vector<WavePoint>> waves;  // per net; first point is the settled value at t = 0
  std::vector<LedgerEntry> ledger;            // stimulus phase only
  double total_energy = 0.0;                  // == sum of ledger
  double settle_energy = 0.0;                 // X -> initial levels, reported separately
  Tick settle_ticks = 0;
  Tick duration = 0;
  std::vector<Tick> stimulus_times;  // sorted, unique

  NetId port_net(const std::string& port) const {
    auto it = ports.find(port);
    if (it == ports.end()) throw Error(ErrorKind::Usage, "trace has no port '" + port + "'");
    return it->second;
  }

  LogicLevel level_at(NetId net, Tick t) const {
    const auto& w = waves.at(static_cast<std::size_t>(net));
    auto it = std::upper_bound(w.begin(), w.end(), t, [](Tick v, const WavePoint& p) { return v < p.t; });
    if (it == w.begin()) return LogicLevel::X;
    return std::prev(it)->level;
  }

  LogicLevel final_level(const std::string& port) const {
    return waves.at(static_cast<std::size_t>(port_net(port))).back().level;
  }

  /// Number of transitions after t = 0 on a net.
  std::size_t transitions(NetId net) const { return waves.at(static_cast<std::size_t>(net)).size() - 1; }
};

namespace detail {

inline double energy_voltage(LogicLevel l, const SignalEncoding& enc) {
  return is_known(l) ? to_voltage(l, enc) : 0.0;
}

inline double wave_voltage(LogicLevel l, const SignalEncoding& enc) {
  return is_known(l) ? to_voltage(l, enc) : std::numeric_limits<double>::quiet_NaN();
}

class Simulator {
 public:
  Simulator(const Circuit& c, const Stimulus& s) : c_(c), s_(s), conn_(connectivity(c)) {
    if (conn_.topo_order.empty() && !c.instances().empty())
      throw Error(ErrorKind::Structure, "cannot simulate a cyclic circuit");
    duration_ = to_ticks(s.duration_ps * 1e-12);
    if (duration_ <= 0) throw Error(ErrorKind::Domain, "stimulus duration must be positive");
    check_stimulus();
    const std::size_t n = c.nets().size();
    value_.assign(n, LogicLevel::X);
    pending_.assign(n, std::nullopt);
    delay_.resize(c.instances().size());
    for (const Instance& inst : c.instances())
      for (const auto& b : inst.outputs)
        delay_[static_cast<std::size_t>(inst.id)].push_back(
            propagation_ticks(inst.prim, conn_.load_cap[static_cast<std::size_t>(b.net)]));
  }

  Trace run() {
    Trace tr;
    for (const Net& n : c_.nets()) tr.net_names.push_back(n.name);
    for (const Port& p : c_.ports()) tr.ports[p.name] = p.net;
    tr.duration = duration_;

    // Settle: initial levels and ties at tick 0 of a private clock.
    settling_ = true;
    std::vector<std::pair<NetId, LogicLevel>> init;
    for (const Net& n : c_.nets())
      if (n.constant) init.emplace_back(n.id, *n.constant);
    for (const auto& [port, level] : s_.initial) init.emplace_back(c_.port(port).net, level);
    std::sort(init.begin(), init.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (const auto& [net, level] : init) apply(0, net, level);
    for (const Instance& inst : c_.instances()) dirty_.insert(inst.id);
    evaluate_dirty(0);
    const Tick settled = drain({}, duration_);
    tr.settle_ticks = settled;
    tr.settle_energy = settle_energy_;
    check_outputs("after settle");

    // Stimulus phase on the main clock.
    settling_ = false;
    waves_.assign(c_.nets().size(), {});
    for (const Net& n : c_.nets())
      waves_[static_cast<std::size_t>(n.id)].push_back(
          WavePoint{0, value_[static_cast<std::size_t>(n.id)],
                    wave_voltage(value_[static_cast<std::size_t>(n.id)], n.encoding)});
    std::vector<std::pair<Tick, std::pair<NetId, LogicLevel>>> events;
    for (const auto& e : s_.events) events.push_back({to_ticks(e.t_ps * 1e-12), {c_.port(e.port).net, e.level}});
    std::stable_sort(events.begin(), events.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (const auto& e : events)
      if (tr.stimulus_times.empty() || tr.stimulus_times.back() != e.first) tr.stimulus_times.push_back(e.first);
    drain(events, duration_);
    check_outputs("at end of simulation");

    tr.waves = std::move(waves_);
    tr.ledger = std::move(ledger_);
    for (const auto& e : tr.ledger) tr.total_energy += e.joules;
    return tr;
  }

 private:
  void check_stimulus() const {
    for (const Port& p : c_.ports()) {
      if (p.direction != PortDirection::Input) continue;
      auto it = s_.initial.find(p.name);
      if (it == s_.initial.end()) throw Error(ErrorKind::Usage, "stimulus has no initial level for input '" + p.name + "'");
    }
    auto check_level = [this](const std::string& port, LogicLevel l) {
      const Port* p = c_.find_port(port);
      if (!p || p->direction != PortDirection::Input)
        throw Error(ErrorKind::Usage, "stimulus drives '" + port + "', which is not a circuit input");
      if (!c_.net(p->net).encoding.admits(l))
        throw Error(ErrorKind::EncodingMismatch, "level " + to_string(l) + " not allowed on port '" + port + "'");
    };
    for (const auto& [port, l] : s_.initial) check_level(port, l);
    std::map<std::string, double> last;
    for (const auto& e : s_.events) {
      check_level(e.port, e.level);
      if (to_ticks(e.t_ps * 1e-12) <= 0 || to_ticks(e.t_ps * 1e-12) > duration_)
        throw Error(ErrorKind::Domain, "stimulus event at " + std::to_string(e.t_ps) +
                                           " ps outside (0, duration]; levels at t = 0 belong in 'initial'");
      auto it = last.find(e.port);
      if (it != last.end() && e.t_ps < it->second)
        throw Error(ErrorKind::Domain, "stimulus events for '" + e.port + "' are not time-ordered");
      last[e.port] = e.t_ps;
    }
  }

  void check_outputs(const char* when) const {
    for (const Port& p : c_.ports())
      if (p.direction == PortDirection::Output && !is_known(value_[static_cast<std::size_t>(p.net)]))
        throw Error(ErrorKind::Unsettled, "output '" + p.name + "' is X " + when);
  }

  void apply(Tick t, NetId net, LogicLevel v) {
    const auto i = static_cast<std::size_t>(net);
    const LogicLevel old = value_[i];
    if (old == v) return;
    const Net& n = c_.net(net);
    const double e = switching_energy(conn_.load_cap[i], energy_voltage(old, n.encoding), energy_voltage(v, n.encoding));
    value_[i] = v;
    if (settling_) {
      settle_energy_ += e;
    } else {
      auto& w = waves_[i];
      if (!w.empty() && w.back().t == t) w.pop_back();
      w.push_back(WavePoint{t, v, wave_voltage(v, n.encoding)});
      ledger_.push_back(LedgerEntry{t, net, e});
    }
    for (const PinRef& r : conn_.fanout[i]) dirty_.insert(r.inst);
  }

  void evaluate_dirty(Tick now) {
    std::vector<LogicLevel> in;
    for (InstanceId id : dirty_) {
      const Instance& inst = c_.instance(id);
      in.clear();
      for (const auto& b : inst.inputs) in.push_back(value_[static_cast<std::size_t>(b.net)]);
      const auto out = eval_primitive(inst.prim, in);
      for (std::size_t k = 0; k < out.size(); ++k) {
        const NetId net = inst.outputs[k].net;
        const auto i = static_cast<std::size_t>(net);
        auto& pend = pending_[i];
        if (pend && pend->second == out[k]) continue;
        if (pend) {
          queue_.erase({pend->first, net});
          pend.reset();
        }
        // Inertial: a pulse shorter than the gate delay never reaches the net.
        if (out[k] == value_[i]) continue;
        const Tick at = now + delay_[static_cast<std::size_t>(id)][k];
        pend = std::make_pair(at, out[k]);
        queue_.insert({at, net});
      }
    }
    dirty_.clear();
  }

  /// Runs until both the stimulus list and the gate queue are empty; returns
  /// the time of the last processed event.
  Tick drain(const std::vector<std::pair<Tick, std::pair<NetId, LogicLevel>>>& events, Tick limit) {
    std::size_t next = 0;
    Tick now = 0;
    std::vector<std::pair<NetId, LogicLevel>> batch;
    while (next < events.size() || !queue_.empty()) {
      Tick t = std::numeric_limits<Tick>::max();
      if (next < events.size()) t = events[next].first;
      if (!queue_.empty()) t = std::min(t, queue_.begin()->first);
      if (t > limit)
        throw Error(ErrorKind::Timeout, std::string(settling_ ? "settle" : "simulation") +
                                            " did not quiesce within " + std::to_string(ticks_to_ps(limit)) + " ps");
      now = t;
      batch.clear();
      while (next < events.size() && events[next].first == now) batch.push_back(events[next++].second);
      while (!queue_.empty() && queue_.begin()->first == now) {
        const NetId net = queue_.begin()->second;
        queue_.erase(queue_.begin());
        auto& pend = pending_[static_cast<std::size_t>(net)];
        batch.emplace_back(net, pend->second);
        pend.reset();
      }
      // Stable: several stimulus events on one net at one time keep file order.
      std::stable_sort(batch.begin(), batch.end(), [](auto& a, auto& b) { return a.first < b.first; });
      for (const auto& [net, level] : batch) apply(now, net, level);
      evaluate_dirty(now);
    }
    return now;
  }

  const Circuit& c_;
  const Stimulus& s_;
  Connectivity conn_;
  Tick duration_ = 0;
  bool settling_ = true;
  std::vector<LogicLevel> value_;
  std::vector<std::optional<std::pair<Tick, LogicLevel>>> pending_;
  std::vector<std::vector<Tick>> delay_;
  std::set<std::pair<Tick, NetId>> queue_;
  std::set<InstanceId> dirty_;
  std::vector<std::vector<WavePoint>> waves_;
  std::vector<LedgerEntry> ledger_;
  double settle_energy_ = 0.0;
};

}  // namespace detail

/// Simulates `c` under `s`. Throws Timeout if activity continues past the
/// stimulus duration and Unsettled if an output is X after settling or at the end.
inline Trace simulate(const Circuit& c, const Stimulus& s) {
  require_valid(c);
  return detail::Simulator(c, s).run();
}

/// Delay in ps from the `src_event_index`-th transition of `src_port` to the
/// last transition of `dst_port` before the next stimulus time (or the end of
/// the trace). Waveforms are ideal steps, so a step's 50%-of-swing crossing is
/// the step time. nullopt when `dst_port` does not move.
inline std::optional<double> measure_delay(const Trace& t, const std::string& src_port, std::size_t src_event_index,
                                           const std::string& dst_port) {
  const auto& src = t.waves.at(static_cast<std::size_t>(t.port_net(src_port)));
  if (src_event_index + 1 >= src.size())
    throw Error(ErrorKind::Domain, "port '" + src_port + "' has no transition #" + std::to_string(src_event_index));
  const Tick t0 = src[src_event_index + 1].t;
  Tick t_end = t.duration;
  auto nx = std::upper_bound(t.stimulus_times.begin(), t.stimulus_times.end(), t0);
  if (nx != t.stimulus_times.end()) t_end = *nx;

  const auto& dst = t.waves.at(static_cast<std::size_t>(t.port_net(dst_port)));
  std::optional<Tick> last;
  for (std::size_t i = 1; i < dst.size(); ++i) {
    const WavePoint& p = dst[i];
    if (p.t <= t0 || p.t > t_end) continue;
    const WavePoint& prev = dst[i - 1];
    if (!is_known(p.level) || !is_known(prev.level)) continue;
    const double mid = 0.5 * (prev.voltage + p.voltage);
    // A step passes its own midpoint at the step time.
    if ((prev.voltage - mid) * (p.voltage - mid) < 0) last = p.t;
  }
  if (!last) return std::nullopt;
  return ticks_to_ps(*last - t0);
}

/// Average power in W over [from_ps, to_ps] of the stimulus phase.
inline double measure_power(const Trace& t, double from_ps, double to_ps) {
  const Tick a = to_ticks(from_ps * 1e-12), b = to_ticks(to_ps * 1e-12);
  if (b <= a) throw Error(ErrorKind::Domain, "empty power window");
  if (a < 0 || b > t.duration) throw Error(ErrorKind::Domain, "power window outside the trace");
  double e = 0.0;
  for (const auto& entry : t.ledger)
    if (entry.t >= a && entry.t <= b) e += entry.joules;
  return e / (static_cast<double>(b - a) * kTickSeconds);
}

// ---------------------------------------------------------------------------
// Worst-case stimuli
// ---------------------------------------------------------------------------

enum class StimulusTarget { InputToCarry, CarryToCarry };

struct StimulusOptions {
  double step_ps = 2000.0;
  int b_level = 3;  // B held during the A sweep
};

namespace detail {

inline LogicLevel bit_level(int v) { return v ? LogicLevel::L1 : LogicLevel::L0; }

}  // namespace detail

/// Stimulus over the ports of a single cell (A, B, Cin) or a 2-bit binary
/// slice (A0, A1, B0, B1, C0).
///
/// InputToCarry sweeps the A digit 0,1,2,3,2,1,0 with Cin = 0 and B fixed;
/// CarryToCarry pulses Cin 0 -> 1 -> 0 with A = 2, B = 1, which propagates the
/// carry through the whole cell. Single-bit adders use A 0 -> 1 -> 0 with
/// B = 1, and Cin pulses with A = 1, B = 0.
inline Stimulus worst_case_stimulus(StimulusTarget target, CellKind kind, const StimulusOptions& opt = {}) {
  const bool binary_slice = is_slice(kind);
  const bool digit = is_quaternary(kind) || binary_slice;
  Stimulus s;
  const double step = opt.step_ps;
  std::vector<int> a_seq;
  int a_hold = 0, b_hold = 0;
  const std::string cin = binary_slice ? "C0" : "Cin";
  if (target == StimulusTarget::InputToCarry) {
    if (opt.b_level < 0 || opt.b_level > (digit ? 3 : 1)) throw Error(ErrorKind::Domain, "b_level out of range");
    a_seq = digit ? std::vector<int>{0, 1, 2, 3, 2, 1, 0} : std::vector<int>{0, 1, 0};
    b_hold = digit ? opt.b_level : 1;
  } else {
    a_hold = digit ? 2 : 1;
    b_hold = digit ? 1 : 0;
  }

  auto set_digit = [&](const std::string& name, int value, double t, bool initial, int previous) {
    if (!binary_slice) {
      if (initial) s.initial[name] = level_from_index(value);
      else s.events.push_back({t, name, level_from_index(value)});
      return;
    }
    for (int bit = 0; bit < 2; ++bit) {
      const int v = (value >> bit) & 1;
      const std::string port = name + std::to_string(bit);
      if (initial) s.initial[port] = detail::bit_level(v);
      else if (v != ((previous >> bit) & 1)) s.events.push_back({t, port, detail::bit_level(v)});
    }
  };

  if (target == StimulusTarget::InputToCarry) {
    set_digit("A", a_seq[0], 0, true, 0);
    set_digit("B", b_hold, 0, true, 0);
    s.initial[cin] = LogicLevel::L0;
    for (std::size_t i = 1; i < a_seq.size(); ++i)
      set_digit("A", a_seq[i], step * static_cast<double>(i), false, a_seq[i - 1]);
    s.duration_ps = step * static_cast<double>(a_seq.size());
  } else {
    set_digit("A", a_hold, 0, true, 0);
    set_digit("B", b_hold, 0, true, 0);
    s.initial[cin] = LogicLevel::L0;
    s.events.push_back({step, cin, LogicLevel::L1});
    s.events.push_back({2 * step, cin, LogicLevel::L0});
    s.duration_ps = 3 * step;
  }
  return s;
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

/// {"initial": {port: level}, "events": [[t_ps, port, level]], "duration_ps": T}
inline nlohmann::json stimulus_to_json(const Stimulus& s) {
  nlohmann::json j;
  j["initial"] = nlohmann::json::object();
  for (const auto& [port, l] : s.initial) j["initial"][port] = level_index(l);
  j["events"] = nlohmann::json::array();
  for (const auto& e : s.events) j["events"].push_back({e.t_ps, e.port, level_index(e.level)});
  j["duration_ps"] = s.duration_ps;
  return j;
}

inline Stimulus stimulus_from_json(const nlohmann::json& j) {
  auto level = [](const nlohmann::json& v) {
    if (v.is_string()) return parse_level(v.get<std::string>());
    return level_from_index(v.get<int>());
  };
  try {
    if (!j.is_object()) throw Error(ErrorKind::Schema, "stimulus must be an object");
    for (const auto& [key, value] : j.items())
      if (key != "initial" && key != "events" && key != "duration_ps")
        throw Error(ErrorKind::Schema, "unknown stimulus key '" + key + "'");
    Stimulus s;
    for (const auto& [port, v] : j.at("initial").items()) s.initial[port] = level(v);
    if (j.contains("events"))
      for (const auto& e : j.at("events")) {
        if (!e.is_array() || e.size() != 3) throw Error(ErrorKind::Schema, "event must be [t_ps, port, level]");
        s.events.push_back({e[0].get<double>(), e[1].get<std::string>(), level(e[2])});
      }
    s.duration_ps = j.at("duration_ps").get<double>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Schema, std::string("stimulus: ") + e.what());
  }
}

inline Stimulus load_stimulus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot open stimulus file '" + path + "'");
  try {
    return stimulus_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Schema, "stimulus file '" + path + "': " + e.what());
  }
}

/// time_ps,net,level,voltage: one row per waveform point, nets in id order.
inline void write_trace_csv(std::ostream& os, const Trace& t) {
  os << "time_ps,net,level,voltage\n";
  char buf[64];
  for (std::size_t n = 0; n < t.waves.size(); ++n)
    for (const auto& p : t.waves[n]) {
      std::snprintf(buf, sizeof buf, "%.1f", ticks_to_ps(p.t));
      os << buf << ',' << t.net_names[n] << ',' << to_string(p.level) << ',';
      if (is_known(p.level)) {
        std::snprintf(buf, sizeof buf, "%.9g", p.voltage);
        os << buf;
      }
      os << '\n';
    }
}

/// time_ps,net,energy_j
inline void write_ledger_csv(std::ostream& os, const Trace& t) {
  os << "time_ps,net,energy_j\n";
  char buf[64];
  for (const auto& e : t.ledger) {
    std::snprintf(buf, sizeof buf, "%.1f", ticks_to_ps(e.t));
    os << buf << ',' << t.net_names[static_cast<std::size_t>(e.net)] << ',';
    std::snprintf(buf, sizeof buf, "%.9g", e.joules);
    os << buf << '\n';
  }
}

}  // namespace quadd
