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

// Static timing: longest-path arrival times over the acyclic gate graph.
// No false-path pruning, so arrivals bound every simulated delay from above.

#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "quadd/errors.hpp"
#include "quadd/netlist.hpp"

namespace quadd {

struct TimingArc {
  InstanceId instance = -1;
  std::string instance_name;
  GateKind kind = GateKind::Inv;
  std::string from_pin, to_pin;
  std::string from_net, to_net;
  std::string cell;
  Tick delay = 0;
};

struct SinkArrival {
  std::string port;
  std::optional<Tick> arrival;  // nullopt: unreachable from the sources
};

struct StageCount {
  int cells = 0;
  int gate_arcs = 0;
};

struct TimingReport {
  std::vector<std::string> sources;
  std::vector<std::string> sinks;
  std::vector<SinkArrival> arrivals;
  std::string worst_sink;
  Tick worst_arrival = 0;
  std::vector<TimingArc> critical_path;  // source -> worst sink

  double worst_arrival_ps() const { return ticks_to_ps(worst_arrival); }

  std::optional<Tick> arrival(const std::string& sink) const {
    for (const auto& a : arrivals)
      if (a.port == sink) return a.arrival;
    throw Error(ErrorKind::Usage, "'" + sink + "' is not a sink of this report");
  }

  /// Nets visited by the critical path, source first.
  std::vector<std::string> path_nets() const {
    std::vector<std::string> nets;
    if (critical_path.empty()) return nets;
    nets.push_back(critical_path.front().from_net);
    for (const auto& arc : critical_path) nets.push_back(arc.to_net);
    return nets;
  }
};

/// Arc delay of one gate output at its net's load.
inline Tick arc_delay(const Instance& inst, int out_pin, const Connectivity& conn) {
  const NetId net = inst.outputs.at(static_cast<std::size_t>(out_pin)).net;
  return propagation_ticks(inst.prim, conn.load_cap[static_cast<std::size_t>(net)]);
}

inline TimingReport sta(const Circuit& c, const std::vector<std::string>& sources,
                        const std::vector<std::string>& sinks) {
  require_valid(c);
  if (sources.empty() || sinks.empty()) throw Error(ErrorKind::Usage, "sta needs at least one source and one sink");
  for (const auto& s : sources)
    if (!c.find_port(s)) throw Error(ErrorKind::Usage, "source '" + s + "' is not a port");
  for (const auto& s : sinks)
    if (!c.find_port(s)) throw Error(ErrorKind::Usage, "sink '" + s + "' is not a port");

  const Connectivity conn = connectivity(c);
  struct Pred {
    InstanceId inst;
    int in_pin;
    int out_pin;
  };
  const std::size_t n = c.nets().size();
  std::vector<std::optional<Tick>> arr(n);
  std::vector<std::optional<Pred>> pred(n);
  for (const auto& s : sources) arr[static_cast<std::size_t>(c.port(s).net)] = 0;

  for (InstanceId id : conn.topo_order) {
    const Instance& inst = c.instance(id);
    for (int o = 0; o < static_cast<int>(inst.outputs.size()); ++o) {
      const auto out = static_cast<std::size_t>(inst.outputs[static_cast<std::size_t>(o)].net);
      const Tick d = arc_delay(inst, o, conn);
      // Input pins are scanned in order, so a strict '>' keeps the
      // lexicographically smallest arc among equal arrivals.
      for (int i = 0; i < static_cast<int>(inst.inputs.size()); ++i) {
        const auto& a = arr[static_cast<std::size_t>(inst.inputs[static_cast<std::size_t>(i)].net)];
        if (!a) continue;
        const Tick cand = *a + d;
        if (!arr[out] || cand > *arr[out]) {
          arr[out] = cand;
          pred[out] = Pred{id, i, o};
        }
      }
    }
  }

  TimingReport r;
  r.sources = sources;
  r.sinks = sinks;
  std::optional<NetId> worst;
  for (const auto& s : sinks) {
    const NetId net = c.port(s).net;
    const auto a = arr[static_cast<std::size_t>(net)];
    r.arrivals.push_back({s, a});
    if (a && (!worst || *a > r.worst_arrival)) {
      worst = net;
      r.worst_arrival = *a;
      r.worst_sink = s;
    }
  }
  if (!worst) return r;

  std::vector<TimingArc> rev;
  NetId at = *worst;
  while (pred[static_cast<std::size_t>(at)]) {
    const Pred p = *pred[static_cast<std::size_t>(at)];
    const Instance& inst = c.instance(p.inst);
    const auto& in = inst.inputs[static_cast<std::size_t>(p.in_pin)];
    const auto& out = inst.outputs[static_cast<std::size_t>(p.out_pin)];
    rev.push_back(TimingArc{inst.id, inst.name, inst.prim.kind, in.pin, out.pin, c.net(in.net).name,
                            c.net(out.net).name, inst.cell, arc_delay(inst, p.out_pin, conn)});
    at = in.net;
  }
  r.critical_path.assign(rev.rbegin(), rev.rend());
  return r;
}

/// Adder cells crossed (consecutive distinct cell tags) and gate arcs on the
/// critical path.
inline StageCount stage_count(const TimingReport& r) {
  StageCount s;
  s.gate_arcs = static_cast<int>(r.critical_path.size());
  const std::string* prev = nullptr;
  for (const auto& arc : r.critical_path) {
    if (!prev || *prev != arc.cell) ++s.cells;
    prev = &arc.cell;
  }
  return s;
}

inline nlohmann::json timing_report_json(const TimingReport& r) {
  nlohmann::json j;
  j["sources"] = r.sources;
  j["sinks"] = r.sinks;
  j["arrivals_ps"] = nlohmann::json::object();
  for (const auto& a : r.arrivals)
    j["arrivals_ps"][a.port] = a.arrival ? nlohmann::json(ticks_to_ps(*a.arrival)) : nlohmann::json(nullptr);
  j["worst_sink"] = r.worst_sink;
  j["worst_arrival_ps"] = r.worst_arrival_ps();
  j["critical_path"] = nlohmann::json::array();
  for (const auto& arc : r.critical_path)
    j["critical_path"].push_back({{"instance", arc.instance_name},
                                  {"kind", to_string(arc.kind)},
                                  {"from_pin", arc.from_pin},
                                  {"to_pin", arc.to_pin},
                                  {"from_net", arc.from_net},
                                  {"to_net", arc.to_net},
                                  {"cell", arc.cell},
                                  {"delay_ps", ticks_to_ps(arc.delay)}});
  const StageCount s = stage_count(r);
  j["stages"] = {{"cells", s.cells}, {"gate_arcs", s.gate_arcs}};
  return j;
}

}  // namespace quadd
