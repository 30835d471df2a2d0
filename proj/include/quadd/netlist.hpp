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

// Flat gate-level netlist with adder-cell tags, structural validation and the
// sum-of-diameters area report.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "quadd/errors.hpp"
#include "quadd/gates.hpp"
#include "quadd/levels.hpp"

namespace quadd {

using NetId = std::int32_t;
using InstanceId = std::int32_t;

inline constexpr NetId kNoNet = -1;

struct Net {
  NetId id = kNoNet;
  std::string name;
  SignalEncoding encoding = SignalEncoding::binary(kReferenceSupply);
  double external_load = 0.0;              // F, e.g. the output load CL
  std::optional<LogicLevel> constant;      // supply tie; zero capacitance

  friend bool operator==(const Net&, const Net&) = default;
};

enum class PortDirection : std::uint8_t { Input, Output };

struct Port {
  std::string name;
  PortDirection direction;
  NetId net;

  friend bool operator==(const Port&, const Port&) = default;
};

/// A pin's connection and the encoding the pin itself expects (inputs) or
/// produces (outputs).  Validation compares it with the net's encoding.
struct PinBinding {
  std::string pin;
  NetId net = kNoNet;
  SignalEncoding encoding = SignalEncoding::binary(kReferenceSupply);

  friend bool operator==(const PinBinding&, const PinBinding&) = default;
};

struct Instance {
  InstanceId id = -1;
  std::string name;
  std::string lib_cell;  // library entry it was made from
  GatePrimitive prim;
  std::vector<PinBinding> inputs;
  std::vector<PinBinding> outputs;
  std::string cell;  // adder-cell tag ("" for a standalone cell)

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// One adder cell inside a circuit. Cells with a declared inventory are
/// charged that inventory for area instead of their gates'.
struct CellRecord {
  std::string tag;
  std::string kind;
  std::optional<TransistorInventory> declared;

  friend bool operator==(const CellRecord&, const CellRecord&) = default;
};

class Circuit {
 public:
  explicit Circuit(std::string name = "circuit") : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  std::map<std::string, std::string>& metadata() noexcept { return metadata_; }
  const std::map<std::string, std::string>& metadata() const noexcept { return metadata_; }

  const std::vector<Net>& nets() const noexcept { return nets_; }
  const std::vector<Instance>& instances() const noexcept { return instances_; }
  const std::vector<Port>& ports() const noexcept { return ports_; }
  const std::vector<CellRecord>& cells() const noexcept { return cells_; }

  const Net& net(NetId id) const { return nets_.at(static_cast<std::size_t>(id)); }
  Net& net(NetId id) { return nets_.at(static_cast<std::size_t>(id)); }
  const Instance& instance(InstanceId id) const { return instances_.at(static_cast<std::size_t>(id)); }

  NetId add_net(std::string name, SignalEncoding enc, double external_load = 0.0) {
    if (net_index_.count(name)) throw Error(ErrorKind::Structure, "duplicate net '" + name + "'");
    const auto id = static_cast<NetId>(nets_.size());
    net_index_[name] = id;
    nets_.push_back(Net{id, std::move(name), std::move(enc), external_load, std::nullopt});
    return id;
  }

  NetId add_constant(std::string name, SignalEncoding enc, LogicLevel level) {
    if (!enc.admits(level)) throw Error(ErrorKind::EncodingMismatch, "constant level outside its encoding");
    const NetId id = add_net(std::move(name), std::move(enc));
    nets_.back().constant = level;
    return id;
  }

  NetId add_input(const std::string& name, SignalEncoding enc) {
    const NetId id = add_net(name, std::move(enc));
    add_port(name, PortDirection::Input, id);
    return id;
  }

  void add_output(const std::string& name, NetId net) { add_port(name, PortDirection::Output, net); }

  void add_port(std::string name, PortDirection dir, NetId net) {
    for (const Port& p : ports_)
      if (p.name == name) throw Error(ErrorKind::Structure, "duplicate port '" + name + "'");
    ports_.push_back(Port{std::move(name), dir, net});
  }

  /// Adds a gate. Input pins record the encoding of the net they are bound
  /// to; output nets must already exist.
  InstanceId add_instance(std::string name, std::string lib_cell, GatePrimitive prim, const std::vector<NetId>& ins,
                          const std::vector<NetId>& outs, std::string cell = "") {
    const PortShape shape = port_shape(prim.kind, prim.k);
    if (ins.size() != shape.inputs.size() || outs.size() != shape.outputs.size())
      throw Error(ErrorKind::Structure, "pin count mismatch for '" + name + "'");
    Instance inst;
    inst.id = static_cast<InstanceId>(instances_.size());
    inst.name = std::move(name);
    inst.lib_cell = std::move(lib_cell);
    for (std::size_t i = 0; i < ins.size(); ++i)
      inst.inputs.push_back(PinBinding{std::string(shape.inputs[i].name), ins[i], net(ins[i]).encoding});
    for (std::size_t i = 0; i < outs.size(); ++i)
      inst.outputs.push_back(PinBinding{std::string(shape.outputs[i].name), outs[i], prim.params.output_encoding});
    inst.prim = std::move(prim);
    inst.cell = std::move(cell);
    instances_.push_back(std::move(inst));
    return instances_.back().id;
  }

  /// Raw append used by the JSON reader; ids are reassigned in order.
  InstanceId append_instance(Instance inst) {
    inst.id = static_cast<InstanceId>(instances_.size());
    instances_.push_back(std::move(inst));
    return instances_.back().id;
  }

  void add_cell(CellRecord rec) { cells_.push_back(std::move(rec)); }

  std::optional<NetId> find_net(const std::string& name) const {
    auto it = net_index_.find(name);
    if (it == net_index_.end()) return std::nullopt;
    return it->second;
  }

  const Port* find_port(const std::string& name) const {
    for (const Port& p : ports_)
      if (p.name == name) return &p;
    return nullptr;
  }

  const Port& port(const std::string& name) const {
    const Port* p = find_port(name);
    if (!p) throw Error(ErrorKind::Structure, "circuit '" + name_ + "' has no port '" + name + "'");
    return *p;
  }

  std::vector<std::string> port_names(PortDirection dir) const {
    std::vector<std::string> out;
    for (const Port& p : ports_)
      if (p.direction == dir) out.push_back(p.name);
    return out;
  }

  const CellRecord* find_cell(const std::string& tag) const {
    for (const CellRecord& c : cells_)
      if (c.tag == tag) return &c;
    return nullptr;
  }

  /// Copies `cell` into this circuit. Instance and net names get `prefix.`;
  /// cell tags become `prefix` (or `prefix/old` when nested). Every port of
  /// `cell` must be bound to an existing net of this circuit.
  void instantiate(const Circuit& cell, const std::string& prefix, const std::map<std::string, NetId>& bindings) {
    std::vector<NetId> remap(cell.nets().size(), kNoNet);
    for (const Port& p : cell.ports()) {
      auto it = bindings.find(p.name);
      if (it == bindings.end())
        throw Error(ErrorKind::Structure, "port '" + p.name + "' of '" + cell.name() + "' left unbound");
      remap[static_cast<std::size_t>(p.net)] = it->second;
    }
    for (const Net& n : cell.nets()) {
      if (remap[static_cast<std::size_t>(n.id)] != kNoNet) continue;
      const NetId id = add_net(prefix + "." + n.name, n.encoding, n.external_load);
      nets_.back().constant = n.constant;
      remap[static_cast<std::size_t>(n.id)] = id;
    }
    auto nested = [&prefix](const std::string& tag) { return tag.empty() ? prefix : prefix + "/" + tag; };
    for (const Instance& src : cell.instances()) {
      Instance inst = src;
      inst.name = prefix + "." + src.name;
      inst.cell = nested(src.cell);
      for (auto& b : inst.inputs) b.net = remap[static_cast<std::size_t>(b.net)];
      for (auto& b : inst.outputs) b.net = remap[static_cast<std::size_t>(b.net)];
      append_instance(std::move(inst));
    }
    for (const CellRecord& rec : cell.cells()) add_cell(CellRecord{nested(rec.tag), rec.kind, rec.declared});
  }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.name_ == b.name_ && a.metadata_ == b.metadata_ && a.nets_ == b.nets_ && a.ports_ == b.ports_ &&
           a.instances_ == b.instances_ && a.cells_ == b.cells_;
  }

 private:
  std::string name_;
  std::map<std::string, std::string> metadata_;
  std::vector<Net> nets_;
  std::map<std::string, NetId> net_index_;
  std::vector<Port> ports_;
  std::vector<Instance> instances_;
  std::vector<CellRecord> cells_;
};

// ---------------------------------------------------------------------------
// Connectivity
// ---------------------------------------------------------------------------

struct PinRef {
  InstanceId inst;
  int pin;
};

/// Derived per-net data: driver, fanout pins and lumped capacitance.
struct Connectivity {
  std::vector<std::optional<PinRef>> driver;  // instance output driving the net
  std::vector<std::vector<PinRef>> fanout;    // instance inputs reading the net
  std::vector<double> load_cap;               // F
  std::vector<InstanceId> topo_order;         // empty if the graph is cyclic
};

inline Connectivity connectivity(const Circuit& c) {
  const std::size_t n_nets = c.nets().size();
  Connectivity out;
  out.driver.assign(n_nets, std::nullopt);
  out.fanout.assign(n_nets, {});
  out.load_cap.assign(n_nets, 0.0);
  for (const Instance& inst : c.instances()) {
    for (std::size_t i = 0; i < inst.outputs.size(); ++i)
      out.driver[static_cast<std::size_t>(inst.outputs[i].net)] = PinRef{inst.id, static_cast<int>(i)};
    for (std::size_t i = 0; i < inst.inputs.size(); ++i) {
      const auto n = static_cast<std::size_t>(inst.inputs[i].net);
      out.fanout[n].push_back(PinRef{inst.id, static_cast<int>(i)});
      out.load_cap[n] += inst.prim.params.input_cap_per_pin;
    }
  }
  for (const Net& n : c.nets()) {
    auto& cap = out.load_cap[static_cast<std::size_t>(n.id)];
    cap = n.constant ? 0.0 : cap + n.external_load;
  }

  // Kahn over instances; ties by instance id keep the order deterministic.
  std::vector<int> pending(c.instances().size(), 0);
  for (const Instance& inst : c.instances())
    for (const auto& b : inst.inputs)
      if (out.driver[static_cast<std::size_t>(b.net)]) ++pending[static_cast<std::size_t>(inst.id)];
  std::priority_queue<InstanceId, std::vector<InstanceId>, std::greater<>> ready;
  for (const Instance& inst : c.instances())
    if (pending[static_cast<std::size_t>(inst.id)] == 0) ready.push(inst.id);
  while (!ready.empty()) {
    const InstanceId id = ready.top();
    ready.pop();
    out.topo_order.push_back(id);
    for (const auto& b : c.instance(id).outputs)
      for (const PinRef& r : out.fanout[static_cast<std::size_t>(b.net)])
        if (--pending[static_cast<std::size_t>(r.inst)] == 0) ready.push(r.inst);
  }
  if (out.topo_order.size() != c.instances().size()) out.topo_order.clear();
  return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class DiagnosticKind : std::uint8_t {
  UndrivenNet,
  MultipleDrivers,
  EncodingMismatch,
  CombinationalCycle,
  UnboundPin,
  BadPort,
};

inline const char* to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::UndrivenNet: return "undriven-net";
    case DiagnosticKind::MultipleDrivers: return "multiple-driver";
    case DiagnosticKind::EncodingMismatch: return "encoding-mismatch";
    case DiagnosticKind::CombinationalCycle: return "combinational-cycle";
    case DiagnosticKind::UnboundPin: return "unbound-pin";
    case DiagnosticKind::BadPort: return "bad-port";
  }
  return "?";
}

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
};

inline std::vector<Diagnostic> validate(const Circuit& c) {
  std::vector<Diagnostic> diags;
  const auto n_nets = static_cast<NetId>(c.nets().size());
  auto bound = [n_nets](NetId n) { return n >= 0 && n < n_nets; };

  std::vector<int> drivers(c.nets().size(), 0);
  for (const Net& n : c.nets())
    if (n.constant) ++drivers[static_cast<std::size_t>(n.id)];
  for (const Port& p : c.ports()) {
    if (!bound(p.net)) {
      diags.push_back({DiagnosticKind::BadPort, "port '" + p.name + "' refers to no net"});
      continue;
    }
    if (p.direction == PortDirection::Input) ++drivers[static_cast<std::size_t>(p.net)];
  }

  bool pins_ok = true;
  for (const Instance& inst : c.instances()) {
    const PortShape shape = port_shape(inst.prim.kind, inst.prim.k);
    if (inst.inputs.size() != shape.inputs.size() || inst.outputs.size() != shape.outputs.size()) {
      diags.push_back({DiagnosticKind::UnboundPin, "instance '" + inst.name + "' pin count does not match " +
                                                        to_string(inst.prim.kind)});
      pins_ok = false;
      continue;
    }
    const Radix out_radix = inst.prim.params.output_encoding.radix();
    auto check = [&](const PinBinding& b, PinClass cls, bool is_output) {
      const std::string where = "'" + inst.name + "." + b.pin + "'";
      if (!bound(b.net)) {
        diags.push_back({DiagnosticKind::UnboundPin, "pin " + where + " is not bound"});
        pins_ok = false;
        return;
      }
      const Net& net = c.net(b.net);
      if (is_output) ++drivers[static_cast<std::size_t>(b.net)];
      const Radix want = cls == PinClass::Binary ? Radix::Binary
                         : cls == PinClass::Quaternary ? Radix::Quaternary
                                                       : out_radix;
      if (!(b.encoding == net.encoding) || net.encoding.radix() != want)
        diags.push_back({DiagnosticKind::EncodingMismatch, "pin " + where + " expects " + b.encoding.name() +
                                                               " but net '" + net.name + "' is " +
                                                               net.encoding.name()});
    };
    for (std::size_t i = 0; i < inst.inputs.size(); ++i) check(inst.inputs[i], shape.inputs[i].cls, false);
    for (std::size_t i = 0; i < inst.outputs.size(); ++i) check(inst.outputs[i], shape.outputs[i].cls, true);
    for (const auto& b : inst.outputs)
      if (!(b.encoding == inst.prim.params.output_encoding))
        diags.push_back({DiagnosticKind::EncodingMismatch,
                         "instance '" + inst.name + "' output pin encoding differs from its supply encoding"});
  }

  for (const Net& n : c.nets()) {
    const int d = drivers[static_cast<std::size_t>(n.id)];
    if (d == 0) diags.push_back({DiagnosticKind::UndrivenNet, "net '" + n.name + "' has no driver"});
    if (d > 1)
      diags.push_back({DiagnosticKind::MultipleDrivers, "net '" + n.name + "' has " + std::to_string(d) + " drivers"});
  }

  if (pins_ok && !c.instances().empty() && connectivity(c).topo_order.empty())
    diags.push_back({DiagnosticKind::CombinationalCycle, "circuit '" + c.name() + "' contains a combinational cycle"});
  return diags;
}

inline void require_valid(const Circuit& c) {
  const auto diags = validate(c);
  if (diags.empty()) return;
  std::string msg = "circuit '" + c.name() + "' is invalid:";
  for (const auto& d : diags) msg += std::string("\n  ") + to_string(d.kind) + ": " + d.message;
  throw Error(ErrorKind::Structure, msg);
}

// ---------------------------------------------------------------------------
// Area
// ---------------------------------------------------------------------------

struct AreaShare {
  std::string group;  // gate kind, or "cell:<kind>" for declared cells
  int transistors = 0;
  double sigma_di_nm = 0.0;
  double percent = 0.0;
};

struct AreaReport {
  double sigma_di_nm = 0.0;
  int transistors = 0;
  std::vector<AreaShare> breakdown;  // sorted by group name
};

inline AreaReport area_report(const Circuit& c) {
  std::map<std::string, AreaShare> groups;
  auto charge = [&groups](const std::string& group, const TransistorInventory& inv) {
    AreaShare& s = groups[group];
    s.group = group;
    s.transistors += inv.total_count();
    s.sigma_di_nm += inventory_area(inv);
  };
  for (const Instance& inst : c.instances()) {
    const CellRecord* cell = c.find_cell(inst.cell);
    if (cell && cell->declared) continue;
    charge(to_string(inst.prim.kind), inst.prim.inventory);
  }
  for (const CellRecord& rec : c.cells())
    if (rec.declared) charge("cell:" + rec.kind, *rec.declared);

  AreaReport r;
  for (auto& [name, share] : groups) {
    r.sigma_di_nm += share.sigma_di_nm;
    r.transistors += share.transistors;
    r.breakdown.push_back(share);
  }
  for (auto& share : r.breakdown) share.percent = r.sigma_di_nm > 0 ? 100.0 * share.sigma_di_nm / r.sigma_di_nm : 0.0;
  return r;
}

}  // namespace quadd
