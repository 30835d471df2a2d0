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

// Netlist interchange:
//
//   { "name", "metadata": {k: v},
//     "encodings": [ {"name", "radix", "levels": [V...]} ],
//     "nets":      [ {"id", "name", "encoding": idx, "external_load", "constant": level|null} ],
//     "ports":     [ {"name", "direction": "input"|"output", "net"} ],
//     "instances": [ {"id", "name", "lib_cell", "kind", "k", "cell",
//                     "params": {..., "output_encoding": idx}, "inventory": [...],
//                     "inputs": [ {"pin", "net", "encoding"} ], "outputs": [...] } ],
//     "cells":     [ {"tag", "kind", "declared": [...]|null} ] }
//
// emit -> parse reproduces the circuit exactly (doubles are written in
// shortest round-trip form).

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "quadd/library.hpp"
#include "quadd/netlist.hpp"

namespace quadd {

namespace detail {

class EncodingTable {
 public:
  int index(const SignalEncoding& e) {
    for (std::size_t i = 0; i < table_.size(); ++i)
      if (table_[i] == e && table_[i].name() == e.name()) return static_cast<int>(i);
    table_.push_back(e);
    return static_cast<int>(table_.size() - 1);
  }
  const std::vector<SignalEncoding>& all() const { return table_; }

 private:
  std::vector<SignalEncoding> table_;
};

inline nlohmann::json inventory_json(const TransistorInventory& inv) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : inv.entries)
    j.push_back({{"type", e.type == DeviceType::N ? "N" : "P"}, {"n", e.chirality}, {"count", e.count}});
  return j;
}

}  // namespace detail

inline nlohmann::json netlist_to_json(const Circuit& c) {
  using nlohmann::json;
  detail::EncodingTable enc;
  json j;
  j["name"] = c.name();
  j["metadata"] = c.metadata();

  json nets = json::array();
  for (const Net& n : c.nets()) {
    json jn = {{"id", n.id}, {"name", n.name}, {"encoding", enc.index(n.encoding)}, {"external_load", n.external_load}};
    jn["constant"] = n.constant ? json(level_index(*n.constant)) : json(nullptr);
    nets.push_back(std::move(jn));
  }

  json ports = json::array();
  for (const Port& p : c.ports())
    ports.push_back({{"name", p.name}, {"direction", p.direction == PortDirection::Input ? "input" : "output"},
                     {"net", p.net}});

  json insts = json::array();
  for (const Instance& inst : c.instances()) {
    const auto& pr = inst.prim.params;
    json ji = {{"id", inst.id},
               {"name", inst.name},
               {"lib_cell", inst.lib_cell},
               {"kind", to_string(inst.prim.kind)},
               {"k", inst.prim.k},
               {"cell", inst.cell}};
    ji["params"] = {{"supply_voltage", pr.supply_voltage},
                    {"input_cap_per_pin", pr.input_cap_per_pin},
                    {"drive_resistance_ref", pr.drive_resistance_ref},
                    {"intrinsic_delay", pr.intrinsic_delay},
                    {"threshold_voltage", pr.threshold_voltage},
                    {"output_encoding", enc.index(pr.output_encoding)}};
    ji["inventory"] = detail::inventory_json(inst.prim.inventory);
    auto pins = [&enc](const std::vector<PinBinding>& bs) {
      json arr = json::array();
      for (const auto& b : bs) arr.push_back({{"pin", b.pin}, {"net", b.net}, {"encoding", enc.index(b.encoding)}});
      return arr;
    };
    ji["inputs"] = pins(inst.inputs);
    ji["outputs"] = pins(inst.outputs);
    insts.push_back(std::move(ji));
  }

  json cells = json::array();
  for (const CellRecord& r : c.cells())
    cells.push_back({{"tag", r.tag}, {"kind", r.kind},
                     {"declared", r.declared ? detail::inventory_json(*r.declared) : json(nullptr)}});

  json encs = json::array();
  for (const auto& e : enc.all()) encs.push_back({{"name", e.name()}, {"radix", radix_value(e.radix())}, {"levels", e.level_voltages()}});

  j["encodings"] = std::move(encs);
  j["nets"] = std::move(nets);
  j["ports"] = std::move(ports);
  j["instances"] = std::move(insts);
  j["cells"] = std::move(cells);
  return j;
}

inline Circuit netlist_from_json(const nlohmann::json& j) {
  using nlohmann::json;
  try {
    std::vector<SignalEncoding> encs;
    for (const auto& e : j.at("encodings")) {
      const int radix = e.at("radix").get<int>();
      if (radix != 2 && radix != 4) throw Error(ErrorKind::Schema, "encoding radix must be 2 or 4");
      encs.emplace_back(radix == 2 ? Radix::Binary : Radix::Quaternary, e.at("levels").get<std::vector<double>>(),
                        e.at("name").get<std::string>());
    }
    auto enc = [&encs](const json& v) {
      const auto i = v.get<std::size_t>();
      if (i >= encs.size()) throw Error(ErrorKind::Schema, "encoding index out of range");
      return encs[i];
    };

    Circuit c(j.at("name").get<std::string>());
    c.metadata() = j.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& n : j.at("nets")) {
      const NetId id = c.add_net(n.at("name").get<std::string>(), enc(n.at("encoding")),
                                 n.at("external_load").get<double>());
      if (id != n.at("id").get<NetId>()) throw Error(ErrorKind::Schema, "net ids must be dense and ordered");
      if (!n.at("constant").is_null()) c.net(id).constant = level_from_index(n.at("constant").get<int>());
    }
    for (const auto& p : j.at("ports")) {
      const std::string dir = p.at("direction").get<std::string>();
      if (dir != "input" && dir != "output") throw Error(ErrorKind::Schema, "bad port direction '" + dir + "'");
      c.add_port(p.at("name").get<std::string>(), dir == "input" ? PortDirection::Input : PortDirection::Output,
                 p.at("net").get<NetId>());
    }
    for (const auto& ji : j.at("instances")) {
      Instance inst;
      inst.name = ji.at("name").get<std::string>();
      inst.lib_cell = ji.at("lib_cell").get<std::string>();
      inst.cell = ji.at("cell").get<std::string>();
      inst.prim.kind = parse_gate_kind(ji.at("kind").get<std::string>());
      inst.prim.k = ji.at("k").get<int>();
      const auto& pr = ji.at("params");
      inst.prim.params.supply_voltage = pr.at("supply_voltage").get<double>();
      inst.prim.params.input_cap_per_pin = pr.at("input_cap_per_pin").get<double>();
      inst.prim.params.drive_resistance_ref = pr.at("drive_resistance_ref").get<double>();
      inst.prim.params.intrinsic_delay = pr.at("intrinsic_delay").get<double>();
      inst.prim.params.threshold_voltage = pr.at("threshold_voltage").get<double>();
      inst.prim.params.output_encoding = enc(pr.at("output_encoding"));
      inst.prim.params.check();
      inst.prim.inventory = CellLibrary::parse_inventory(ji.at("inventory"));
      auto pins = [&enc](const json& arr) {
        std::vector<PinBinding> out;
        for (const auto& b : arr)
          out.push_back(PinBinding{b.at("pin").get<std::string>(), b.at("net").get<NetId>(), enc(b.at("encoding"))});
        return out;
      };
      inst.inputs = pins(ji.at("inputs"));
      inst.outputs = pins(ji.at("outputs"));
      if (c.append_instance(std::move(inst)) != ji.at("id").get<InstanceId>())
        throw Error(ErrorKind::Schema, "instance ids must be dense and ordered");
    }
    for (const auto& r : j.at("cells")) {
      CellRecord rec{r.at("tag").get<std::string>(), r.at("kind").get<std::string>(), std::nullopt};
      if (!r.at("declared").is_null()) rec.declared = CellLibrary::parse_inventory(r.at("declared"));
      c.add_cell(std::move(rec));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Schema, std::string("netlist: ") + e.what());
  }
}

}  // namespace quadd
