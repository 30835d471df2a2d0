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

// Cell library: named gate cells (kind + device parameters + transistor
// inventory) and cell-level declared inventories, with JSON overrides.
//
// Library JSON (all keys optional, unknown keys rejected, SI units):
//
//   {
//     "defaults": { "input_cap_per_pin": 2e-16, "drive_resistance_ref": 1e4,
//                   "intrinsic_delay": 1e-12, "threshold_voltage": 0.2 },
//     "cells": {
//       "mux4": { "drive_resistance_ref": 8e3,
//                 "inventory": [ {"type": "N", "n": 10, "count": 9},
//                                {"type": "P", "n": 10, "count": 9} ] },
//       "maj3": null                      // removes the cell
//     },
//     "declared": { "bfa2": [ {"type": "N", "n": 19, "count": 7}, ... ] }
//   }
//
// "defaults" applies to every cell before the per-cell entries.

#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "json.hpp"
#include "quadd/errors.hpp"
#include "quadd/gates.hpp"

namespace quadd {

/// Device parameters that live in the library; supply and output encoding
/// are chosen by the circuit generator at instantiation time.
struct DeviceParams {
  double input_cap_per_pin = 0.2e-15;
  double drive_resistance_ref = 10e3;
  double intrinsic_delay = 1e-12;
  double threshold_voltage = 0.2;

  friend bool operator==(const DeviceParams&, const DeviceParams&) = default;
};

struct LibraryCell {
  GateKind kind;
  int k = 0;
  DeviceParams device;
  TransistorInventory inventory;
};

class CellLibrary {
 public:
  /// The shipped library. Chiralities: transmission-gate MUXes on n=10,
  /// inverters and buffers on n=19, threshold detectors with skewed N/P
  /// diameters to place the switching point at level k.
  static CellLibrary defaults() {
    CellLibrary lib;
    auto add = [&lib](std::string name, GateKind kind, int k, TransistorInventory inv) {
      lib.cells_[std::move(name)] = LibraryCell{kind, k, DeviceParams{}, std::move(inv)};
    };
    const TransistorInventory buffer_pair = complementary(19, 2);
    add("threshold_detector_1", GateKind::ThresholdDetector, 1,
        TransistorInventory{{{DeviceType::N, 37, 1}, {DeviceType::P, 10, 1}}} + buffer_pair);
    add("threshold_detector_2", GateKind::ThresholdDetector, 2, complementary(19, 1) + buffer_pair);
    add("threshold_detector_3", GateKind::ThresholdDetector, 3,
        TransistorInventory{{{DeviceType::N, 10, 1}, {DeviceType::P, 37, 1}}} + buffer_pair);
    for (int k = 1; k <= 3; ++k)
      add("succ_" + std::to_string(k), GateKind::Succ, k, complementary(29, 2) + complementary(13, 2));
    add("mux4", GateKind::Mux4, 0, complementary(10, 9));
    add("mux2", GateKind::Mux2, 0, complementary(10, 3));
    add("inv", GateKind::Inv, 0, complementary(19, 1));
    add("buf", GateKind::Buf, 0, complementary(19, 2));
    add("nand2", GateKind::Nand, 2, complementary(19, 2));
    add("nand3", GateKind::Nand, 3, complementary(19, 3));
    add("nor2", GateKind::Nor, 2, complementary(19, 2));
    add("nor3", GateKind::Nor, 3, complementary(19, 3));
    add("xor_tg", GateKind::XorTg, 0, complementary(19, 3));
    add("maj3", GateKind::Maj3, 0, complementary(19, 5));

    lib.declared_["bfa1"] = complementary(19, 14);
    lib.declared_["bfa2"] = complementary(19, 7);
    return lib;
  }

  bool has(const std::string& name) const { return cells_.count(name) != 0; }

  const LibraryCell& cell(const std::string& name) const {
    auto it = cells_.find(name);
    if (it == cells_.end()) throw Error(ErrorKind::MissingPrimitive, "library has no cell '" + name + "'");
    return it->second;
  }

  LibraryCell& cell(const std::string& name) {
    return const_cast<LibraryCell&>(static_cast<const CellLibrary&>(*this).cell(name));
  }

  void erase(const std::string& name) { cells_.erase(name); }

  /// Cell-level inventory for adders whose transistor count is fixed as a
  /// whole (the binary full adders); nullopt if none is declared.
  std::optional<TransistorInventory> declared(const std::string& cell_kind) const {
    auto it = declared_.find(cell_kind);
    if (it == declared_.end()) return std::nullopt;
    return it->second;
  }

  /// Instantiates a library cell at the given supply, driving `out_enc`.
  GatePrimitive make(const std::string& name, double supply, const SignalEncoding& out_enc) const {
    const LibraryCell& c = cell(name);
    GatePrimitive g;
    g.kind = c.kind;
    g.k = c.k;
    g.params.supply_voltage = supply;
    g.params.input_cap_per_pin = c.device.input_cap_per_pin;
    g.params.drive_resistance_ref = c.device.drive_resistance_ref;
    g.params.intrinsic_delay = c.device.intrinsic_delay;
    g.params.threshold_voltage = c.device.threshold_voltage;
    g.params.output_encoding = out_enc;
    g.params.check();
    g.inventory = c.inventory;
    return g;
  }

  const std::map<std::string, LibraryCell>& cells() const noexcept { return cells_; }

  /// Applies a JSON override document on top of this library.
  void apply_overrides(const nlohmann::json& doc) {
    try {
      apply_overrides_unchecked(doc);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Schema, std::string("library document: ") + e.what());
    }
  }

  static CellLibrary from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Usage, "cannot open library file '" + path + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Schema, "library file '" + path + "': " + e.what());
    }
    CellLibrary lib = defaults();
    lib.apply_overrides(doc);
    return lib;
  }

  static TransistorInventory parse_inventory(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(ErrorKind::Schema, "inventory must be an array");
    TransistorInventory inv;
    for (const auto& e : j) {
      reject_unknown(e, {"type", "n", "count"}, "inventory entry");
      const std::string type = e.at("type").get<std::string>();
      if (type != "N" && type != "P") throw Error(ErrorKind::Schema, "device type must be N or P");
      InventoryEntry entry{type == "N" ? DeviceType::N : DeviceType::P, e.at("n").get<int>(), e.at("count").get<int>()};
      if (entry.count < 1) throw Error(ErrorKind::Schema, "inventory count must be >= 1");
      diameter_nm(entry.chirality);
      inv.entries.push_back(entry);
    }
    return inv;
  }

 private:
  void apply_overrides_unchecked(const nlohmann::json& doc) {
    using nlohmann::json;
    if (!doc.is_object()) throw Error(ErrorKind::Schema, "library document must be an object");
    reject_unknown(doc, {"defaults", "cells", "declared"}, "library");

    if (doc.contains("defaults")) {
      const json& d = doc.at("defaults");
      reject_unknown(d, {"input_cap_per_pin", "drive_resistance_ref", "intrinsic_delay", "threshold_voltage"},
                     "defaults");
      for (auto& [name, c] : cells_) apply_device(d, c.device);
    }
    if (doc.contains("cells")) {
      const json& cells = doc.at("cells");
      if (!cells.is_object()) throw Error(ErrorKind::Schema, "'cells' must be an object");
      const CellLibrary shipped = defaults();
      for (const auto& [name, entry] : cells.items()) {
        if (!shipped.has(name)) throw Error(ErrorKind::Schema, "unknown library cell '" + name + "'");
        if (entry.is_null()) {
          cells_.erase(name);
          continue;
        }
        reject_unknown(entry,
                       {"input_cap_per_pin", "drive_resistance_ref", "intrinsic_delay", "threshold_voltage",
                        "inventory"},
                       "cells." + name);
        if (!has(name)) cells_[name] = shipped.cell(name);
        LibraryCell& c = cells_.at(name);
        apply_device(entry, c.device);
        if (entry.contains("inventory")) c.inventory = parse_inventory(entry.at("inventory"));
      }
    }
    if (doc.contains("declared")) {
      const json& decl = doc.at("declared");
      if (!decl.is_object()) throw Error(ErrorKind::Schema, "'declared' must be an object");
      for (const auto& [name, inv] : decl.items()) {
        if (name != "bfa1" && name != "bfa2") throw Error(ErrorKind::Schema, "unknown declared cell '" + name + "'");
        declared_[name] = parse_inventory(inv);
      }
    }
  }


  static void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw Error(ErrorKind::Schema, "'" + where + "' must be an object");
    for (const auto& [key, value] : obj.items())
      if (!allowed.count(key)) throw Error(ErrorKind::Schema, "unknown key '" + key + "' in " + where);
  }

  static void apply_device(const nlohmann::json& j, DeviceParams& d) {
    auto take = [&j](const char* key, double& field) {
      if (!j.contains(key)) return;
      const double v = j.at(key).get<double>();
      if (!(v > 0)) throw Error(ErrorKind::Schema, std::string(key) + " must be positive");
      field = v;
    };
    take("input_cap_per_pin", d.input_cap_per_pin);
    take("drive_resistance_ref", d.drive_resistance_ref);
    take("intrinsic_delay", d.intrinsic_delay);
    take("threshold_voltage", d.threshold_voltage);
  }

  std::map<std::string, LibraryCell> cells_;
  std::map<std::string, TransistorInventory> declared_;
};

}  // namespace quadd
