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

// Behavioral gate primitives: logic function, lumped-RC electrical model and
// the CNTFET transistor inventory used for the sum-of-diameters area metric.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadd/errors.hpp"
#include "quadd/levels.hpp"

namespace quadd {

// ---------------------------------------------------------------------------
// CNTFET diameters
// ---------------------------------------------------------------------------

struct ChiralityDiameter {
  int n;
  double d_nm;
};

/// (n, 0) zig-zag tubes used by the cell library, diameter in nm.
inline constexpr std::array<ChiralityDiameter, 6> kDiameterTable{{
    {8, 0.626},
    {10, 0.783},
    {13, 1.017},
    {19, 1.487},
    {29, 2.270},
    {37, 2.896},
}};

/// d ~= 0.0783 * n nm for (n, 0) tubes.
inline constexpr double kDiameterPerChirality = 0.0783;

inline double diameter_nm(int chirality) {
  for (const auto& e : kDiameterTable)
    if (e.n == chirality) return e.d_nm;
  throw Error(ErrorKind::UnknownChirality, "no diameter for chirality n=" + std::to_string(chirality));
}

enum class DeviceType : std::uint8_t { N, P };

struct InventoryEntry {
  DeviceType type;
  int chirality;
  int count;
  friend bool operator==(const InventoryEntry&, const InventoryEntry&) = default;
};

struct TransistorInventory {
  std::vector<InventoryEntry> entries;

  int total_count() const {
    int total = 0;
    for (const auto& e : entries) total += e.count;
    return total;
  }

  TransistorInventory& operator+=(const TransistorInventory& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
    return *this;
  }

  friend TransistorInventory operator+(TransistorInventory a, const TransistorInventory& b) { return a += b; }
  friend bool operator==(const TransistorInventory&, const TransistorInventory&) = default;
};

/// Sum of diameters (nm) over every transistor in the inventory.
inline double inventory_area(const TransistorInventory& inv) {
  double total = 0.0;
  for (const auto& e : inv.entries) {
    if (e.count < 1) throw Error(ErrorKind::Domain, "inventory entry with count < 1");
    total += e.count * diameter_nm(e.chirality);
  }
  return total;
}

/// Shorthand for an inventory of `pairs` complementary N/P devices of one chirality.
inline TransistorInventory complementary(int chirality, int pairs) {
  return {{{DeviceType::N, chirality, pairs}, {DeviceType::P, chirality, pairs}}};
}

// ---------------------------------------------------------------------------
// Electrical model
// ---------------------------------------------------------------------------

/// Supply at which drive_resistance_ref is specified.
inline constexpr double kReferenceSupply = 0.9;

/// One simulator tick, in seconds (0.1 ps).
inline constexpr double kTickSeconds = 1e-13;

using Tick = std::int64_t;

inline Tick to_ticks(double seconds) { return static_cast<Tick>(std::llround(seconds / kTickSeconds)); }
inline double ticks_to_ps(Tick t) { return static_cast<double>(t) / 10.0; }

struct ElectricalParams {
  double supply_voltage = kReferenceSupply;
  double input_cap_per_pin = 0.2e-15;
  double drive_resistance_ref = 10e3;
  double intrinsic_delay = 1e-12;
  double threshold_voltage = 0.2;
  SignalEncoding output_encoding = SignalEncoding::binary(kReferenceSupply);

  void check() const {
    if (!(supply_voltage > 0 && input_cap_per_pin > 0 && drive_resistance_ref > 0 && intrinsic_delay > 0 &&
          threshold_voltage > 0))
      throw Error(ErrorKind::Domain, "electrical parameters must be positive");
  }

  friend bool operator==(const ElectricalParams&, const ElectricalParams&) = default;
};

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

enum class GateKind : std::uint8_t {
  ThresholdDetector,  // k in {1,2,3}: q = (in < k), qb = !q (buffered)
  Succ,               // k in {1,2,3}: (in + k) mod 4
  Mux4,               // quaternary select
  Mux2,               // binary select
  Inv,
  Buf,
  Nand,  // k = arity (2 or 3)
  Nor,   // k = arity (2 or 3)
  XorTg,  // y = a ^ b, yb = !y
  Maj3,
};

inline constexpr std::array<GateKind, 10> kAllGateKinds{
    GateKind::ThresholdDetector, GateKind::Succ, GateKind::Mux4, GateKind::Mux2,  GateKind::Inv,
    GateKind::Buf,               GateKind::Nand, GateKind::Nor,  GateKind::XorTg, GateKind::Maj3};

inline const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::ThresholdDetector: return "THRESHOLD_DETECTOR";
    case GateKind::Succ: return "SUCC";
    case GateKind::Mux4: return "MUX4";
    case GateKind::Mux2: return "MUX2";
    case GateKind::Inv: return "INV";
    case GateKind::Buf: return "BUF";
    case GateKind::Nand: return "NAND";
    case GateKind::Nor: return "NOR";
    case GateKind::XorTg: return "XOR_TG";
    case GateKind::Maj3: return "MAJ3";
  }
  return "?";
}

inline GateKind parse_gate_kind(std::string_view s) {
  for (GateKind k : kAllGateKinds)
    if (s == to_string(k)) return k;
  throw Error(ErrorKind::Schema, "unknown gate kind '" + std::string(s) + "'");
}

/// Radix requirement of a pin. `Data` pins carry whatever the gate's output
/// carries (MUX data inputs).
enum class PinClass : std::uint8_t { Binary, Quaternary, Data };

struct PinShape {
  std::string_view name;
  PinClass cls;
};

struct PortShape {
  std::vector<PinShape> inputs;
  std::vector<PinShape> outputs;
};

/// Pin names and radix classes for a kind; `k` is the arity for NAND/NOR.
inline PortShape port_shape(GateKind kind, int k = 0) {
  using C = PinClass;
  switch (kind) {
    case GateKind::ThresholdDetector: return {{{"in", C::Quaternary}}, {{"q", C::Binary}, {"qb", C::Binary}}};
    case GateKind::Succ: return {{{"in", C::Quaternary}}, {{"out", C::Quaternary}}};
    case GateKind::Mux4:
      return {{{"d0", C::Data}, {"d1", C::Data}, {"d2", C::Data}, {"d3", C::Data}, {"s", C::Quaternary}},
              {{"y", C::Data}}};
    case GateKind::Mux2: return {{{"d0", C::Data}, {"d1", C::Data}, {"s", C::Binary}}, {{"y", C::Data}}};
    case GateKind::Inv:
    case GateKind::Buf: return {{{"a", C::Binary}}, {{"y", C::Binary}}};
    case GateKind::Nand:
    case GateKind::Nor:
      if (k == 3) return {{{"a", C::Binary}, {"b", C::Binary}, {"c", C::Binary}}, {{"y", C::Binary}}};
      return {{{"a", C::Binary}, {"b", C::Binary}}, {{"y", C::Binary}}};
    case GateKind::XorTg: return {{{"a", C::Binary}, {"b", C::Binary}}, {{"y", C::Binary}, {"yb", C::Binary}}};
    case GateKind::Maj3: return {{{"a", C::Binary}, {"b", C::Binary}, {"c", C::Binary}}, {{"y", C::Binary}}};
  }
  return {};
}

struct GatePrimitive {
  GateKind kind = GateKind::Inv;
  int k = 0;  // threshold / successor amount / arity, 0 where unused
  ElectricalParams params;
  TransistorInventory inventory;

  friend bool operator==(const GatePrimitive&, const GatePrimitive&) = default;
};

inline void check_k(GateKind kind, int k) {
  switch (kind) {
    case GateKind::ThresholdDetector:
    case GateKind::Succ:
      if (k < 1 || k > 3) throw Error(ErrorKind::Domain, std::string(to_string(kind)) + " needs k in [1,3]");
      break;
    case GateKind::Nand:
    case GateKind::Nor:
      if (k != 2 && k != 3) throw Error(ErrorKind::Domain, std::string(to_string(kind)) + " arity must be 2 or 3");
      break;
    default: break;
  }
}

namespace detail {

inline LogicLevel bit(bool b) { return b ? LogicLevel::L1 : LogicLevel::L0; }

inline void check_pin(LogicLevel l, PinClass cls, GateKind kind) {
  if (l == LogicLevel::X) return;
  if (cls == PinClass::Binary && level_index(l) > 1)
    throw Error(ErrorKind::EncodingMismatch,
                std::string(to_string(kind)) + " binary pin driven with level " + to_string(l));
}

// Controlling-value evaluation: a known controlling input decides the output
// even when other inputs are X.
inline LogicLevel and_like(std::span<const LogicLevel> in, bool invert) {
  bool any_x = false;
  for (LogicLevel l : in) {
    if (l == LogicLevel::L0) return bit(invert);
    if (l == LogicLevel::X) any_x = true;
  }
  return any_x ? LogicLevel::X : bit(!invert);
}

inline LogicLevel or_like(std::span<const LogicLevel> in, bool invert) {
  bool any_x = false;
  for (LogicLevel l : in) {
    if (l == LogicLevel::L1) return bit(!invert);
    if (l == LogicLevel::X) any_x = true;
  }
  return any_x ? LogicLevel::X : bit(invert);
}

inline LogicLevel select(std::span<const LogicLevel> data, LogicLevel sel) {
  if (is_known(sel)) return data[static_cast<std::size_t>(level_index(sel))];
  // Unknown select only resolves if every candidate agrees.
  for (LogicLevel d : data)
    if (d != data[0]) return LogicLevel::X;
  return data[0];
}

}  // namespace detail

/// Output levels of `kind` for the given input levels (pin order of port_shape).
inline std::vector<LogicLevel> eval_primitive(GateKind kind, int k, std::span<const LogicLevel> in) {
  using detail::bit;
  const PortShape shape = port_shape(kind, k);
  check_k(kind, k);
  if (in.size() != shape.inputs.size())
    throw Error(ErrorKind::Domain, std::string(to_string(kind)) + " expects " + std::to_string(shape.inputs.size()) +
                                       " inputs, got " + std::to_string(in.size()));
  for (std::size_t i = 0; i < in.size(); ++i) detail::check_pin(in[i], shape.inputs[i].cls, kind);

  constexpr LogicLevel X = LogicLevel::X;
  switch (kind) {
    case GateKind::ThresholdDetector: {
      if (in[0] == X) return {X, X};
      const bool below = level_index(in[0]) < k;
      return {bit(below), bit(!below)};
    }
    case GateKind::Succ:
      if (in[0] == X) return {X};
      return {static_cast<LogicLevel>((level_index(in[0]) + k) % 4)};
    case GateKind::Mux4: return {detail::select(in.first(4), in[4])};
    case GateKind::Mux2: return {detail::select(in.first(2), in[2])};
    case GateKind::Inv:
      if (in[0] == X) return {X};
      return {bit(in[0] == LogicLevel::L0)};
    case GateKind::Buf: return {in[0]};
    case GateKind::Nand: return {detail::and_like(in, true)};
    case GateKind::Nor: return {detail::or_like(in, true)};
    case GateKind::XorTg: {
      if (in[0] == X || in[1] == X) return {X, X};
      const bool y = (in[0] == LogicLevel::L1) != (in[1] == LogicLevel::L1);
      return {bit(y), bit(!y)};
    }
    case GateKind::Maj3: {
      int ones = 0, zeros = 0;
      for (LogicLevel l : in) {
        if (l == LogicLevel::L1) ++ones;
        if (l == LogicLevel::L0) ++zeros;
      }
      if (ones >= 2) return {LogicLevel::L1};
      if (zeros >= 2) return {LogicLevel::L0};
      return {X};
    }
  }
  return {};
}

inline std::vector<LogicLevel> eval_primitive(const GatePrimitive& g, std::span<const LogicLevel> in) {
  return eval_primitive(g.kind, g.k, in);
}

/// Effective drive resistance: the reference resistance scaled by the
/// overdrive ratio (V_ref - V_th) / (V_dd - V_th).
inline double effective_resistance(const ElectricalParams& p) {
  if (!(p.supply_voltage > p.threshold_voltage))
    throw Error(ErrorKind::NonFunctionalGate, "supply " + std::to_string(p.supply_voltage) +
                                                  " V does not exceed threshold " +
                                                  std::to_string(p.threshold_voltage) + " V");
  return p.drive_resistance_ref * (kReferenceSupply - p.threshold_voltage) /
         (p.supply_voltage - p.threshold_voltage);
}

/// Lumped-RC gate delay in seconds: t_int + R_eff * C_load.
inline double propagation_delay(const ElectricalParams& p, double load_cap) {
  if (load_cap < 0) throw Error(ErrorKind::Domain, "negative load capacitance");
  return p.intrinsic_delay + effective_resistance(p) * load_cap;
}

inline double propagation_delay(const GatePrimitive& g, double load_cap) {
  return propagation_delay(g.params, load_cap);
}

/// The same delay quantized to simulator ticks; STA and the engine both use this.
inline Tick propagation_ticks(const GatePrimitive& g, double load_cap) {
  const Tick t = to_ticks(propagation_delay(g, load_cap));
  return t > 0 ? t : 1;
}

/// 1/2 C dV^2, charged on both edges.
inline double switching_energy(double node_cap, double v_from, double v_to) {
  if (node_cap < 0) throw Error(ErrorKind::Domain, "negative node capacitance");
  const double dv = v_to - v_from;
  return 0.5 * node_cap * dv * dv;
}

}  // namespace quadd
