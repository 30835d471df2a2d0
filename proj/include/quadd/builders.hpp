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

// Generators for the quaternary and binary full adders and ripple-carry
// adders built from them.

#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "quadd/errors.hpp"
#include "quadd/library.hpp"
#include "quadd/netlist.hpp"

namespace quadd {

enum class QfaVariant { QFA1, QFA2 };  // carry swing Vdd/3 vs Vdd
enum class BfaVariant { BFA1, BFA2 };  // 28T mirror vs 14T transmission gate

/// Everything the comparison flow can instantiate as "one digit".
enum class CellKind { QFA1, QFA2, BFA1, BFA2, BFA1x2, BFA2x2 };

inline const char* to_string(CellKind k) {
  switch (k) {
    case CellKind::QFA1: return "qfa1";
    case CellKind::QFA2: return "qfa2";
    case CellKind::BFA1: return "bfa1";
    case CellKind::BFA2: return "bfa2";
    case CellKind::BFA1x2: return "bfa1x2";
    case CellKind::BFA2x2: return "bfa2x2";
  }
  return "?";
}

inline CellKind parse_cell_kind(const std::string& s) {
  for (CellKind k : {CellKind::QFA1, CellKind::QFA2, CellKind::BFA1, CellKind::BFA2, CellKind::BFA1x2, CellKind::BFA2x2})
    if (s == to_string(k)) return k;
  throw Error(ErrorKind::Usage, "unknown cell kind '" + s + "'");
}

inline bool is_quaternary(CellKind k) { return k == CellKind::QFA1 || k == CellKind::QFA2; }
inline bool is_slice(CellKind k) { return k == CellKind::BFA1x2 || k == CellKind::BFA2x2; }

namespace detail {

inline std::string volts(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

/// Small helper that places library cells into a circuit.
class Placer {
 public:
  Placer(Circuit& c, const CellLibrary& lib, double vdd) : c_(c), lib_(lib), vdd_(vdd) {}

  /// Places `lib_cell` with its outputs on fresh nets named `outs`.
  std::vector<NetId> place(const std::string& inst, const std::string& lib_cell, const std::vector<NetId>& ins,
                           const std::vector<std::string>& outs, const SignalEncoding& out_enc,
                           double supply = -1.0) {
    GatePrimitive g = lib_.make(lib_cell, supply > 0 ? supply : vdd_, out_enc);
    std::vector<NetId> out_nets;
    for (const auto& n : outs) out_nets.push_back(c_.add_net(n, out_enc));
    c_.add_instance(inst, lib_cell, std::move(g), ins, out_nets);
    return out_nets;
  }

  NetId place1(const std::string& inst, const std::string& lib_cell, const std::vector<NetId>& ins,
               const std::string& out, const SignalEncoding& out_enc, double supply = -1.0) {
    return place(inst, lib_cell, ins, {out}, out_enc, supply)[0];
  }

 private:
  Circuit& c_;
  const CellLibrary& lib_;
  double vdd_;
};

}  // namespace detail

/// Carry rail of a quaternary adder: {0, Vdd/3} for QFA1, {0, Vdd} for QFA2.
inline SignalEncoding qfa_carry_encoding(QfaVariant v, double vdd) {
  return SignalEncoding::binary(v == QfaVariant::QFA1 ? vdd / 3.0 : vdd);
}

/// MUX-based quaternary full adder with dual intermediate carries.
///
/// B feeds three threshold detectors whose (in < k) outputs are buffered into
/// strong rails; A feeds the three successor circuits. Two MUX4s selected by B
/// give Sum0 = (A+B) mod 4 and Sum1 = (A+B+1) mod 4, two MUX4s selected by A
/// pick the complemented intermediate carries from the buffered rails and
/// constant ties. Cin selects between them in two MUX2s, and a last inverter,
/// supplied at the carry-rail voltage, delivers Cout. Cin -> Cout therefore
/// crosses exactly one MUX2 and the inverter.
inline Circuit build_qfa(QfaVariant variant, double vdd, const CellLibrary& lib) {
  if (!(vdd > 0)) throw Error(ErrorKind::Domain, "vdd must be positive");
  const std::string kind = variant == QfaVariant::QFA1 ? "qfa1" : "qfa2";
  Circuit c(kind);
  const SignalEncoding quat = SignalEncoding::quaternary(vdd);
  const SignalEncoding rail = SignalEncoding::binary(vdd);
  const SignalEncoding carry = qfa_carry_encoding(variant, vdd);
  detail::Placer p(c, lib, vdd);

  const NetId a = c.add_input("A", quat);
  const NetId b = c.add_input("B", quat);
  const NetId cin = c.add_input("Cin", carry);
  const NetId one = c.add_constant("one", rail, LogicLevel::L1);
  const NetId zero = c.add_constant("zero", rail, LogicLevel::L0);

  NetId below[4] = {};  // below[k]: buffered (B < k) rail
  for (int k = 1; k <= 3; ++k) {
    const std::string ks = std::to_string(k);
    const auto det = p.place("td" + ks, "threshold_detector_" + ks, {b}, {"B_lt" + ks, "B_ge" + ks}, rail);
    below[k] = p.place1("buf" + ks, "buf", {det[0]}, "B_lt" + ks + "_bb", rail);
  }
  NetId succ[4] = {a};
  for (int k = 1; k <= 3; ++k) {
    const std::string ks = std::to_string(k);
    succ[k] = p.place1("succ" + ks, "succ_" + ks, {a}, "A_p" + ks, quat);
  }

  const NetId sum0 = p.place1("mux4_sum0", "mux4", {succ[0], succ[1], succ[2], succ[3], b}, "Sum0", quat);
  const NetId sum1 = p.place1("mux4_sum1", "mux4", {succ[1], succ[2], succ[3], succ[0], b}, "Sum1", quat);
  // !Cout0 = !(A+B >= 4), !Cout1 = !(A+B >= 3), both indexed by A.
  const NetId cout0_b = p.place1("mux4_cout0b", "mux4", {one, below[3], below[2], below[1], a}, "Cout0_b", rail);
  const NetId cout1_b = p.place1("mux4_cout1b", "mux4", {below[3], below[2], below[1], zero, a}, "Cout1_b", rail);

  const NetId sum = p.place1("mux2_sum", "mux2", {sum0, sum1, cin}, "Sum", quat);
  const NetId cout_b = p.place1("mux2_cout", "mux2", {cout0_b, cout1_b, cin}, "Cout_b", rail);
  const NetId cout = p.place1("inv_cout", "inv", {cout_b}, "Cout", carry, carry.high());

  c.add_output("Sum", sum);
  c.add_output("Cout", cout);
  c.add_cell(CellRecord{"", kind, std::nullopt});
  c.metadata()["variant"] = variant == QfaVariant::QFA1 ? "QFA1" : "QFA2";
  c.metadata()["vdd"] = detail::volts(vdd);
  c.metadata()["mux4_count"] = "4";
  return c;
}

/// Binary full adders. BFA1 is the static mirror adder (carry from a majority
/// stage, sum from the complemented-carry mirror network); BFA2 is the
/// transmission-gate adder built around a shared XOR/XNOR pair. Both carry a
/// cell-level transistor inventory from the library (28T / 14T by default).
inline Circuit build_bfa(BfaVariant variant, double vdd, const CellLibrary& lib) {
  if (!(vdd > 0)) throw Error(ErrorKind::Domain, "vdd must be positive");
  const std::string kind = variant == BfaVariant::BFA1 ? "bfa1" : "bfa2";
  Circuit c(kind);
  const SignalEncoding rail = SignalEncoding::binary(vdd);
  detail::Placer p(c, lib, vdd);

  const NetId a = c.add_input("A", rail);
  const NetId b = c.add_input("B", rail);
  const NetId cin = c.add_input("Cin", rail);
  NetId sum = kNoNet, cout = kNoNet;
  if (variant == BfaVariant::BFA1) {
    cout = p.place1("maj", "maj3", {a, b, cin}, "Cout", rail);
    const NetId any = p.place1("nor3", "nor3", {a, b, cin}, "none_set", rail);
    const NetId all = p.place1("nand3", "nand3", {a, b, cin}, "not_all_set", rail);
    // one_set = !Cout & (a | b | cin)
    const NetId one_set = p.place1("nor2", "nor2", {cout, any}, "one_set", rail);
    const NetId one_set_b = p.place1("inv", "inv", {one_set}, "one_set_b", rail);
    sum = p.place1("nand2", "nand2", {one_set_b, all}, "Sum", rail);
  } else {
    const auto x = p.place("xor", "xor_tg", {a, b}, {"P", "P_b"}, rail);
    sum = p.place1("mux2_sum", "mux2", {x[0], x[1], cin}, "Sum", rail);
    cout = p.place1("mux2_cout", "mux2", {a, cin, x[0]}, "Cout", rail);
  }
  c.add_output("Sum", sum);
  c.add_output("Cout", cout);
  c.add_cell(CellRecord{"", kind, lib.declared(kind)});
  c.metadata()["variant"] = variant == BfaVariant::BFA1 ? "BFA1" : "BFA2";
  c.metadata()["vdd"] = detail::volts(vdd);
  return c;
}

/// N-digit ripple-carry adder: cell i's Cout drives cell i+1's Cin, and `cl`
/// loads every sum output and the final carry. Ports A0.., B0.., C0, S0..,
/// C<n>; cells are tagged u0..u<n-1>.
inline Circuit build_cpa(const Circuit& cell, int n_digits, double cl) {
  if (n_digits < 1) throw Error(ErrorKind::Domain, "n_digits must be >= 1");
  if (cl < 0) throw Error(ErrorKind::Domain, "negative load");
  for (const char* p : {"A", "B", "Cin", "Sum", "Cout"})
    if (!cell.find_port(p))
      throw Error(ErrorKind::Structure, "cell '" + cell.name() + "' lacks port '" + std::string(p) + "'");
  auto enc_of = [&cell](const char* port) { return cell.net(cell.port(port).net).encoding; };

  Circuit c("cpa" + std::to_string(n_digits) + "_" + cell.name());
  std::vector<NetId> as, bs;
  for (int i = 0; i < n_digits; ++i) as.push_back(c.add_input("A" + std::to_string(i), enc_of("A")));
  for (int i = 0; i < n_digits; ++i) bs.push_back(c.add_input("B" + std::to_string(i), enc_of("B")));
  NetId carry = c.add_input("C0", enc_of("Cin"));
  for (int i = 0; i < n_digits; ++i) {
    const std::string is = std::to_string(i), next = std::to_string(i + 1);
    const NetId s = c.add_net("S" + is, enc_of("Sum"), cl);
    const NetId co = c.add_net("C" + next, enc_of("Cout"), i + 1 == n_digits ? cl : 0.0);
    c.instantiate(cell, "u" + is, {{"A", as[static_cast<std::size_t>(i)]}, {"B", bs[static_cast<std::size_t>(i)]},
                                   {"Cin", carry}, {"Sum", s}, {"Cout", co}});
    c.add_output("S" + is, s);
    carry = co;
  }
  c.add_output("C" + std::to_string(n_digits), carry);
  c.metadata() = cell.metadata();
  c.metadata()["cell"] = cell.name();
  c.metadata()["n_digits"] = std::to_string(n_digits);
  return c;
}

/// Same circuit with `cl` added to every output-port net.
inline Circuit with_output_load(Circuit c, double cl) {
  for (const Port& p : c.ports())
    if (p.direction == PortDirection::Output) c.net(p.net).external_load += cl;
  return c;
}

inline Circuit build_adder_cell(CellKind kind, double vdd, const CellLibrary& lib) {
  switch (kind) {
    case CellKind::QFA1: return build_qfa(QfaVariant::QFA1, vdd, lib);
    case CellKind::QFA2: return build_qfa(QfaVariant::QFA2, vdd, lib);
    case CellKind::BFA1:
    case CellKind::BFA1x2: return build_bfa(BfaVariant::BFA1, vdd, lib);
    case CellKind::BFA2:
    case CellKind::BFA2x2: return build_bfa(BfaVariant::BFA2, vdd, lib);
  }
  throw Error(ErrorKind::Usage, "unknown cell kind");
}

/// Two chained binary adders computing one quaternary digit's worth of sum.
inline Circuit build_bfa_slice(BfaVariant variant, double vdd, const CellLibrary& lib, double cl = 0.0) {
  Circuit c = build_cpa(build_bfa(variant, vdd, lib), 2, cl);
  c.set_name(std::string(variant == BfaVariant::BFA1 ? "bfa1" : "bfa2") + "x2");
  return c;
}

/// The circuit the comparison flow measures for one digit: a loaded single
/// cell, or a loaded 2-bit slice for the x2 kinds.
inline Circuit build_digit(CellKind kind, double vdd, const CellLibrary& lib, double cl) {
  if (is_slice(kind))
    return build_bfa_slice(kind == CellKind::BFA1x2 ? BfaVariant::BFA1 : BfaVariant::BFA2, vdd, lib, cl);
  return with_output_load(build_adder_cell(kind, vdd, lib), cl);
}

/// Port names of the digit circuit from build_digit.
struct DigitPorts {
  std::vector<std::string> a;     // operand A, least-significant first
  std::vector<std::string> b;
  std::string cin;
  std::vector<std::string> sums;
  std::string cout;
};

inline DigitPorts digit_ports(CellKind kind) {
  if (is_slice(kind)) return {{"A0", "A1"}, {"B0", "B1"}, "C0", {"S0", "S1"}, "C2"};
  return {{"A"}, {"B"}, "Cin", {"Sum"}, "Cout"};
}

/// N-digit CPA for a comparison config: N quaternary cells, or 2N binary
/// cells for the x2 kinds. Single-bit binary kinds chain N cells.
inline Circuit build_config_cpa(CellKind kind, double vdd, const CellLibrary& lib, int n_digits, double cl) {
  const int cells = is_slice(kind) ? 2 * n_digits : n_digits;
  return build_cpa(build_adder_cell(kind, vdd, lib), cells, cl);
}

}  // namespace quadd
