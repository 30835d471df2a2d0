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

#include <algorithm>
#include <random>

#include "gtest/gtest.h"
#include "quadd/builders.hpp"
#include "quadd/netlist.hpp"
#include "quadd/netlist_json.hpp"

namespace quadd {
namespace {

const CellLibrary& lib() {
  static const CellLibrary l = CellLibrary::defaults();
  return l;
}

bool has_kind(const std::vector<Diagnostic>& ds, DiagnosticKind k) {
  return std::any_of(ds.begin(), ds.end(), [k](const Diagnostic& d) { return d.kind == k; });
}

Circuit inverter_pair() {
  const auto rail = SignalEncoding::binary(0.9);
  Circuit c("pair");
  const NetId a = c.add_input("a", rail);
  const NetId m = c.add_net("m", rail);
  const NetId y = c.add_net("y", rail, 1e-15);
  c.add_instance("i0", "inv", lib().make("inv", 0.9, rail), {a}, {m});
  c.add_instance("i1", "inv", lib().make("inv", 0.9, rail), {m}, {y});
  c.add_output("y", y);
  return c;
}

TEST(Validate, GeneratedCircuitsAreClean) {
  for (CellKind k : {CellKind::QFA1, CellKind::QFA2, CellKind::BFA1, CellKind::BFA2, CellKind::BFA1x2,
                     CellKind::BFA2x2}) {
    EXPECT_TRUE(validate(build_digit(k, 0.9, lib(), 2e-15)).empty()) << to_string(k);
    EXPECT_TRUE(validate(build_config_cpa(k, 0.9, lib(), 4, 2e-15)).empty()) << to_string(k);
  }
  EXPECT_TRUE(validate(inverter_pair()).empty());
}

TEST(Validate, MultipleDrivers) {
  Circuit c = inverter_pair();
  const auto rail = SignalEncoding::binary(0.9);
  c.add_instance("i2", "inv", lib().make("inv", 0.9, rail), {c.port("a").net}, {c.port("y").net});
  const auto ds = validate(c);
  EXPECT_TRUE(has_kind(ds, DiagnosticKind::MultipleDrivers));
  EXPECT_STREQ(to_string(DiagnosticKind::MultipleDrivers), "multiple-driver");
  EXPECT_THROW(require_valid(c), Error);
}

TEST(Validate, UndrivenNet) {
  Circuit c = inverter_pair();
  const auto rail = SignalEncoding::binary(0.9);
  const NetId floating = c.add_net("floating", rail);
  const NetId z = c.add_net("z", rail);
  c.add_instance("i3", "inv", lib().make("inv", 0.9, rail), {floating}, {z});
  EXPECT_TRUE(has_kind(validate(c), DiagnosticKind::UndrivenNet));
}

TEST(Validate, CarryRailMismatchBetweenVariants) {
  const Circuit q1 = build_qfa(QfaVariant::QFA1, 0.9, lib());
  const Circuit q2 = build_qfa(QfaVariant::QFA2, 0.9, lib());
  const auto quat = SignalEncoding::quaternary(0.9);
  Circuit c("mixed");
  const NetId a0 = c.add_input("A0", quat), b0 = c.add_input("B0", quat);
  const NetId a1 = c.add_input("A1", quat), b1 = c.add_input("B1", quat);
  const NetId c0 = c.add_input("C0", SignalEncoding::binary(0.3));
  const NetId s0 = c.add_net("S0", quat), s1 = c.add_net("S1", quat);
  const NetId c1 = c.add_net("C1", SignalEncoding::binary(0.3));
  const NetId c2 = c.add_net("C2", SignalEncoding::binary(0.9));
  c.instantiate(q1, "u0", {{"A", a0}, {"B", b0}, {"Cin", c0}, {"Sum", s0}, {"Cout", c1}});
  c.instantiate(q2, "u1", {{"A", a1}, {"B", b1}, {"Cin", c1}, {"Sum", s1}, {"Cout", c2}});
  c.add_output("S0", s0);
  c.add_output("S1", s1);
  c.add_output("C2", c2);
  const auto ds = validate(c);
  ASSERT_TRUE(has_kind(ds, DiagnosticKind::EncodingMismatch));
  EXPECT_STREQ(to_string(DiagnosticKind::EncodingMismatch), "encoding-mismatch");
}

TEST(Validate, CombinationalCycle) {
  const auto rail = SignalEncoding::binary(0.9);
  Circuit c("loop");
  const NetId a = c.add_input("a", rail);
  const NetId x = c.add_net("x", rail);
  const NetId y = c.add_net("y", rail);
  c.add_instance("n0", "nand2", lib().make("nand2", 0.9, rail), {a, y}, {x});
  c.add_instance("n1", "inv", lib().make("inv", 0.9, rail), {x}, {y});
  c.add_output("y", y);
  EXPECT_TRUE(has_kind(validate(c), DiagnosticKind::CombinationalCycle));
}

TEST(Circuit, DuplicatesRejected) {
  Circuit c = inverter_pair();
  EXPECT_THROW(c.add_net("m", SignalEncoding::binary(0.9)), Error);
  EXPECT_THROW(c.add_output("y", c.port("y").net), Error);
  EXPECT_THROW(c.port("nope"), Error);
  EXPECT_THROW(c.add_instance("bad", "inv", lib().make("inv", 0.9, SignalEncoding::binary(0.9)), {0, 1}, {2}),
               Error);
}

TEST(Connectivity, LoadCapacitance) {
  const Circuit c = inverter_pair();
  const Connectivity conn = connectivity(c);
  EXPECT_NEAR(conn.load_cap[static_cast<std::size_t>(*c.find_net("m"))], 0.2e-15, 1e-30);
  EXPECT_NEAR(conn.load_cap[static_cast<std::size_t>(*c.find_net("y"))], 1e-15, 1e-30);
  EXPECT_EQ(conn.topo_order, (std::vector<InstanceId>{0, 1}));
}

TEST(Area, CellInventories) {
  const AreaReport q2 = area_report(build_qfa(QfaVariant::QFA2, 0.9, lib()));
  EXPECT_EQ(q2.transistors, 140);
  EXPECT_NEAR(q2.sigma_di_nm, 154.21, 1e-9);
  EXPECT_EQ(area_report(build_bfa(BfaVariant::BFA2, 0.9, lib())).transistors, 14);
  EXPECT_EQ(area_report(build_bfa(BfaVariant::BFA1, 0.9, lib())).transistors, 28);
  double pct = 0;
  for (const auto& s : q2.breakdown) pct += s.percent;
  EXPECT_NEAR(pct, 100.0, 1e-9);
}

TEST(Area, MuxShareOfQuaternaryCell) {
  const AreaReport q2 = area_report(build_qfa(QfaVariant::QFA2, 0.9, lib()));
  double mux = 0;
  for (const auto& s : q2.breakdown)
    if (s.group == "MUX4" || s.group == "MUX2") mux += s.percent;
  EXPECT_GT(mux, 35.0);
  EXPECT_LT(mux, 50.0);
}

TEST(Area, AdditiveOverRippleLength) {
  for (CellKind k : {CellKind::QFA1, CellKind::QFA2, CellKind::BFA1, CellKind::BFA2}) {
    const AreaReport one = area_report(build_adder_cell(k, 0.9, lib()));
    for (int n : {2, 4, 7}) {
      const AreaReport many = area_report(build_cpa(build_adder_cell(k, 0.9, lib()), n, 2e-15));
      EXPECT_NEAR(many.sigma_di_nm, n * one.sigma_di_nm, 1e-9) << to_string(k) << " n=" << n;
      EXPECT_EQ(many.transistors, n * one.transistors);
    }
  }
}

TEST(Area, InvariantUnderInstanceOrder) {
  const Circuit c = build_cpa(build_qfa(QfaVariant::QFA2, 0.9, lib()), 3, 0);
  nlohmann::json j = netlist_to_json(c);
  std::mt19937 rng(3);
  auto& insts = j["instances"];
  std::shuffle(insts.begin(), insts.end(), rng);
  for (std::size_t i = 0; i < insts.size(); ++i) insts[i]["id"] = i;
  const Circuit shuffled = netlist_from_json(j);
  EXPECT_NEAR(area_report(shuffled).sigma_di_nm, area_report(c).sigma_di_nm, 1e-9);
  EXPECT_EQ(area_report(shuffled).transistors, area_report(c).transistors);
}

TEST(NetlistJson, RoundTripIsLossless) {
  std::vector<Circuit> circuits{inverter_pair()};
  for (CellKind k : {CellKind::QFA1, CellKind::QFA2, CellKind::BFA1, CellKind::BFA2, CellKind::BFA1x2,
                     CellKind::BFA2x2}) {
    circuits.push_back(build_digit(k, 0.45, lib(), 2e-15));
    circuits.push_back(build_config_cpa(k, 0.9, lib(), 3, 1.7e-15));
  }
  for (const Circuit& c : circuits) {
    const nlohmann::json j = netlist_to_json(c);
    const Circuit back = netlist_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_TRUE(back == c) << c.name();
    EXPECT_EQ(netlist_to_json(back).dump(), j.dump()) << c.name();
  }
}

TEST(NetlistJson, RejectsBrokenDocuments) {
  nlohmann::json j = netlist_to_json(inverter_pair());
  nlohmann::json missing = j;
  missing.erase("nets");
  EXPECT_THROW(netlist_from_json(missing), Error);
  nlohmann::json bad_enc = j;
  bad_enc["nets"][0]["encoding"] = 99;
  EXPECT_THROW(netlist_from_json(bad_enc), Error);
  nlohmann::json bad_dir = j;
  bad_dir["ports"][0]["direction"] = "inout";
  EXPECT_THROW(netlist_from_json(bad_dir), Error);
}

}  // namespace
}  // namespace quadd
