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

#include "fixtures.hpp"
#include "gtest/gtest.h"
#include "quadd/builders.hpp"
#include "quadd/verify.hpp"

namespace quadd {
namespace {

const CellLibrary& lib() {
  static const CellLibrary l = CellLibrary::defaults();
  return l;
}

const SignalEncoding& port_encoding(const Circuit& c, const std::string& port) { return c.net(c.port(port).net).encoding; }

int count_kind(const Circuit& c, GateKind k) {
  return static_cast<int>(std::count_if(c.instances().begin(), c.instances().end(),
                                        [k](const Instance& i) { return i.prim.kind == k; }));
}

TEST(Qfa, PortEncodings) {
  const Circuit q1 = build_qfa(QfaVariant::QFA1, 0.9, lib());
  const Circuit q2 = build_qfa(QfaVariant::QFA2, 0.9, lib());
  EXPECT_EQ(port_encoding(q1, "Cout"), SignalEncoding::binary(0.3));
  EXPECT_EQ(port_encoding(q1, "Cin"), SignalEncoding::binary(0.3));
  EXPECT_EQ(port_encoding(q2, "Cout"), SignalEncoding::binary(0.9));
  EXPECT_EQ(port_encoding(q2, "A"), SignalEncoding::quaternary(0.9));
  EXPECT_EQ(port_encoding(q2, "Sum"), SignalEncoding::quaternary(0.9));
}

TEST(Qfa, Structure) {
  for (QfaVariant v : {QfaVariant::QFA1, QfaVariant::QFA2}) {
    const Circuit c = build_qfa(v, 0.9, lib());
    EXPECT_EQ(count_kind(c, GateKind::ThresholdDetector), 3);
    EXPECT_EQ(count_kind(c, GateKind::Succ), 3);
    EXPECT_EQ(count_kind(c, GateKind::Mux4), 4);
    EXPECT_EQ(count_kind(c, GateKind::Mux2), 2);
    EXPECT_EQ(count_kind(c, GateKind::Inv), 1);
    EXPECT_EQ(c.metadata().at("mux4_count"), "4");
  }
}

TEST(Qfa, CarryInverterSupply) {
  for (QfaVariant v : {QfaVariant::QFA1, QfaVariant::QFA2}) {
    const Circuit c = build_qfa(v, 0.9, lib());
    for (const Instance& i : c.instances())
      if (i.prim.kind == GateKind::Inv)
        EXPECT_NEAR(i.prim.params.supply_voltage, v == QfaVariant::QFA1 ? 0.3 : 0.9, 1e-12);
  }
}

TEST(Qfa, MissingPrimitive) {
  CellLibrary partial = CellLibrary::defaults();
  partial.erase("mux2");
  try {
    build_qfa(QfaVariant::QFA2, 0.9, partial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingPrimitive);
  }
  EXPECT_THROW(build_qfa(QfaVariant::QFA2, 0.0, lib()), Error);
}

TEST(Bfa, DeclaredTransistorCounts) {
  EXPECT_EQ(area_report(build_bfa(BfaVariant::BFA1, 0.9, lib())).transistors, 28);
  EXPECT_EQ(area_report(build_bfa(BfaVariant::BFA2, 0.45, lib())).transistors, 14);
}

TEST(Cpa, ChainAndPorts) {
  const Circuit c = build_cpa(build_qfa(QfaVariant::QFA2, 0.9, lib()), 4, 2e-15);
  EXPECT_EQ(c.cells().size(), 4u);
  for (const char* p : {"A0", "A3", "B0", "B3", "C0"}) EXPECT_EQ(c.port(p).direction, PortDirection::Input);
  for (const char* p : {"S0", "S3", "C4"}) EXPECT_EQ(c.port(p).direction, PortDirection::Output);
  for (int i = 1; i <= 3; ++i) {
    const NetId carry = *c.find_net("C" + std::to_string(i));
    bool driven_by_prev = false, feeds_next = false;
    for (const Instance& inst : c.instances()) {
      for (const auto& o : inst.outputs)
        if (o.net == carry && inst.cell == "u" + std::to_string(i - 1)) driven_by_prev = true;
      for (const auto& in : inst.inputs)
        if (in.net == carry && inst.cell == "u" + std::to_string(i)) feeds_next = true;
    }
    EXPECT_TRUE(driven_by_prev && feeds_next) << "C" << i;
  }
  EXPECT_DOUBLE_EQ(c.net(c.port("S2").net).external_load, 2e-15);
  EXPECT_DOUBLE_EQ(c.net(c.port("C4").net).external_load, 2e-15);
  EXPECT_DOUBLE_EQ(c.net(*c.find_net("C2")).external_load, 0.0);
}

TEST(Cpa, SingleDigitMatchesCell) {
  for (CellKind k : {CellKind::QFA1, CellKind::QFA2, CellKind::BFA1, CellKind::BFA2}) {
    const Circuit cell = build_adder_cell(k, 0.9, lib());
    const Circuit one = build_cpa(cell, 1, 0);
    EXPECT_EQ(one.instances().size(), cell.instances().size());
    EXPECT_TRUE(verify_cpa(k, 1, 0.9, lib()).ok()) << to_string(k);
    EXPECT_EQ(verify_cpa(k, 1, 0.9, lib()).vectors, is_quaternary(k) ? 32u : 8u);
  }
}

TEST(Cpa, RejectsBadArguments) {
  EXPECT_THROW(build_cpa(build_qfa(QfaVariant::QFA2, 0.9, lib()), 0, 0), Error);
  Circuit bare("bare");
  EXPECT_THROW(build_cpa(bare, 2, 0), Error);
}

TEST(Slice, TwoChainedBinaryCells) {
  const Circuit s = build_bfa_slice(BfaVariant::BFA2, 0.9, lib());
  EXPECT_EQ(s.name(), "bfa2x2");
  EXPECT_EQ(s.cells().size(), 2u);
  EXPECT_EQ(area_report(s).transistors, 28);
}

TEST(Functional, TruthTablesFromFixtures) {
  for (CellKind k : {CellKind::QFA1, CellKind::QFA2}) {
    std::vector<VectorCase> cases;
    for (const auto& r : testing::kQuaternaryTruthRows) {
      VectorCase v;
      v.inputs = {{"A", level_from_index(r.a)}, {"B", level_from_index(r.b)}, {"Cin", level_from_index(r.cin)}};
      v.expected = {{"Sum", level_from_index(r.sum)}, {"Cout", level_from_index(r.cout)}};
      cases.push_back(v);
    }
    const VerifyResult res = check_vectors(build_adder_cell(k, 0.9, lib()), cases, 1);
    EXPECT_TRUE(res.ok()) << to_string(k);
    EXPECT_EQ(res.vectors, 32u);
  }
  for (CellKind k : {CellKind::BFA1, CellKind::BFA2}) {
    std::vector<VectorCase> cases;
    for (const auto& r : testing::kBinaryTruthRows) {
      VectorCase v;
      v.inputs = {{"A", level_from_index(r.a)}, {"B", level_from_index(r.b)}, {"Cin", level_from_index(r.cin)}};
      v.expected = {{"Sum", level_from_index(r.sum)}, {"Cout", level_from_index(r.cout)}};
      cases.push_back(v);
    }
    EXPECT_TRUE(check_vectors(build_adder_cell(k, 0.9, lib()), cases, 1).ok()) << to_string(k);
  }
}

TEST(Functional, SliceEquivalentToQuaternaryDigit) {
  for (CellKind k : {CellKind::BFA1x2, CellKind::BFA2x2}) {
    const VerifyResult r = verify_cell(k, 0.9, lib());
    EXPECT_TRUE(r.ok()) << to_string(k);
    EXPECT_EQ(r.vectors, 32u);
  }
}

TEST(Functional, LowSupplyStillAdds) {
  for (CellKind k : {CellKind::QFA2, CellKind::BFA2x2, CellKind::BFA1}) EXPECT_TRUE(verify_cell(k, 0.45, lib()).ok());
}

TEST(Functional, SequencesMatchFreshSettles) {
  const Circuit c = build_adder_cell(CellKind::QFA1, 0.9, lib());
  const auto cases = truth_table_cases(CellKind::QFA1);
  EXPECT_TRUE(check_vectors(c, cases, 7).ok());
  EXPECT_TRUE(check_vectors(c, cases).ok());
}

TEST(Functional, DetectsWrongExpectation) {
  auto cases = truth_table_cases(CellKind::QFA2);
  cases[5].expected["Sum"] = level_from_index((level_index(cases[5].expected["Sum"]) + 1) % 4);
  const VerifyResult r = check_vectors(build_adder_cell(CellKind::QFA2, 0.9, lib()), cases, 4);
  ASSERT_EQ(r.mismatches.size(), 1u);
  EXPECT_EQ(r.mismatches[0].port, "Sum");
}

TEST(Functional, RippleAddersMatchIntegerAddition) {
  CpaVerifyOptions opt;
  opt.random_vectors = 1000;
  for (CellKind k : {CellKind::QFA1, CellKind::QFA2}) {
    EXPECT_EQ(verify_cpa(k, 2, 0.9, lib()).vectors, 512u);
    EXPECT_TRUE(verify_cpa(k, 2, 0.9, lib()).ok());
    EXPECT_TRUE(verify_cpa(k, 4, 0.9, lib(), opt).ok());
    EXPECT_TRUE(verify_cpa(k, 8, 0.9, lib(), opt).ok());
  }
  for (CellKind k : {CellKind::BFA1, CellKind::BFA2}) EXPECT_TRUE(verify_cpa(k, 8, 0.9, lib(), opt).ok());
  EXPECT_TRUE(verify_cpa(CellKind::BFA2x2, 4, 0.9, lib(), opt).ok());
}

TEST(CellKindNames, RoundTrip) {
  for (CellKind k : {CellKind::QFA1, CellKind::QFA2, CellKind::BFA1, CellKind::BFA2, CellKind::BFA1x2,
                     CellKind::BFA2x2})
    EXPECT_EQ(parse_cell_kind(to_string(k)), k);
  EXPECT_THROW(parse_cell_kind("qfa3"), Error);
}

}  // namespace
}  // namespace quadd
