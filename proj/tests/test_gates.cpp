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

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "gtest/gtest.h"
#include "quadd/gates.hpp"

namespace quadd {
namespace {

using L = LogicLevel;
namespace oracle = testing::oracle;

std::vector<L> eval(GateKind kind, int k, std::vector<L> in) { return eval_primitive(kind, k, in); }

TEST(Diameter, TableToThreeDecimals) {
  for (const auto& row : testing::kDiameterRows) {
    EXPECT_NEAR(diameter_nm(row.n), row.d, 5e-4) << "n=" << row.n;
    EXPECT_NEAR(std::round(diameter_nm(row.n) * 1000) / 1000, row.d, 1e-9) << "n=" << row.n;
  }
}

TEST(Diameter, LinearApproximation) {
  for (const auto& row : testing::kDiameterRows) EXPECT_NEAR(0.0783 * row.n, row.d, 0.002) << "n=" << row.n;
}

TEST(Diameter, UnknownChirality) {
  EXPECT_THROW(diameter_nm(11), Error);
  try {
    diameter_nm(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownChirality);
  }
}

TEST(Inventory, AreaIsSumOfDiameters) {
  const TransistorInventory inv{{{DeviceType::N, 10, 3}, {DeviceType::P, 37, 2}}};
  EXPECT_EQ(inv.total_count(), 5);
  EXPECT_NEAR(inventory_area(inv), 3 * 0.783 + 2 * 2.896, 1e-12);
  const TransistorInventory both = inv + complementary(19, 1);
  EXPECT_EQ(both.total_count(), 7);
  EXPECT_NEAR(inventory_area(both), inventory_area(inv) + 2 * 1.487, 1e-12);
}

TEST(Eval, ThresholdDetector) {
  for (int k = 1; k <= 3; ++k)
    for (int v = 0; v < 4; ++v) {
      const auto out = eval(GateKind::ThresholdDetector, k, {level_from_index(v)});
      EXPECT_EQ(out[0], v < k ? L::L1 : L::L0);
      EXPECT_EQ(out[1], v < k ? L::L0 : L::L1);
    }
  EXPECT_EQ(eval(GateKind::ThresholdDetector, 2, {L::X})[0], L::X);
}

TEST(Eval, Successor) {
  for (int k = 1; k <= 3; ++k)
    for (int v = 0; v < 4; ++v)
      EXPECT_EQ(eval(GateKind::Succ, k, {level_from_index(v)})[0], level_from_index((v + k) % 4));
  EXPECT_THROW(eval(GateKind::Succ, 4, {L::L0}), Error);
}

TEST(Eval, MuxSelects) {
  const std::vector<L> data{L::L3, L::L2, L::L1, L::L0};
  for (int s = 0; s < 4; ++s) {
    std::vector<L> in = data;
    in.push_back(level_from_index(s));
    EXPECT_EQ(eval(GateKind::Mux4, 0, in)[0], data[static_cast<std::size_t>(s)]);
  }
  EXPECT_EQ(eval(GateKind::Mux2, 0, {L::L2, L::L3, L::L1})[0], L::L3);
  EXPECT_EQ(eval(GateKind::Mux2, 0, {L::L2, L::L2, L::X})[0], L::L2);
  EXPECT_EQ(eval(GateKind::Mux2, 0, {L::L2, L::L3, L::X})[0], L::X);
}

TEST(Eval, BinaryPinRejectsQuaternaryLevel) {
  try {
    eval(GateKind::Mux2, 0, {L::L0, L::L1, L::L2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EncodingMismatch);
  }
  EXPECT_THROW(eval(GateKind::Inv, 0, {L::L3}), Error);
}

TEST(Eval, ControllingValuesOverrideX) {
  EXPECT_EQ(eval(GateKind::Nand, 2, {L::L0, L::X})[0], L::L1);
  EXPECT_EQ(eval(GateKind::Nand, 2, {L::L1, L::X})[0], L::X);
  EXPECT_EQ(eval(GateKind::Nor, 3, {L::X, L::L1, L::X})[0], L::L0);
  EXPECT_EQ(eval(GateKind::Maj3, 0, {L::L1, L::L1, L::X})[0], L::L1);
  EXPECT_EQ(eval(GateKind::Maj3, 0, {L::L1, L::L0, L::X})[0], L::X);
}

TEST(Eval, BooleanGatesExhaustive) {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const L la = level_from_index(a), lb = level_from_index(b);
      EXPECT_EQ(eval(GateKind::Nand, 2, {la, lb})[0], level_from_index(!(a && b)));
      EXPECT_EQ(eval(GateKind::Nor, 2, {la, lb})[0], level_from_index(!(a || b)));
      const auto x = eval(GateKind::XorTg, 0, {la, lb});
      EXPECT_EQ(x[0], level_from_index(a ^ b));
      EXPECT_EQ(x[1], level_from_index(!(a ^ b)));
      for (int c = 0; c < 2; ++c) {
        const L lc = level_from_index(c);
        EXPECT_EQ(eval(GateKind::Maj3, 0, {la, lb, lc})[0], level_from_index(a + b + c >= 2));
        EXPECT_EQ(eval(GateKind::Nand, 3, {la, lb, lc})[0], level_from_index(!(a && b && c)));
        EXPECT_EQ(eval(GateKind::Nor, 3, {la, lb, lc})[0], level_from_index(!(a || b || c)));
      }
    }
}

TEST(Eval, WrongInputCount) { EXPECT_THROW(eval(GateKind::Inv, 0, {L::L0, L::L1}), Error); }

TEST(GateKindNames, RoundTrip) {
  for (GateKind k : kAllGateKinds) EXPECT_EQ(parse_gate_kind(to_string(k)), k);
  EXPECT_THROW(parse_gate_kind("FLIPFLOP"), Error);
}

TEST(Delay, InverterAtReferenceSupply) {
  ElectricalParams p;
  EXPECT_NEAR(propagation_delay(p, 2e-15) * 1e12, oracle::rc_delay_ps(0.9, 2e-15), 1e-9);
  EXPECT_NEAR(propagation_delay(p, 2e-15) * 1e12, 21.0, 1e-9);
}

TEST(Delay, InverterAtThirdSupply) {
  ElectricalParams p;
  p.supply_voltage = 0.3;
  EXPECT_NEAR(effective_resistance(p), 70e3, 1e-6);
  EXPECT_NEAR(propagation_delay(p, 2e-15) * 1e12, oracle::rc_delay_ps(0.3, 2e-15), 1e-9);
  EXPECT_NEAR(propagation_delay(p, 2e-15) * 1e12, 141.0, 1e-9);
}

TEST(Delay, NonFunctionalBelowThreshold) {
  ElectricalParams p;
  p.supply_voltage = 0.2;
  try {
    propagation_delay(p, 1e-15);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFunctionalGate);
  }
}

TEST(Delay, MonotoneInLoadAndSupply) {
  ElectricalParams p;
  double prev = 0;
  for (double c : {0.0, 0.2e-15, 1e-15, 2e-15, 4e-15}) {
    const double d = propagation_delay(p, c);
    EXPECT_GE(d, p.intrinsic_delay);
    EXPECT_GT(d, prev);
    prev = d;
  }
  ElectricalParams low = p;
  low.supply_voltage = 0.45;
  EXPECT_GT(propagation_delay(low, 1e-15), propagation_delay(p, 1e-15));
  EXPECT_THROW(propagation_delay(p, -1e-15), Error);
}

TEST(Delay, QuantizedToTicks) {
  GatePrimitive g;
  EXPECT_EQ(propagation_ticks(g, 2e-15), 210);
  g.params.intrinsic_delay = 1e-16;
  EXPECT_EQ(propagation_ticks(g, 0.0), 1);
  EXPECT_DOUBLE_EQ(ticks_to_ps(210), 21.0);
}

TEST(Energy, HalfCV2) {
  EXPECT_NEAR(switching_energy(2e-15, 0.0, 0.9), oracle::half_cv2(2e-15, 0.9), 1e-30);
  EXPECT_NEAR(switching_energy(2e-15, 0.9, 0.0), 0.81e-15, 1e-27);
  EXPECT_DOUBLE_EQ(switching_energy(2e-15, 0.3, 0.3), 0.0);
  EXPECT_NEAR(switching_energy(2e-15, 0.0, 0.45) / switching_energy(2e-15, 0.0, 0.9), 0.25, 1e-12);
}

}  // namespace
}  // namespace quadd
