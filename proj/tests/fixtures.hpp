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

// Reference data and stand-alone oracles for the tests. Nothing here calls
// into the library's own arithmetic or delay code.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace quadd::testing {

struct TruthRow {
  int a, b, cin, sum, cout;
};

// Quaternary full adder, all 32 rows.
inline constexpr std::array<TruthRow, 32> kQuaternaryTruthRows{{
    {0, 0, 0, 0, 0}, {0, 1, 0, 1, 0}, {0, 2, 0, 2, 0}, {0, 3, 0, 3, 0},
    {1, 0, 0, 1, 0}, {1, 1, 0, 2, 0}, {1, 2, 0, 3, 0}, {1, 3, 0, 0, 1},
    {2, 0, 0, 2, 0}, {2, 1, 0, 3, 0}, {2, 2, 0, 0, 1}, {2, 3, 0, 1, 1},
    {3, 0, 0, 3, 0}, {3, 1, 0, 0, 1}, {3, 2, 0, 1, 1}, {3, 3, 0, 2, 1},
    {0, 0, 1, 1, 0}, {0, 1, 1, 2, 0}, {0, 2, 1, 3, 0}, {0, 3, 1, 0, 1},
    {1, 0, 1, 2, 0}, {1, 1, 1, 3, 0}, {1, 2, 1, 0, 1}, {1, 3, 1, 1, 1},
    {2, 0, 1, 3, 0}, {2, 1, 1, 0, 1}, {2, 2, 1, 1, 1}, {2, 3, 1, 2, 1},
    {3, 0, 1, 0, 1}, {3, 1, 1, 1, 1}, {3, 2, 1, 2, 1}, {3, 3, 1, 3, 1},
}};

// Binary full adder, all 8 rows.
inline constexpr std::array<TruthRow, 8> kBinaryTruthRows{{
    {0, 0, 0, 0, 0}, {0, 0, 1, 1, 0}, {0, 1, 0, 1, 0}, {0, 1, 1, 0, 1},
    {1, 0, 0, 1, 0}, {1, 0, 1, 0, 1}, {1, 1, 0, 0, 1}, {1, 1, 1, 1, 1},
}};

// CNTFET diameters by chirality, nm.
struct DiameterRow {
  int n;
  double d;
};
inline constexpr std::array<DiameterRow, 6> kDiameterRows{{
    {8, 0.626}, {10, 0.783}, {13, 1.017}, {19, 1.487}, {29, 2.270}, {37, 2.896},
}};

namespace oracle {

struct WideSum {
  std::vector<int> digits;  // least significant first
  int carry;
};

/// Adds through the machine integer and re-expands the result in `radix`.
inline WideSum add(int radix, std::uint64_t a, std::uint64_t b, int cin, std::size_t n) {
  std::uint64_t total = a + b + static_cast<std::uint64_t>(cin);
  WideSum out{std::vector<int>(n), 0};
  for (auto& d : out.digits) {
    d = static_cast<int>(total % static_cast<std::uint64_t>(radix));
    total /= static_cast<std::uint64_t>(radix);
  }
  out.carry = static_cast<int>(total);
  return out;
}

inline std::vector<int> expand(int radix, std::uint64_t v, std::size_t n) {
  std::vector<int> d(n);
  for (auto& x : d) {
    x = static_cast<int>(v % static_cast<std::uint64_t>(radix));
    v /= static_cast<std::uint64_t>(radix);
  }
  return d;
}

/// t_int + R_ref (0.9 - Vth) / (Vdd - Vth) C, in ps.
inline double rc_delay_ps(double vdd, double load_f, double vth = 0.2, double r_ref = 10e3, double t_int = 1e-12) {
  return (t_int + r_ref * (0.9 - vth) / (vdd - vth) * load_f) * 1e12;
}

inline double half_cv2(double c, double dv) { return 0.5 * c * dv * dv; }

}  // namespace oracle

}  // namespace quadd::testing
