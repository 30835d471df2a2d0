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

// Oracle checks: apply input vectors, let the circuit settle, and compare
// the sampled outputs against integer addition.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "quadd/builders.hpp"
#include "quadd/engine.hpp"
#include "quadd/levels.hpp"
#include "quadd/timing.hpp"

namespace quadd {

struct VectorCase {
  std::string label;
  std::map<std::string, LogicLevel> inputs;
  std::map<std::string, LogicLevel> expected;
};

struct Mismatch {
  std::string label;
  std::string port;
  LogicLevel expected;
  LogicLevel got;
};

struct VerifyResult {
  std::size_t vectors = 0;
  std::vector<Mismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Settling interval in whole ps: longer than every input->output arrival.
inline double settle_step_ps(const Circuit& c) {
  const TimingReport r = sta(c, c.port_names(PortDirection::Input), c.port_names(PortDirection::Output));
  return std::floor(r.worst_arrival_ps()) + 1.0;
}

/// Applies `cases` back to back, `chunk` vectors per simulation. The first
/// vector of each chunk is the settle state; outputs are sampled one tick
/// before the next vector.
inline VerifyResult check_vectors(const Circuit& c, const std::vector<VectorCase>& cases, std::size_t chunk = 256) {
  if (chunk == 0) throw Error(ErrorKind::Domain, "chunk must be >= 1");
  VerifyResult res;
  if (cases.empty()) return res;
  const double step = settle_step_ps(c);
  const Tick step_ticks = to_ticks(step * 1e-12);

  for (std::size_t begin = 0; begin < cases.size(); begin += chunk) {
    const std::size_t end = std::min(cases.size(), begin + chunk);
    Stimulus s;
    s.initial = cases[begin].inputs;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const double t = step * static_cast<double>(i - begin);
      for (const auto& [port, level] : cases[i].inputs)
        if (cases[i - 1].inputs.at(port) != level) s.events.push_back({t, port, level});
    }
    s.duration_ps = step * static_cast<double>(end - begin);
    const Trace tr = simulate(c, s);
    for (std::size_t i = begin; i < end; ++i) {
      const Tick sample = step_ticks * static_cast<Tick>(i - begin + 1) - 1;
      for (const auto& [port, want] : cases[i].expected) {
        const LogicLevel got = tr.level_at(tr.port_net(port), sample);
        if (got != want) res.mismatches.push_back({cases[i].label, port, want, got});
      }
      ++res.vectors;
    }
  }
  return res;
}

inline VectorCase qfa_case(int a, int b, int cin) {
  const DigitSum r = qfa_oracle(a, b, cin);
  VectorCase v;
  v.label = "A=" + std::to_string(a) + " B=" + std::to_string(b) + " Cin=" + std::to_string(cin);
  v.inputs = {{"A", level_from_index(a)}, {"B", level_from_index(b)}, {"Cin", level_from_index(cin)}};
  v.expected = {{"Sum", level_from_index(r.sum)}, {"Cout", level_from_index(r.cout)}};
  return v;
}

inline VectorCase bfa_case(int a, int b, int cin) {
  const DigitSum r = bfa_oracle(a, b, cin);
  VectorCase v;
  v.label = "A=" + std::to_string(a) + " B=" + std::to_string(b) + " Cin=" + std::to_string(cin);
  v.inputs = {{"A", level_from_index(a)}, {"B", level_from_index(b)}, {"Cin", level_from_index(cin)}};
  v.expected = {{"Sum", level_from_index(r.sum)}, {"Cout", level_from_index(r.cout)}};
  return v;
}

/// Ripple-adder vector over ports A<i>, B<i>, C0, S<i>, C<n>.
inline VectorCase cpa_case(const DigitVector& a, const DigitVector& b, int cin) {
  const VectorSum r = cpa_oracle(a, b, cin);
  const std::size_t n = a.size();
  VectorCase v;
  v.label = "A=" + std::to_string(a.value()) + " B=" + std::to_string(b.value()) + " C0=" + std::to_string(cin);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string is = std::to_string(i);
    v.inputs["A" + is] = level_from_index(a[i]);
    v.inputs["B" + is] = level_from_index(b[i]);
    v.expected["S" + is] = level_from_index(r.sum[i]);
  }
  v.inputs["C0"] = level_from_index(cin);
  v.expected["C" + std::to_string(n)] = level_from_index(r.cout);
  return v;
}

/// Every row of the cell's truth table: 32 for quaternary cells and 2-bit
/// slices (digits split into bits), 8 for single binary cells.
inline std::vector<VectorCase> truth_table_cases(CellKind kind) {
  std::vector<VectorCase> out;
  const int radix = is_quaternary(kind) || is_slice(kind) ? 4 : 2;
  for (int a = 0; a < radix; ++a)
    for (int b = 0; b < radix; ++b)
      for (int cin = 0; cin <= 1; ++cin) {
        if (is_quaternary(kind)) out.push_back(qfa_case(a, b, cin));
        else if (!is_slice(kind)) out.push_back(bfa_case(a, b, cin));
        else {
          VectorCase v = cpa_case(DigitVector::from_value(2, static_cast<std::uint64_t>(a), 2),
                                  DigitVector::from_value(2, static_cast<std::uint64_t>(b), 2), cin);
          v.label = "A=" + std::to_string(a) + " B=" + std::to_string(b) + " Cin=" + std::to_string(cin);
          out.push_back(std::move(v));
        }
      }
  return out;
}

/// Truth table of one cell, each row settled from all-X in its own run.
inline VerifyResult verify_cell(CellKind kind, double vdd, const CellLibrary& lib) {
  return check_vectors(build_digit(kind, vdd, lib, 0.0), truth_table_cases(kind), 1);
}

struct CpaVerifyOptions {
  std::size_t random_vectors = 10000;
  std::uint64_t seed = 1;
  std::uint64_t exhaustive_limit = 1u << 17;  // vector count below which every input is tried
};

/// Ripple adder of `n_digits` digits built from `kind` (2N bits for slice kinds)
/// against cpa_oracle: exhaustive when small, seeded random otherwise.
inline VerifyResult verify_cpa(CellKind kind, int n_digits, double vdd, const CellLibrary& lib,
                               const CpaVerifyOptions& opt = {}) {
  const Circuit c = build_config_cpa(kind, vdd, lib, n_digits, 0.0);
  const int radix = is_quaternary(kind) ? 4 : 2;
  const auto digits = static_cast<std::size_t>(is_slice(kind) ? 2 * n_digits : n_digits);
  const double bits = static_cast<double>(digits) * std::log2(radix);
  if (bits > 32) throw Error(ErrorKind::Domain, "operands wider than 32 bits are not supported");
  const std::uint64_t span = std::uint64_t{1} << static_cast<int>(bits);

  std::vector<VectorCase> cases;
  if (bits * 2 + 1 <= std::log2(static_cast<double>(opt.exhaustive_limit))) {
    for (std::uint64_t a = 0; a < span; ++a)
      for (std::uint64_t b = 0; b < span; ++b)
        for (int cin = 0; cin <= 1; ++cin)
          cases.push_back(cpa_case(DigitVector::from_value(radix, a, digits), DigitVector::from_value(radix, b, digits), cin));
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::uint64_t> operand(0, span - 1);
    std::uniform_int_distribution<int> carry(0, 1);
    for (std::size_t i = 0; i < opt.random_vectors; ++i) {
      const std::uint64_t a = operand(rng), b = operand(rng);
      cases.push_back(cpa_case(DigitVector::from_value(radix, a, digits), DigitVector::from_value(radix, b, digits),
                               carry(rng)));
    }
  }
  return check_vectors(c, cases);
}

}  // namespace quadd
