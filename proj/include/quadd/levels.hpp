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

// Logical values, their voltage encodings, and the arithmetic oracles that
// every generated circuit is checked against.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "quadd/errors.hpp"

namespace quadd {

enum class LogicLevel : std::uint8_t { L0 = 0, L1 = 1, L2 = 2, L3 = 3, X = 4 };

inline constexpr bool is_known(LogicLevel l) { return l != LogicLevel::X; }

inline constexpr int level_index(LogicLevel l) { return static_cast<int>(l); }

inline LogicLevel level_from_index(int i) {
  if (i < 0 || i > 3) throw Error(ErrorKind::Domain, "level index " + std::to_string(i) + " out of range");
  return static_cast<LogicLevel>(i);
}

inline std::string to_string(LogicLevel l) {
  return is_known(l) ? std::to_string(level_index(l)) : std::string("X");
}

/// Parses "0".."3" or "X"/"x".
inline LogicLevel parse_level(const std::string& s) {
  if (s == "X" || s == "x") return LogicLevel::X;
  if (s.size() == 1 && s[0] >= '0' && s[0] <= '3') return static_cast<LogicLevel>(s[0] - '0');
  throw Error(ErrorKind::Domain, "bad logic level '" + s + "'");
}

enum class Radix : std::uint8_t { Binary = 2, Quaternary = 4 };

inline constexpr int radix_value(Radix r) { return static_cast<int>(r); }

/// Physical voltages for each logical level of a net.
///
/// Quaternary nets sit at thirds of the supply; binary carry rails are either
/// {0, Vdd/3} or {0, Vdd}.  Two encodings are compatible iff they have the same
/// radix and identical level voltages; the name is only a label.
class SignalEncoding {
 public:
  SignalEncoding(Radix radix, std::vector<double> level_voltages, std::string name)
      : radix_(radix), voltages_(std::move(level_voltages)), name_(std::move(name)) {
    if (voltages_.size() != static_cast<std::size_t>(radix_value(radix_)))
      throw Error(ErrorKind::Domain, "encoding '" + name_ + "' needs " +
                                         std::to_string(radix_value(radix_)) + " level voltages");
    if (voltages_.front() != 0.0)
      throw Error(ErrorKind::Domain, "encoding '" + name_ + "' must start at 0 V");
    for (std::size_t i = 1; i < voltages_.size(); ++i)
      if (!(voltages_[i] > voltages_[i - 1]))
        throw Error(ErrorKind::Domain, "encoding '" + name_ + "' voltages not strictly increasing");
  }

  static SignalEncoding quaternary(double vdd) {
    return SignalEncoding(Radix::Quaternary, {0.0, vdd / 3.0, 2.0 * vdd / 3.0, vdd},
                          "quaternary@" + format_volts(vdd));
  }

  /// Binary rail {0, high}.
  static SignalEncoding binary(double high) {
    return SignalEncoding(Radix::Binary, {0.0, high}, "binary@" + format_volts(high));
  }

  Radix radix() const noexcept { return radix_; }
  const std::vector<double>& level_voltages() const noexcept { return voltages_; }
  const std::string& name() const noexcept { return name_; }
  double high() const noexcept { return voltages_.back(); }

  /// Smallest gap between adjacent nominal voltages.
  double spacing() const {
    double s = voltages_[1] - voltages_[0];
    for (std::size_t i = 2; i < voltages_.size(); ++i) s = std::min(s, voltages_[i] - voltages_[i - 1]);
    return s;
  }

  bool admits(LogicLevel l) const { return is_known(l) && level_index(l) < radix_value(radix_); }

  friend bool operator==(const SignalEncoding& a, const SignalEncoding& b) {
    return a.radix_ == b.radix_ && a.voltages_ == b.voltages_;
  }

 private:
  static std::string format_volts(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%gV", v);
    return buf;
  }

  Radix radix_;
  std::vector<double> voltages_;
  std::string name_;
};

inline double to_voltage(LogicLevel level, const SignalEncoding& enc) {
  if (!enc.admits(level))
    throw Error(ErrorKind::EncodingMismatch,
                "level " + to_string(level) + " not representable in " + enc.name());
  return enc.level_voltages()[static_cast<std::size_t>(level_index(level))];
}

inline constexpr double kDefaultGuard = 0.33;

/// Nearest nominal level if `v` lies within `guard` x spacing of it, else X.
inline LogicLevel from_voltage(double v, const SignalEncoding& enc, double guard = kDefaultGuard) {
  if (!(guard > 0.0 && guard < 0.5)) throw Error(ErrorKind::Domain, "guard must be in (0, 0.5)");
  const auto& volts = enc.level_voltages();
  std::size_t best = 0;
  for (std::size_t i = 1; i < volts.size(); ++i)
    if (std::abs(v - volts[i]) < std::abs(v - volts[best])) best = i;
  if (std::abs(v - volts[best]) <= guard * enc.spacing()) return static_cast<LogicLevel>(best);
  return LogicLevel::X;
}

/// Digits of a radix-2 or radix-4 number, least-significant first.
class DigitVector {
 public:
  DigitVector(int radix, std::vector<int> digits) : radix_(radix), digits_(std::move(digits)) {
    if (radix_ != 2 && radix_ != 4) throw Error(ErrorKind::Domain, "radix must be 2 or 4");
    for (int d : digits_)
      if (d < 0 || d >= radix_)
        throw Error(ErrorKind::Domain, "digit " + std::to_string(d) + " outside radix " + std::to_string(radix_));
  }

  /// Expansion of `value` into `n` digits (value must fit).
  static DigitVector from_value(int radix, std::uint64_t value, std::size_t n) {
    std::vector<int> digits(n);
    for (auto& d : digits) {
      d = static_cast<int>(value % static_cast<std::uint64_t>(radix));
      value /= static_cast<std::uint64_t>(radix);
    }
    if (value != 0) throw Error(ErrorKind::Domain, "value does not fit in " + std::to_string(n) + " digits");
    return DigitVector(radix, std::move(digits));
  }

  int radix() const noexcept { return radix_; }
  std::size_t size() const noexcept { return digits_.size(); }
  const std::vector<int>& digits() const noexcept { return digits_; }
  int operator[](std::size_t i) const { return digits_.at(i); }

  std::uint64_t value() const {
    if (static_cast<double>(digits_.size()) * std::log2(radix_) > 63)
      throw Error(ErrorKind::Domain, "digit vector too long for 64-bit valuation");
    std::uint64_t v = 0;
    for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) v = v * static_cast<std::uint64_t>(radix_) + static_cast<std::uint64_t>(*it);
    return v;
  }

  friend bool operator==(const DigitVector&, const DigitVector&) = default;

 private:
  int radix_;
  std::vector<int> digits_;
};

struct DigitSum {
  int sum;
  int cout;
  friend bool operator==(const DigitSum&, const DigitSum&) = default;
};

struct VectorSum {
  DigitVector sum;
  int cout;
};

namespace detail {
inline void require_range(int v, int hi, const char* what) {
  if (v < 0 || v > hi) throw Error(ErrorKind::Domain, std::string(what) + " = " + std::to_string(v) + " out of range");
}
}  // namespace detail

/// One quaternary digit plus a binary carry.
inline DigitSum qfa_oracle(int a, int b, int cin) {
  detail::require_range(a, 3, "a");
  detail::require_range(b, 3, "b");
  detail::require_range(cin, 1, "cin");
  const int total = a + b + cin;
  return {total % 4, total >= 4 ? 1 : 0};
}

inline DigitSum bfa_oracle(int a, int b, int cin) {
  detail::require_range(a, 1, "a");
  detail::require_range(b, 1, "b");
  detail::require_range(cin, 1, "cin");
  return {a ^ b ^ cin, (a & b) | (a & cin) | (b & cin)};
}

/// Digit-serial ripple addition of two equal-length vectors.
inline VectorSum cpa_oracle(const DigitVector& a, const DigitVector& b, int cin) {
  if (a.radix() != b.radix()) throw Error(ErrorKind::Domain, "operand radix mismatch");
  if (a.size() != b.size()) throw Error(ErrorKind::Domain, "operand length mismatch");
  detail::require_range(cin, 1, "cin");
  std::vector<int> out(a.size());
  int carry = cin;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const DigitSum step = a.radix() == 4 ? qfa_oracle(a[i], b[i], carry) : bfa_oracle(a[i], b[i], carry);
    out[i] = step.sum;
    carry = step.cout;
  }
  return {DigitVector(a.radix(), std::move(out)), carry};
}

}  // namespace quadd
