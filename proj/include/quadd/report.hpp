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

// Adder comparison: delays, power, PDP and area per configuration, plus the
// ripple-length scaling table.

#pragma once

#include <algorithm>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "quadd/builders.hpp"
#include "quadd/engine.hpp"
#include "quadd/library.hpp"
#include "quadd/netlist.hpp"
#include "quadd/timing.hpp"

namespace quadd {

struct AdderConfig {
  CellKind kind = CellKind::QFA2;
  double vdd = 0.9;
  double cl = 2e-15;
  int n_digits = 1;

  std::string label() const { return std::string(to_string(kind)) + "@" + detail::volts(vdd); }
};

/// "kind@vdd", e.g. "qfa2@0.9".
inline AdderConfig parse_config(const std::string& spec, double cl = 2e-15) {
  const auto at = spec.find('@');
  if (at == std::string::npos) throw Error(ErrorKind::Usage, "config '" + spec + "' is not kind@vdd");
  AdderConfig cfg;
  cfg.kind = parse_cell_kind(spec.substr(0, at));
  const std::string v = spec.substr(at + 1);
  std::size_t used = 0;
  try {
    cfg.vdd = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw Error(ErrorKind::Usage, "bad supply voltage in '" + spec + "'");
  if (!(cfg.vdd > 0)) throw Error(ErrorKind::Usage, "supply voltage must be positive in '" + spec + "'");
  cfg.cl = cl;
  return cfg;
}

/// Comma-separated list of kind@vdd.
inline std::vector<AdderConfig> parse_configs(const std::string& list, double cl = 2e-15) {
  std::vector<AdderConfig> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto comma = list.find(',', pos);
    std::string item = list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(parse_config(item, cl));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw Error(ErrorKind::Usage, "no configurations given");
  return out;
}

struct ComparisonRow {
  AdderConfig config;
  double delay_input_to_cout = 0;  // ps
  double delay_cin_to_cout = 0;    // ps
  double delay_cin_to_sum = 0;     // ps
  double power = 0;                // µW
  double pdp = 0;                  // fJ, power x worst of the three delays
  double sigma_di = 0;             // nm
  int transistor_count = 0;

  double worst_delay() const { return std::max({delay_input_to_cout, delay_cin_to_cout, delay_cin_to_sum}); }
};

namespace detail {

/// Largest delay from any transition of `src` to any of `dsts`; 0 if nothing moves.
inline double max_delay(const Trace& t, const std::string& src, const std::vector<std::string>& dsts) {
  double worst = 0;
  const std::size_t n = t.transitions(t.port_net(src));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& d : dsts)
      if (auto v = measure_delay(t, src, i, d)) worst = std::max(worst, *v);
  return worst;
}

inline ComparisonRow compare_one(const AdderConfig& cfg, const CellLibrary& lib, const StimulusOptions& opt) {
  const Circuit digit = build_digit(cfg.kind, cfg.vdd, lib, cfg.cl);
  const DigitPorts p = digit_ports(cfg.kind);

  const Trace sweep = simulate(digit, worst_case_stimulus(StimulusTarget::InputToCarry, cfg.kind, opt));
  const Trace carry = simulate(digit, worst_case_stimulus(StimulusTarget::CarryToCarry, cfg.kind, opt));

  ComparisonRow row;
  row.config = cfg;
  row.delay_input_to_cout = max_delay(sweep, p.a.front(), {p.cout});
  row.delay_cin_to_cout = max_delay(carry, p.cin, {p.cout});
  row.delay_cin_to_sum = max_delay(carry, p.cin, p.sums);
  row.power = measure_power(sweep, 0.0, ticks_to_ps(sweep.duration)) * 1e6;
  row.pdp = row.power * row.worst_delay() * 1e-3;
  const AreaReport area = area_report(digit);
  row.sigma_di = area.sigma_di_nm;
  row.transistor_count = area.transistors;
  return row;
}

}  // namespace detail

/// One row per config, in input order. Configs run on up to `threads`
/// workers; the result does not depend on the thread count.
inline std::vector<ComparisonRow> compare(const std::vector<AdderConfig>& configs, const CellLibrary& lib,
                                          unsigned threads = 1, const StimulusOptions& opt = {}) {
  std::vector<ComparisonRow> rows(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  auto work = [&](std::size_t i) {
    try {
      rows[i] = detail::compare_one(configs[i], lib, opt);
    } catch (const Error& e) {
      errors[i] = std::make_exception_ptr(Error(e.kind(), configs[i].label() + ": " + e.what()));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < configs.size(); i += threads) work(i);
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

inline nlohmann::json compare_json(const std::vector<ComparisonRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows)
    j.push_back({{"config", r.config.label()},
                 {"kind", to_string(r.config.kind)},
                 {"vdd_v", r.config.vdd},
                 {"cl_f", r.config.cl},
                 {"delay_input_to_cout_ps", r.delay_input_to_cout},
                 {"delay_cin_to_cout_ps", r.delay_cin_to_cout},
                 {"delay_cin_to_sum_ps", r.delay_cin_to_sum},
                 {"power_uw", r.power},
                 {"pdp_fj", r.pdp},
                 {"sigma_di_nm", r.sigma_di},
                 {"transistor_count", r.transistor_count}});
  return {{"rows", j}};
}

inline void write_compare_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
  os << "config,kind,vdd_v,cl_f,delay_input_to_cout_ps,delay_cin_to_cout_ps,delay_cin_to_sum_ps,power_uw,pdp_fj,"
        "sigma_di_nm,transistor_count\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.9g,%.9g,%.1f,%.1f,%.1f,%.9g,%.9g,%.6g,%d\n", r.config.label().c_str(),
                  to_string(r.config.kind), r.config.vdd, r.config.cl, r.delay_input_to_cout, r.delay_cin_to_cout,
                  r.delay_cin_to_sum, r.power, r.pdp, r.sigma_di, r.transistor_count);
    os << buf;
  }
}

// ---------------------------------------------------------------------------
// Ripple scaling
// ---------------------------------------------------------------------------

struct ScalingRow {
  int n_digits = 0;
  int cells = 0;                    // adder cells in the chain (2N for slice kinds)
  double sta_arrival = 0;           // ps, {C0, A0, B0} -> {C_last, S_last}
  std::string worst_sink;
  double sta_carry_arrival = 0;     // ps, C0 -> C_last
  std::optional<double> measured;   // ps, C0 step -> C_last under a full ripple
  StageCount stages;                // of the full-path report
};

/// Ripple stimulus: every A digit at its maximum, B = 0, C0 steps 0 -> 1.
inline Stimulus ripple_stimulus(int cells, int radix, double step_ps) {
  Stimulus s;
  for (int i = 0; i < cells; ++i) {
    s.initial["A" + std::to_string(i)] = level_from_index(radix - 1);
    s.initial["B" + std::to_string(i)] = LogicLevel::L0;
  }
  s.initial["C0"] = LogicLevel::L0;
  s.events.push_back({step_ps, "C0", LogicLevel::L1});
  s.duration_ps = 2 * step_ps;
  return s;
}

inline std::vector<ScalingRow> cpa_scaling(const AdderConfig& cfg, const std::vector<int>& n_list,
                                           const CellLibrary& lib) {
  if (n_list.empty()) throw Error(ErrorKind::Usage, "n_list must not be empty");
  std::vector<ScalingRow> out;
  for (int n : n_list) {
    try {
      const Circuit c = build_config_cpa(cfg.kind, cfg.vdd, lib, n, cfg.cl);
      ScalingRow row;
      row.n_digits = n;
      row.cells = is_slice(cfg.kind) ? 2 * n : n;
      const std::string c_last = "C" + std::to_string(row.cells);
      const std::string s_last = "S" + std::to_string(row.cells - 1);
      const TimingReport full = sta(c, {"C0", "A0", "B0"}, {c_last, s_last});
      row.sta_arrival = full.worst_arrival_ps();
      row.worst_sink = full.worst_sink;
      row.stages = stage_count(full);
      const TimingReport carry = sta(c, {"C0"}, {c_last});
      row.sta_carry_arrival = carry.worst_arrival_ps();
      const double step = std::floor(row.sta_arrival) + 1.0;
      const Trace t = simulate(c, ripple_stimulus(row.cells, is_quaternary(cfg.kind) ? 4 : 2, step));
      row.measured = measure_delay(t, "C0", 0, c_last);
      out.push_back(row);
    } catch (const Error& e) {
      throw Error(e.kind(), cfg.label() + " N=" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

inline nlohmann::json scaling_json(const AdderConfig& cfg, const std::vector<ScalingRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"n_digits", r.n_digits},
                   {"cells", r.cells},
                   {"sta_arrival_ps", r.sta_arrival},
                   {"worst_sink", r.worst_sink},
                   {"sta_carry_arrival_ps", r.sta_carry_arrival},
                   {"measured_carry_ps", r.measured ? nlohmann::json(*r.measured) : nlohmann::json(nullptr)},
                   {"stages", {{"cells", r.stages.cells}, {"gate_arcs", r.stages.gate_arcs}}}});
  return {{"config", cfg.label()}, {"cl_f", cfg.cl}, {"rows", arr}};
}

}  // namespace quadd
