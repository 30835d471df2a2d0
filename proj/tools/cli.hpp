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

// quadd command line. Exit codes: 0 ok, 1 verification failure, 2 usage or
// input-file error, 3 model error.

#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quadd/quadd.hpp"

namespace quadd::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kModel = 3 };

/// "2fF", "2 fF", "0.5pF", "2e-15" -> farads.
inline double parse_capacitance(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Usage, "bad capacitance '" + text + "'");
  }
  std::string unit = text.substr(used);
  unit.erase(0, unit.find_first_not_of(' '));
  double scale = 1.0;
  if (unit.empty() || unit == "F") scale = 1.0;
  else if (unit == "fF" || unit == "f") scale = 1e-15;
  else if (unit == "pF" || unit == "p") scale = 1e-12;
  else if (unit == "aF" || unit == "a") scale = 1e-18;
  else throw Error(ErrorKind::Usage, "unknown capacitance unit '" + unit + "'");
  if (!(v >= 0)) throw Error(ErrorKind::Usage, "capacitance must be non-negative");
  return v * scale;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct CellOptions {
  std::string cell = "qfa2";
  std::string of = "qfa2";
  int digits = 4;
  double vdd = 0.9;
  std::string cl = "0";

  void add_to(CLI::App* app, bool with_load) {
    app->add_option("--cell", cell, "qfa1|qfa2|bfa1|bfa2|bfa1x2|bfa2x2|cpa")->capture_default_str();
    app->add_option("--of", of, "cell kind chained by --cell cpa")->capture_default_str();
    app->add_option("--digits", digits, "digits of a cpa build")->capture_default_str();
    app->add_option("--vdd", vdd, "supply voltage (V)")->capture_default_str();
    if (with_load) app->add_option("--cl", cl, "load on every output, e.g. 2fF")->capture_default_str();
  }

  Circuit build(const CellLibrary& lib) const {
    const double load = parse_capacitance(cl);
    if (!(vdd > 0)) throw Error(ErrorKind::Usage, "--vdd must be positive");
    if (cell == "cpa") {
      if (digits < 1) throw Error(ErrorKind::Usage, "--digits must be >= 1");
      return build_config_cpa(parse_cell_kind(of), vdd, lib, digits, load);
    }
    return build_digit(parse_cell_kind(cell), vdd, lib, load);
  }
};

inline void write_out(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Usage, "cannot write '" + path + "'");
  f << text;
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"quaternary and binary adder modeling toolkit", "quadd"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string lib_path;
  std::uint64_t seed = 1;
  app.add_option("--lib", lib_path, "cell library override (JSON)");
  app.add_option("--seed", seed, "seed for random vectors")->capture_default_str();

  CellOptions verify_cell_opts, sta_opts, sim_opts, dump_opts;
  std::size_t vectors = 10000;
  auto* verify = app.add_subcommand("verify", "check a cell or ripple adder against integer addition");
  verify_cell_opts.add_to(verify, false);
  verify->add_option("--vectors", vectors, "random vectors when exhaustive is too large")->capture_default_str();

  std::string from, to, sta_out;
  auto* sta_cmd = app.add_subcommand("sta", "static timing report (JSON)");
  sta_opts.add_to(sta_cmd, true);
  sta_cmd->add_option("--from", from, "source ports (comma list, default all inputs)");
  sta_cmd->add_option("--to", to, "sink ports (comma list, default all outputs)");
  sta_cmd->add_option("--out", sta_out, "output file (default stdout)");

  std::string stim_path, trace_out, ledger_out;
  auto* sim = app.add_subcommand("sim", "simulate a stimulus file");
  sim_opts.add_to(sim, true);
  sim->add_option("--stimulus", stim_path, "stimulus JSON")->required();
  sim->add_option("--trace-out", trace_out, "waveform CSV");
  sim->add_option("--ledger-out", ledger_out, "energy ledger CSV");

  std::string configs, compare_cl = "2fF", compare_out;
  unsigned threads = 1;
  double step_ps = 2000.0;
  auto* cmp = app.add_subcommand("compare", "delay/power/PDP/area comparison");
  cmp->add_option("--configs", configs, "kind@vdd[,kind@vdd...]")->required();
  cmp->add_option("--cl", compare_cl, "output load")->capture_default_str();
  cmp->add_option("--out", compare_out, "report.json or report.csv (default JSON on stdout)");
  cmp->add_option("--threads", threads, "worker threads")->capture_default_str();
  cmp->add_option("--step-ps", step_ps, "stimulus step interval (ps)")->capture_default_str();

  std::string dump_out;
  auto* dump = app.add_subcommand("dump-netlist", "write a generated circuit as JSON");
  dump_opts.add_to(dump, true);
  dump->add_option("--out", dump_out, "output file (default stdout)");

  std::string scale_config, scale_list = "1,2,4,8,16", scale_cl = "2fF", scale_out;
  auto* scaling = app.add_subcommand("scaling", "ripple adder delay versus length");
  scaling->add_option("--config", scale_config, "kind@vdd")->required();
  scaling->add_option("--digits-list", scale_list, "comma list of digit counts")->capture_default_str();
  scaling->add_option("--cl", scale_cl, "output load")->capture_default_str();
  scaling->add_option("--out", scale_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const CellLibrary lib = lib_path.empty() ? CellLibrary::defaults() : CellLibrary::from_file(lib_path);

    if (*verify) {
      VerifyResult r;
      std::string what;
      if (verify_cell_opts.cell == "cpa") {
        CpaVerifyOptions opt;
        opt.random_vectors = vectors;
        opt.seed = seed;
        if (verify_cell_opts.digits < 1) throw Error(ErrorKind::Usage, "--digits must be >= 1");
        r = verify_cpa(parse_cell_kind(verify_cell_opts.of), verify_cell_opts.digits, verify_cell_opts.vdd, lib, opt);
        what = "cpa of " + verify_cell_opts.of + " x" + std::to_string(verify_cell_opts.digits);
      } else {
        r = verify_cell(parse_cell_kind(verify_cell_opts.cell), verify_cell_opts.vdd, lib);
        what = verify_cell_opts.cell;
      }
      std::size_t shown = 0;
      for (const auto& m : r.mismatches) {
        if (shown++ == 20) break;
        out << "MISMATCH " << m.label << ": " << m.port << " expected " << to_string(m.expected) << " got "
            << to_string(m.got) << '\n';
      }
      out << what << ": " << r.vectors << " vectors, " << r.mismatches.size() << " mismatches\n";
      return r.ok() ? kOk : kVerifyFailed;
    }

    if (*sta_cmd) {
      const Circuit c = sta_opts.build(lib);
      const auto sources = from.empty() ? c.port_names(PortDirection::Input) : split_list(from);
      const auto sinks = to.empty() ? c.port_names(PortDirection::Output) : split_list(to);
      write_out(sta_out, timing_report_json(sta(c, sources, sinks)).dump(2) + "\n", out);
      return kOk;
    }

    if (*sim) {
      const Circuit c = sim_opts.build(lib);
      const Trace t = simulate(c, load_stimulus(stim_path));
      nlohmann::json j;
      j["total_energy_j"] = t.total_energy;
      j["settle_energy_j"] = t.settle_energy;
      j["duration_ps"] = ticks_to_ps(t.duration);
      j["final"] = nlohmann::json::object();
      for (const auto& p : c.port_names(PortDirection::Output)) j["final"][p] = to_string(t.final_level(p));
      j["delays"] = nlohmann::json::array();
      for (const auto& src : c.port_names(PortDirection::Input))
        for (std::size_t i = 0; i < t.transitions(t.port_net(src)); ++i)
          for (const auto& dst : c.port_names(PortDirection::Output))
            if (auto d = measure_delay(t, src, i, dst))
              j["delays"].push_back({{"from", src}, {"event", i}, {"to", dst}, {"delay_ps", *d}});
      if (!trace_out.empty()) {
        std::ostringstream s;
        write_trace_csv(s, t);
        write_out(trace_out, s.str(), out);
      }
      if (!ledger_out.empty()) {
        std::ostringstream s;
        write_ledger_csv(s, t);
        write_out(ledger_out, s.str(), out);
      }
      out << j.dump(2) << '\n';
      return kOk;
    }

    if (*cmp) {
      StimulusOptions opt;
      opt.step_ps = step_ps;
      const auto rows = compare(parse_configs(configs, parse_capacitance(compare_cl)), lib, threads, opt);
      if (ends_with(compare_out, ".csv")) {
        std::ostringstream s;
        write_compare_csv(s, rows);
        write_out(compare_out, s.str(), out);
      } else {
        write_out(compare_out, compare_json(rows).dump(2) + "\n", out);
      }
      return kOk;
    }

    if (*dump) {
      write_out(dump_out, netlist_to_json(dump_opts.build(lib)).dump(2) + "\n", out);
      return kOk;
    }

    if (*scaling) {
      std::vector<int> ns;
      for (const auto& item : split_list(scale_list)) {
        try {
          ns.push_back(std::stoi(item));
        } catch (const std::exception&) {
          throw Error(ErrorKind::Usage, "bad digit count '" + item + "'");
        }
        if (ns.back() < 1) throw Error(ErrorKind::Usage, "digit counts must be >= 1");
      }
      const AdderConfig cfg = parse_config(scale_config, parse_capacitance(scale_cl));
      write_out(scale_out, scaling_json(cfg, cpa_scaling(cfg, ns, lib)).dump(2) + "\n", out);
      return kOk;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::Usage || e.kind() == ErrorKind::Schema ? kUsage : kModel;
  }
  return kUsage;
}

}  // namespace quadd::cli
