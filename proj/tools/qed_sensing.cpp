// Copyright 2026 The qsense Authors
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

// qed-sensing: sweeps, optima and self-checks for relaxation-limited
// single- and two-qubit field sensing.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qsense/optimizer.hpp"
#include "qsense/sweep.hpp"
#include "qsense/verify.hpp"

namespace {

using namespace qsense;

struct Common {
  double gamma = 1.0;
  double s = 0.5;
  double epsilon = 0.0;
  std::string format = "csv";
  std::string out;
  int grid_points = 64;
};

void add_noise_flags(CLI::App* cmd, Common& c, bool with_s = true, bool with_epsilon = true) {
  cmd->add_option("--gamma", c.gamma, "relaxation rate")->capture_default_str();
  if (with_s) cmd->add_option("--s", c.s, "bath temperature parameter in [0, 1/2]")->capture_default_str();
  if (with_epsilon) {
    cmd->add_option("--epsilon", c.epsilon, "parity-readout depolarization probability")
        ->capture_default_str();
  }
}

void add_output_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "write to this file instead of stdout");
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(c.out);
  if (!file) throw ArgumentError("cannot open '" + c.out + "' for writing");
  file << text;
}

void emit_table(const Common& c, const SweepTable& table) {
  std::ostringstream os;
  if (c.format == "json") {
    write_json(os, table);
  } else {
    write_csv(os, table);
  }
  emit(c, os.str());
}

NoiseModel noise(const Common& c) {
  NoiseModel nm{c.gamma, c.s, c.epsilon};
  nm.validate();
  if (!nm.thermal()) std::cerr << "warning: s > 1/2 is outside the thermal range\n";
  return nm;
}

std::vector<NoiseModel> models_over_s(const Common& c, const std::string& s_list) {
  std::vector<NoiseModel> models;
  for (double s : parse_real_list(s_list)) models.push_back({c.gamma, s, c.epsilon});
  return models;
}

std::vector<NoiseModel> models_over_epsilon(const Common& c, const std::string& e_list) {
  std::vector<NoiseModel> models;
  for (double e : parse_real_list(e_list)) models.push_back({c.gamma, c.s, e});
  return models;
}

std::string render_optimum(const Common& c, Protocol protocol, const NoiseModel& nm,
                           const std::vector<int>& n_set, const OptimumReport& r) {
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["protocol"] = std::string(to_string(protocol));
    j["gamma"] = nm.gamma;
    j["s"] = nm.s;
    j["epsilon"] = nm.epsilon;
    j["best_t"] = r.best_t;
    j["best_n"] = r.best_n;
    j["best_delta_omega_scaled"] = r.best_delta_omega_scaled;
    j["baseline_scaled"] = r.baseline_scaled;
    j["advantage"] = r.advantage;
    j["extrapolated"] = r.extrapolated;
    if (r.extrapolated) {
      j["asymptote_t"] = r.asymptote_t;
      j["asymptote_delta_omega_scaled"] = r.asymptote_delta_omega_scaled;
    }
    j["boundary_warning"] = r.boundary_warning;
    auto& per_n = j["per_n"] = nlohmann::ordered_json::array();
    for (const auto& m : r.per_n) {
      per_n.push_back({{"n", m.n}, {"t", m.line.t}, {"delta_omega_scaled", m.line.value}});
    }
    return j.dump(2) + "\n";
  }
  std::string n_str;
  for (int n : n_set) n_str += (n_str.empty() ? "" : ",") + std::to_string(n);
  std::string out = fmt::format(
      "# qed-sensing {}\n# protocol: {}\n# gamma: {}\n# s: {}\n# epsilon: {}\n# n_list: {}\n",
      kVersion, to_string(protocol), format_number(nm.gamma), format_number(nm.s),
      format_number(nm.epsilon), n_str);
  out +=
      "protocol,best_t,best_n,best_delta_omega_scaled,baseline_scaled,advantage,extrapolated,"
      "asymptote_t,asymptote_delta_omega_scaled\n";
  out += fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(protocol), format_number(r.best_t),
                     r.best_n, format_number(r.best_delta_omega_scaled),
                     format_number(r.baseline_scaled), format_number(r.advantage),
                     r.extrapolated ? 1 : 0,
                     r.extrapolated ? format_number(r.asymptote_t) : std::string(),
                     r.extrapolated ? format_number(r.asymptote_delta_omega_scaled) : std::string());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relaxation-limited field sensing with parity-check postselection"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common c;
  std::string t_grid = "0.05:3:60";
  bool log_grid = false;
  std::string n_list;
  std::string s_list = "0,0.1,0.2,0.3,0.4,0.5";
  std::string epsilon_list = "0,0.01,0.02,0.03,0.04";
  std::string protocol_name = "adaptive";

  auto add_t_grid = [&](CLI::App* cmd) {
    cmd->add_option("--t-grid", t_grid, "interaction times lo:hi:count")->capture_default_str();
    cmd->add_flag("--log", log_grid, "log-spaced t grid");
  };

  auto* ramsey_cmd = app.add_subcommand("ramsey", "single-qubit d_omega vs t");
  add_noise_flags(ramsey_cmd, c, true, false);
  add_t_grid(ramsey_cmd);
  add_output_flags(ramsey_cmd, c);

  struct TSweep {
    const char* name;
    const char* help;
    Protocol protocol;
    const char* n_default;
    bool epsilon;
  };
  const TSweep t_sweeps[] = {
      {"qec", "error correction: d_omega vs (n, t)", Protocol::qec, "1,2,4,8,16", false},
      {"qed", "postselected detection: d_omega vs (n, t)", Protocol::qed, "1,2,4,8,16,32,64", false},
      {"adaptive", "adaptive restart: d_omega vs (n, t)", Protocol::adaptive, "1,2,4,8,16,32,64",
       false},
      {"noisy", "adaptive with noisy parity: d_omega vs (n, t)", Protocol::adaptive,
       "1,2,4,8,16,32", true},
  };
  std::vector<std::pair<CLI::App*, const TSweep*>> t_cmds;
  for (const auto& spec : t_sweeps) {
    auto* cmd = app.add_subcommand(spec.name, spec.help);
    add_noise_flags(cmd, c, true, spec.epsilon);
    add_t_grid(cmd);
    cmd->add_option("--n-list", n_list, "parity-round counts, comma separated")
        ->default_str(spec.n_default);
    add_output_flags(cmd, c);
    t_cmds.emplace_back(cmd, &spec);
  }
  if (auto* noisy = app.get_subcommand("noisy")) {
    noisy->get_option("--epsilon")->default_str("0.02");
  }

  auto* qed_vs_n = app.add_subcommand("qed-vs-n", "postselected detection, optimized t, vs n");
  auto* adaptive_vs_n = app.add_subcommand("adaptive-vs-n", "adaptive restart, optimized t, vs n");
  for (auto* cmd : {qed_vs_n, adaptive_vs_n}) {
    add_noise_flags(cmd, c, false, false);
    cmd->add_option("--s-list", s_list, "bath parameters, comma separated")->capture_default_str();
    cmd->add_option("--n-list", n_list, "parity-round counts")->default_str("1,2,4,8,16,32,64,128,256");
    cmd->add_option("--grid-points", c.grid_points, "coarse t grid size")->capture_default_str();
    add_output_flags(cmd, c);
  }

  auto* noisy_vs_n = app.add_subcommand("noisy-vs-n", "adaptive with noisy parity, optimized t, vs n");
  add_noise_flags(noisy_vs_n, c, true, false);
  noisy_vs_n->add_option("--epsilon-list", epsilon_list, "depolarization rates")
      ->capture_default_str();
  noisy_vs_n->add_option("--n-list", n_list, "parity-round counts")
      ->default_str("1,2,3,4,5,6,8,10,12,16,24,32,64");
  noisy_vs_n->add_option("--grid-points", c.grid_points, "coarse t grid size")->capture_default_str();
  add_output_flags(noisy_vs_n, c);

  auto* optimum_cmd = app.add_subcommand("optimum", "optimize t and n for one protocol");
  optimum_cmd->add_option("--protocol", protocol_name, "ramsey|qec|qed|adaptive")
      ->check(CLI::IsMember({"ramsey", "qec", "qed", "adaptive"}))
      ->capture_default_str();
  add_noise_flags(optimum_cmd, c);
  optimum_cmd->add_option("--n-list", n_list, "parity-round counts")
      ->default_str("1,2,4,8,16,32,64,128,256,512,1024");
  optimum_cmd->add_option("--grid-points", c.grid_points, "coarse t grid size")->capture_default_str();
  add_output_flags(optimum_cmd, c);

  double threshold_s = 0.5;
  auto* threshold_cmd = app.add_subcommand("threshold", "epsilon where the advantage vanishes");
  threshold_cmd->add_option("--s", threshold_s, "bath temperature parameter")->capture_default_str();
  threshold_cmd->add_option("--gamma", c.gamma, "relaxation rate")->capture_default_str();
  threshold_cmd->add_option("--protocol", protocol_name, "qed|adaptive")
      ->check(CLI::IsMember({"qed", "adaptive"}))
      ->capture_default_str();
  threshold_cmd->add_option("--n-list", n_list, "parity-round counts")
      ->default_str("1,2,4,8,16,32,64,128,256,512,1024");
  add_output_flags(threshold_cmd, c);

  auto* verify_cmd = app.add_subcommand("verify", "run the built-in oracle and invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  // CLI11 leaves the string empty when an option with default_str() is not given.
  auto n_values = [&](const CLI::App* cmd) {
    const auto* opt = cmd->get_option("--n-list");
    return parse_int_list(opt->count() ? n_list : opt->get_default_str());
  };

  try {
    if (ramsey_cmd->parsed()) {
      NoiseModel nm = noise(c);
      emit_table(c, sweep_t(Protocol::ramsey, nm, {1}, parse_grid(t_grid, log_grid)));
      return 0;
    }
    for (const auto& [cmd, spec] : t_cmds) {
      if (!cmd->parsed()) continue;
      if (spec->epsilon && !cmd->get_option("--epsilon")->count()) c.epsilon = 0.02;
      NoiseModel nm = noise(c);
      emit_table(c, sweep_t(spec->protocol, nm, n_values(cmd), parse_grid(t_grid, log_grid)));
      return 0;
    }
    if (qed_vs_n->parsed() || adaptive_vs_n->parsed()) {
      auto* cmd = qed_vs_n->parsed() ? qed_vs_n : adaptive_vs_n;
      const Protocol p = qed_vs_n->parsed() ? Protocol::qed : Protocol::adaptive;
      emit_table(c, sweep_vs_n(p, models_over_s(c, s_list), n_values(cmd), c.grid_points));
      return 0;
    }
    if (noisy_vs_n->parsed()) {
      emit_table(c, sweep_vs_n(Protocol::adaptive, models_over_epsilon(c, epsilon_list),
                               n_values(noisy_vs_n), c.grid_points));
      return 0;
    }
    if (optimum_cmd->parsed()) {
      const Protocol p = parse_protocol(protocol_name);
      const NoiseModel nm = noise(c);
      const auto ns = p == Protocol::ramsey ? std::vector<int>{1} : n_values(optimum_cmd);
      const auto report = optimize_protocol(p, nm, ns, c.grid_points);
      if (report.boundary_warning) {
        std::cerr << "warning: an optimum sits on the edge of the t bracket\n";
      }
      emit(c, render_optimum(c, p, nm, ns, report));
      return 0;
    }
    if (threshold_cmd->parsed()) {
      ThresholdOptions opts;
      opts.gamma = c.gamma;
      opts.n_set = n_values(threshold_cmd);
      const Protocol p = parse_protocol(protocol_name);
      const double eps = epsilon_threshold(p, threshold_s, opts);
      if (c.format == "json") {
        nlohmann::ordered_json j;
        j["protocol"] = std::string(to_string(p));
        j["s"] = threshold_s;
        j["gamma"] = c.gamma;
        j["baseline_scaled"] = single_qubit_baseline();
        j["epsilon_threshold"] = eps;
        emit(c, j.dump(2) + "\n");
      } else {
        emit(c, fmt::format("# qed-sensing {}\n# tolerance: {}\nprotocol,s,gamma,baseline_scaled,"
                            "epsilon_threshold\n{},{},{},{},{}\n",
                            kVersion, format_number(opts.tolerance), to_string(p),
                            format_number(threshold_s), format_number(c.gamma),
                            format_number(single_qubit_baseline()), format_number(eps)));
      }
      return 0;
    }
    if (verify_cmd->parsed()) {
      bool all = true;
      for (const auto& r : run_verification()) {
        std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  [" << r.detail << "]\n";
        all = all && r.passed;
      }
      std::cout << (all ? "all checks passed\n" : "some checks FAILED\n");
      return all ? 0 : 1;
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
