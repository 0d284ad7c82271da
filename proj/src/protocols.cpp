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

#include "qsense/protocols.hpp"

#include <cmath>
#include <string>

namespace qsense {

namespace {

constexpr double kMinSegment = 1e-12;
constexpr double kMinSurvival = 1e-300;

const Matrix4<double>& plus_readout() {
  static const Matrix4<double> p = logical_readout<double>(+1);
  return p;
}

const Matrix4<double>& probe_flip() {
  static const Matrix4<double> x = on_probe<double>(pauli2<double>(Pauli::x));
  return x;
}

bool is_even_index(int i) { return i == 0 || i == 3; }

// P rho P for the diagonal parity projectors.
Matrix4<double> project(const Matrix4<double>& rho, Parity parity) {
  Matrix4<double> out = Matrix4<double>::Zero();
  const bool want_even = parity == Parity::even;
  for (int i = 0; i < 4; ++i) {
    if (is_even_index(i) != want_even) continue;
    for (int j = 0; j < 4; ++j) {
      if (is_even_index(j) == want_even) out(i, j) = rho(i, j);
    }
  }
  return out;
}

void depolarize(Matrix4<double>& branch, double epsilon) {
  if (epsilon == 0) return;
  const double weight = branch.trace().real();
  branch *= 1 - epsilon;
  branch.diagonal().array() += epsilon * weight / 4;
}

double readout_probability(const Matrix4<double>& rho) {
  const double tr = rho.trace().real();
  return expect(rho / tr, plus_readout());
}

void require(const ProtocolConfig& cfg, Protocol expected) {
  if (cfg.protocol != expected) {
    throw ArgumentError("protocol mismatch: expected " + std::string(to_string(expected)) +
                        ", got " + std::string(to_string(cfg.protocol)));
  }
  cfg.validate();
}

// Shared qed/adaptive loop.
ProtocolResult postselected(const ProtocolConfig& cfg) {
  auto [rho, steps] = two_qubit_final_state(cfg);
  ProtocolResult result;
  result.survival = rho.trace().real();
  result.step_survivals = std::move(steps);
  result.p_plus = readout_probability(rho);
  result.t_cycle = cfg.t;
  return result;
}

}  // namespace

std::string_view to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::ramsey:
      return "ramsey";
    case Protocol::qec:
      return "qec";
    case Protocol::qed:
      return "qed";
    case Protocol::adaptive:
      return "adaptive";
  }
  return "unknown";
}

Protocol parse_protocol(std::string_view name) {
  for (auto p : {Protocol::ramsey, Protocol::qec, Protocol::qed, Protocol::adaptive}) {
    if (to_string(p) == name) return p;
  }
  throw ArgumentError("unknown protocol '" + std::string(name) + "'");
}

void ProtocolConfig::validate() const {
  nm.validate();
  if (!std::isfinite(t) || t <= 0) throw ArgumentError("interaction time must be > 0");
  if (!std::isfinite(omega)) throw ArgumentError("omega must be finite");
  if (protocol == Protocol::ramsey) return;
  if (n < 1 || n > kMaxParityRounds) {
    throw ArgumentError("parity rounds must lie in [1, 2^20]");
  }
  if (nm.gamma > 0 && nm.gamma * segment() < kMinSegment) {
    throw ArgumentError("segment length underflow: gamma*t/n < 1e-12");
  }
}

ParityBranches parity_measure(const Matrix4<double>& rho, const NoiseModel& nm) {
  ParityBranches b{project(rho, Parity::even), project(rho, Parity::odd)};
  depolarize(b.even, nm.epsilon);
  depolarize(b.odd, nm.epsilon);
  return b;
}

ProtocolResult ramsey(const ProtocolConfig& cfg) {
  require(cfg, Protocol::ramsey);
  const auto rho = analytic_map_1q<double>(plus_state<double>(), cfg.nm, {cfg.omega, cfg.t});
  ProtocolResult result;
  result.p_plus = expect(rho, sigma_y_projector<double>(+1));
  result.survival = 1.0;
  result.t_cycle = cfg.t;
  return result;
}

std::pair<Matrix4<double>, std::vector<double>> two_qubit_final_state(const ProtocolConfig& cfg) {
  if (cfg.protocol == Protocol::ramsey) {
    throw ArgumentError("ramsey is a single-qubit protocol");
  }
  cfg.validate();
  const bool correct = cfg.protocol == Protocol::qec;
  const FieldParams segment{cfg.omega, cfg.segment()};

  Matrix4<double> rho = bell_state<double>();
  std::vector<double> steps;
  steps.reserve(static_cast<std::size_t>(cfg.n));
  for (int k = 0; k < cfg.n; ++k) {
    const Matrix4<double> evolved = analytic_map_2q<double>(rho, cfg.nm, segment);
    const double before = evolved.trace().real();
    auto branches = parity_measure(evolved, cfg.nm);
    if (correct) {
      rho = branches.even + probe_flip() * branches.odd * probe_flip();
      steps.push_back(1.0);
    } else {
      const double after = branches.even.trace().real();
      if (!(after >= kMinSurvival)) {
        throw DegenerateConfigurationError("postselection survival underflow at round " +
                                           std::to_string(k + 1));
      }
      steps.push_back(after / before);
      rho = std::move(branches.even);
    }
  }
  return {rho, std::move(steps)};
}

ProtocolResult qec_run(const ProtocolConfig& cfg) {
  require(cfg, Protocol::qec);
  auto [rho, steps] = two_qubit_final_state(cfg);
  ProtocolResult result;
  result.p_plus = readout_probability(rho);
  result.survival = 1.0;
  result.step_survivals = std::move(steps);
  result.t_cycle = cfg.t;
  return result;
}

ProtocolResult qed_run(const ProtocolConfig& cfg) {
  require(cfg, Protocol::qed);
  return postselected(cfg);
}

double adaptive_cycle_time(const ProtocolConfig& cfg, const std::vector<double>& step_survivals) {
  if (step_survivals.size() != static_cast<std::size_t>(cfg.n)) {
    throw ArgumentError("adaptive_cycle_time: need one survival per parity round");
  }
  const double tau = cfg.t / cfg.n;
  double reached = 1.0;  // probability of reaching round k
  double expected = 0.0;
  for (int k = 1; k <= cfg.n; ++k) {
    const double s = step_survivals[static_cast<std::size_t>(k - 1)];
    expected += reached * (1 - s) * k * tau;
    reached *= s;
  }
  return expected + reached * cfg.t;
}

ProtocolResult adaptive_run(const ProtocolConfig& cfg) {
  require(cfg, Protocol::adaptive);
  ProtocolResult result = postselected(cfg);
  result.t_cycle = adaptive_cycle_time(cfg, result.step_survivals);
  return result;
}

ProtocolResult run(const ProtocolConfig& cfg) {
  switch (cfg.protocol) {
    case Protocol::ramsey:
      return ramsey(cfg);
    case Protocol::qec:
      return qec_run(cfg);
    case Protocol::qed:
      return qed_run(cfg);
    case Protocol::adaptive:
      return adaptive_run(cfg);
  }
  throw ArgumentError("unknown protocol");
}

}  // namespace qsense
