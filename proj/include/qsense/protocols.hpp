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

// Sensing protocols, propagated deterministically over measurement branches.
//
//   ramsey   |+>, free evolution for t, sigma_y readout.
//   qec      Bell pair; n rounds of {evolve t/n, parity check, sigma_x on
//            the probe if odd}; logical sigma_y readout. Every run counts.
//   qed      as qec, but an odd outcome discards the run.
//   adaptive as qed, but a discarded run restarts immediately, so its
//            average duration is shorter than t.
//
// Preparation, gates and readouts take no time. With epsilon > 0 each parity
// round replaces its post-measurement state by I/4 with probability epsilon;
// outcome probabilities stay those of the ideal projectors.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsense/qstate.hpp"
#include "qsense/relaxation.hpp"

namespace qsense {

enum class Protocol { ramsey, qec, qed, adaptive };

std::string_view to_string(Protocol protocol);

/// Throws ArgumentError for unknown names.
Protocol parse_protocol(std::string_view name);

inline constexpr int kMaxParityRounds = 1 << 20;

struct ProtocolConfig {
  double t = 1.0;  // total interaction time
  int n = 1;       // parity rounds; segment length t/n. Ignored by ramsey.
  Protocol protocol = Protocol::ramsey;
  NoiseModel nm;
  double omega = 0.0;

  void validate() const;
  double segment() const { return protocol == Protocol::ramsey ? t : t / n; }
};

struct ProtocolResult {
  double p_plus = 0.5;  // P(+1 readout | run survives)
  double survival = 1.0;
  std::vector<double> step_survivals;  // conditional survival of each parity round
  double t_cycle = 0.0;                // average duration of one attempt
};

struct ParityBranches {
  Matrix4<double> even;
  Matrix4<double> odd;
};

/// Ideal parity projection of a (possibly sub-normalized) state, followed by
/// depolarization of each branch with probability nm.epsilon. Branch traces
/// are the ideal Born weights.
ParityBranches parity_measure(const Matrix4<double>& rho, const NoiseModel& nm);

ProtocolResult ramsey(const ProtocolConfig& cfg);
ProtocolResult qec_run(const ProtocolConfig& cfg);
ProtocolResult qed_run(const ProtocolConfig& cfg);
ProtocolResult adaptive_run(const ProtocolConfig& cfg);

/// Mean duration of an attempt that stops at the first failed round:
///   prod(S) t + sum_k prod_{j<k}(S_j) (1 - S_k) k t/n.
double adaptive_cycle_time(const ProtocolConfig& cfg, const std::vector<double>& step_survivals);

/// Dispatches on cfg.protocol.
ProtocolResult run(const ProtocolConfig& cfg);

/// Unnormalized state right before readout, together with its round
/// survivals. Exposed for tests and diagnostics.
std::pair<Matrix4<double>, std::vector<double>> two_qubit_final_state(const ProtocolConfig& cfg);

}  // namespace qsense
