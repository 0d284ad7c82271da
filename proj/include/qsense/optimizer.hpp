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

#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "qsense/estimation.hpp"

namespace qsense {

struct Bracket {
  double lo = 1e-3;
  double hi = 10.0;
};

/// [1e-3, 10] / gamma.
Bracket default_bracket(double gamma);

struct LineMinimum {
  double t = 0;
  double value = std::numeric_limits<double>::infinity();
  bool at_boundary = false;  // coarse minimum sat on a bracket end
};

/// Log-spaced coarse grid, then golden-section refinement around the best
/// grid point to relative tolerance 1e-8 in t. Points where the objective
/// throws NumericalError or is non-finite count as +inf.
LineMinimum minimize_t(const std::function<double(double)>& objective, Bracket bracket,
                       int grid_points = 64);

struct NMinimum {
  int n = 1;
  LineMinimum line;
};

struct OptimumReport {
  double best_t = 0;
  int best_n = 1;
  double best_delta_omega_scaled = 0;
  double baseline_scaled = 0;
  double advantage = 0;  // baseline / best
  std::vector<NMinimum> per_n;
  bool boundary_warning = false;

  // Aitken extrapolation of the last three doublings of n, filled in when
  // the best n is the largest one offered.
  bool extrapolated = false;
  double asymptote_t = std::numeric_limits<double>::quiet_NaN();
  double asymptote_delta_omega_scaled = std::numeric_limits<double>::quiet_NaN();
};

/// Default parity-count set {1, 2, 4, ..., 1024}.
std::vector<int> default_n_set();

/// minimize_t for every n in `n_set` (concurrently), then the best.
OptimumReport minimize_t_n(const std::function<double(double, int)>& objective,
                           const std::vector<int>& n_set, Bracket bracket, int grid_points = 64);

/// t -> d_omega * sqrt(T / gamma) for one protocol and noise model.
std::function<double(double, int)> scaled_objective(Protocol protocol, const NoiseModel& nm);

/// Optimized single-qubit Ramsey uncertainty, computed from the pipeline
/// once per process (gamma = 1; the scaled value does not depend on gamma).
double single_qubit_baseline();

OptimumReport optimize_protocol(Protocol protocol, const NoiseModel& nm,
                                const std::vector<int>& n_set, int grid_points = 64);

struct ThresholdOptions {
  double gamma = 1.0;
  double lo = 0.0;
  double hi = 0.2;
  double tolerance = 1e-4;
  std::vector<int> n_set = default_n_set();
  int grid_points = 64;
};

/// Depolarization rate at which the optimized adaptive scheme stops beating
/// the single-qubit baseline (bisection on epsilon).
double epsilon_threshold(Protocol protocol, double s, const ThresholdOptions& options = {});

}  // namespace qsense
