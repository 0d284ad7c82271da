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

// Shot-noise-limited field uncertainty in the weak-field limit.
//
// For a total sensing time T the estimator from N readouts has
//
//   d_omega = sqrt(p (1 - p)) / (|dp/d_omega| sqrt(N)),   N = (T / t_cycle) survival,
//
// evaluated at the operating point omega = 0 where p = 1/2. Results are
// reported as the dimensionless d_omega * sqrt(T / gamma), which is
// independent of T and invariant under (gamma, t) -> (c gamma, t / c).

#pragma once

#include <functional>

#include "qsense/protocols.hpp"

namespace qsense {

struct SensitivityPoint {
  double t = 0;
  int n = 1;
  double epsilon = 0;
  double s = 0;
  double gamma = 0;
  double delta_omega_scaled = 0;  // d_omega * sqrt(T / gamma)
  double shots_factor = 0;        // N t_cycle / T
  double survival = 0;
  double visibility = 0;  // V in p = 1/2 + V/2 sin(omega t)
  double t_cycle = 0;
};

/// Central difference (p(h) - p(-h)) / 2h with h = 1e-4 / t.
/// Throws ZeroSensitivityError when |slope| < 1e-14.
double slope_at_zero(const std::function<double(double)>& p_of_omega, double t);
double slope_at_zero(const ProtocolConfig& cfg);

/// Readouts obtained in total time T.
double shots(double T, const ProtocolResult& result);

/// sqrt(p (1 - p)) / (|slope| sqrt(N)).
double uncertainty(double p_plus_at_zero, double slope, double N);

/// Unscaled d_omega for total time T (cfg.omega is ignored).
double delta_omega(const ProtocolConfig& cfg, double T);

/// Full evaluation at omega = 0; requires gamma > 0 for the scaling.
SensitivityPoint sensitivity(const ProtocolConfig& cfg);

}  // namespace qsense
