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

#include "qsense/estimation.hpp"

#include <cmath>
#include <string>

namespace qsense {

namespace {

constexpr double kMinSlope = 1e-14;

double step_for(double t) { return 1e-4 / t; }

struct Probe {
  ProtocolResult up;  // omega = +h
  double slope;
  double p_zero;
};

// Runs the protocol at +-h; p(omega) - 1/2 is odd, so the mean of the two
// readout probabilities is p(0).
Probe probe(const ProtocolConfig& cfg) {
  const double h = step_for(cfg.t);
  ProtocolConfig c = cfg;
  c.omega = h;
  Probe out{run(c), 0, 0};
  c.omega = -h;
  const double down = run(c).p_plus;
  out.slope = (out.up.p_plus - down) / (2 * h);
  out.p_zero = (out.up.p_plus + down) / 2;
  if (!(std::abs(out.slope) >= kMinSlope)) {
    throw ZeroSensitivityError("readout probability does not respond to the field");
  }
  return out;
}

}  // namespace

double slope_at_zero(const std::function<double(double)>& p_of_omega, double t) {
  if (!(t > 0)) throw ArgumentError("slope_at_zero: t must be > 0");
  const double h = step_for(t);
  const double slope = (p_of_omega(h) - p_of_omega(-h)) / (2 * h);
  if (!(std::abs(slope) >= kMinSlope)) {
    throw ZeroSensitivityError("readout probability does not respond to the field");
  }
  return slope;
}

double slope_at_zero(const ProtocolConfig& cfg) {
  cfg.validate();
  return probe(cfg).slope;
}

double shots(double T, const ProtocolResult& result) {
  if (!(T > 0)) throw ArgumentError("total sensing time must be > 0");
  if (!(result.t_cycle > 0)) throw ArgumentError("cycle time must be > 0");
  return T / result.t_cycle * result.survival;
}

double uncertainty(double p_plus_at_zero, double slope, double N) {
  if (!(N > 0)) throw ArgumentError("uncertainty: number of readouts must be > 0");
  if (!(p_plus_at_zero > 0 && p_plus_at_zero < 1)) {
    throw ArgumentError("uncertainty: readout probability must lie in (0, 1)");
  }
  if (slope == 0) throw ZeroSensitivityError("uncertainty: zero slope");
  return std::sqrt(p_plus_at_zero * (1 - p_plus_at_zero)) / (std::abs(slope) * std::sqrt(N));
}

double delta_omega(const ProtocolConfig& cfg, double T) {
  cfg.validate();
  const Probe pr = probe(cfg);
  return uncertainty(pr.p_zero, pr.slope, shots(T, pr.up));
}

SensitivityPoint sensitivity(const ProtocolConfig& cfg) {
  cfg.validate();
  if (!(cfg.nm.gamma > 0)) throw ArgumentError("scaled uncertainty needs gamma > 0");
  const Probe pr = probe(cfg);
  constexpr double T = 1.0;
  const double N = shots(T, pr.up);

  SensitivityPoint point;
  point.t = cfg.t;
  point.n = cfg.protocol == Protocol::ramsey ? 1 : cfg.n;
  point.epsilon = cfg.nm.epsilon;
  point.s = cfg.nm.s;
  point.gamma = cfg.nm.gamma;
  point.delta_omega_scaled = uncertainty(pr.p_zero, pr.slope, N) * std::sqrt(T / cfg.nm.gamma);
  point.shots_factor = N * pr.up.t_cycle / T;
  point.survival = pr.up.survival;
  point.visibility = pr.slope / (cfg.t / 2);
  point.t_cycle = pr.up.t_cycle;
  return point;
}

}  // namespace qsense
