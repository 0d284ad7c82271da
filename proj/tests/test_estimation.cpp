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

#include <gtest/gtest.h>

#include <cmath>

#include "qsense/estimation.hpp"
#include "qsense/optimizer.hpp"

namespace qsense {
namespace {

ProtocolConfig config(Protocol p, double t, int n, double s = 0.5, double gamma = 1,
                      double eps = 0) {
  ProtocolConfig c;
  c.protocol = p;
  c.t = t;
  c.n = n;
  c.nm = {gamma, s, eps};
  return c;
}

TEST(Slope, RamseyDecayedSlope) {
  for (double t : {0.1, 0.5, 2.0}) {
    const double exact = t / 2 * std::exp(-t);
    EXPECT_NEAR(slope_at_zero(config(Protocol::ramsey, t, 1)) / exact, 1, 1e-6);
  }
}

TEST(Slope, SingleQedSlope) {
  for (double t : {0.2, 0.64, 3.0}) {
    const double exact = t / 2 / std::cosh(t);
    EXPECT_NEAR(slope_at_zero(config(Protocol::qed, t, 1)) / exact, 1, 1e-6);
  }
}

TEST(Slope, NoDecayGivesHalfTime) {
  for (auto p : {Protocol::ramsey, Protocol::qec, Protocol::qed, Protocol::adaptive}) {
    EXPECT_NEAR(slope_at_zero(config(p, 1.7, 3, 0.5, 0.0)) / (1.7 / 2), 1, 1e-6);
  }
}

TEST(Slope, FlatResponseThrows) {
  EXPECT_THROW(slope_at_zero([](double) { return 0.5; }, 1.0), ZeroSensitivityError);
  // A fully depolarized final round leaves nothing to read.
  EXPECT_THROW(slope_at_zero(config(Protocol::qed, 1.0, 1, 0.5, 1.0, 1.0)), ZeroSensitivityError);
}

TEST(Shots, RamseyCountsCycles) {
  EXPECT_NEAR(shots(100, ramsey(config(Protocol::ramsey, 0.5, 1))), 200, 1e-12);
}

TEST(Shots, SingleQedLosesFailedRuns) {
  const auto r = run(config(Protocol::qed, 1.0, 1));
  EXPECT_NEAR(shots(1, r), (1 + std::exp(-2.0)) / 2, 1e-14);
  EXPECT_NEAR(shots(1, r), 0.5677, 1e-4);
}

TEST(Shots, PerfectAdaptiveRunsEveryCycle) {
  const auto r = run(config(Protocol::adaptive, 0.8, 4, 0.5, 0.0));
  EXPECT_NEAR(shots(10, r), 10 / 0.8, 1e-12);
}

TEST(Uncertainty, OperatingPointFormula) {
  EXPECT_NEAR(uncertainty(0.5, 0.25, 16), 1 / (2 * 0.25 * 4), 1e-15);
  EXPECT_NEAR(uncertainty(0.5, -0.25, 16), 0.5, 1e-15);
  EXPECT_NEAR(uncertainty(0.2, 1, 1), 0.4, 1e-15);
}

TEST(Uncertainty, RejectsBadInputs) {
  EXPECT_THROW(uncertainty(0.5, 1, 0), ArgumentError);
  EXPECT_THROW(uncertainty(0.5, 1, -3), ArgumentError);
  EXPECT_THROW(uncertainty(1.0, 1, 3), ArgumentError);
}

TEST(Uncertainty, NoDecayRamsey) {
  for (double t : {0.1, 1.0, 5.0}) {
    EXPECT_NEAR(delta_omega(config(Protocol::ramsey, t, 1, 0.5, 0.0), 40) * std::sqrt(40 * t), 1,
                1e-8);
  }
}

TEST(Uncertainty, SingleQedScaled) {
  for (double t : {0.3, 0.6394, 1.5}) {
    const double exact = std::sqrt((std::exp(2 * t) + 1) / (2 * t));
    EXPECT_NEAR(sensitivity(config(Protocol::qed, t, 1)).delta_omega_scaled / exact, 1, 1e-6);
  }
}

TEST(Uncertainty, RamseyScaled) {
  const double t = 0.5;
  EXPECT_NEAR(sensitivity(config(Protocol::ramsey, t, 1)).delta_omega_scaled,
              std::exp(t) / std::sqrt(t), 1e-6);
}

TEST(Scaling, InverseSquareRootOfTotalTime) {
  for (auto p : {Protocol::ramsey, Protocol::qed, Protocol::adaptive}) {
    const auto cfg = config(p, 0.9, 4, 0.3, 1.0, 0.01);
    EXPECT_NEAR(delta_omega(cfg, 1.0) / delta_omega(cfg, 2.0), std::sqrt(2.0), 1e-12);
  }
}

TEST(Scaling, DecayRateAndTimeTradeOff) {
  for (auto p : {Protocol::ramsey, Protocol::qec, Protocol::qed, Protocol::adaptive}) {
    const auto cfg = config(p, 0.9, 4, 0.3, 1.0, 0.01);
    const double ref = sensitivity(cfg).delta_omega_scaled;
    for (double c : {0.1, 2.0, 10.0}) {
      auto scaled = cfg;
      scaled.nm.gamma *= c;
      scaled.t /= c;
      EXPECT_NEAR(sensitivity(scaled).delta_omega_scaled / ref, 1, 1e-10);
    }
  }
}

TEST(Scaling, QecMatchesRamseyForAllN) {
  const double r = sensitivity(config(Protocol::ramsey, 0.7, 1)).delta_omega_scaled;
  for (int n : {1, 2, 4, 8, 16}) {
    EXPECT_NEAR(sensitivity(config(Protocol::qec, 0.7, n)).delta_omega_scaled / r, 1, 1e-6);
  }
}

TEST(Sensitivity, RequiresDecay) {
  EXPECT_THROW(sensitivity(config(Protocol::ramsey, 1.0, 1, 0.5, 0.0)), ArgumentError);
}

TEST(Sensitivity, ReportsItsInputs) {
  const auto p = sensitivity(config(Protocol::adaptive, 1.2, 5, 0.25, 2.0, 0.01));
  EXPECT_EQ(p.t, 1.2);
  EXPECT_EQ(p.n, 5);
  EXPECT_EQ(p.s, 0.25);
  EXPECT_EQ(p.gamma, 2.0);
  EXPECT_EQ(p.epsilon, 0.01);
  EXPECT_GT(p.survival, 0);
  EXPECT_LE(p.t_cycle, 1.2);
}

TEST(Monotone, QedImprovesWithMoreRounds) {
  for (double s : {0.0, 0.25, 0.5}) {
    auto f = scaled_objective(Protocol::qed, {1.0, s, 0});
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 256; n *= 2) {
      const double v = minimize_t([&](double t) { return f(t, n); }, default_bracket(1.0)).value;
      EXPECT_LE(v, prev + 1e-9) << "s=" << s << " n=" << n;
      prev = v;
    }
  }
}

}  // namespace
}  // namespace qsense
