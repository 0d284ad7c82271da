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
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "qsense/estimation.hpp"
#include "qsense/protocols.hpp"

namespace qsense {
namespace {

const double kPi = std::acos(-1.0);

ProtocolConfig config(Protocol p, double t, int n, double s = 0.5, double omega = 0,
                      double gamma = 1, double eps = 0) {
  ProtocolConfig c;
  c.protocol = p;
  c.t = t;
  c.n = n;
  c.nm = {gamma, s, eps};
  c.omega = omega;
  return c;
}

double choose(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Binomial readout for n postselected rounds at s = 1/2: each surviving round
// keeps the state with probability p1 and leaves a double flip otherwise.
double qed_binomial(double gt, int n, double omega_t) {
  const double e = std::exp(-gt / n);
  const double ps = (1 + e * e) / 2;
  const double p1 = (1 + e) * (1 + e) / 4 / ps;
  double even = 0, odd = 0;
  for (int j = 0; j <= n; ++j) {
    const double term = choose(n, j) * std::pow(p1, n - j) * std::pow(1 - p1, j);
    (j % 2 == 0 ? even : odd) += term;
  }
  return even * (1 + std::sin(omega_t)) / 2 + odd * (1 - std::sin(omega_t)) / 2;
}

double uniform_cycle_time(double t, int n, double ps) {
  double tav = std::pow(ps, n) * t;
  for (int k = 1; k <= n; ++k) tav += std::pow(ps, k - 1) * (1 - ps) * k * t / n;
  return tav;
}

TEST(Names, RoundTrip) {
  for (auto p : {Protocol::ramsey, Protocol::qec, Protocol::qed, Protocol::adaptive}) {
    EXPECT_EQ(parse_protocol(to_string(p)), p);
  }
  EXPECT_THROW(parse_protocol("mqed"), ArgumentError);
}

TEST(Ramsey, OperatingPointIsHalf) {
  EXPECT_NEAR(ramsey(config(Protocol::ramsey, 0.7, 1)).p_plus, 0.5, 1e-15);
}

TEST(Ramsey, QuarterTurnWithoutDecayIsCertain) {
  EXPECT_NEAR(ramsey(config(Protocol::ramsey, 1.0, 1, 0.5, kPi / 2, 0.0)).p_plus, 1, 1e-15);
}

TEST(Ramsey, MatchesDecayedFringe) {
  const double expected = 0.5 + 0.5 * std::exp(-0.5) * std::sin(0.05);
  const double p = ramsey(config(Protocol::ramsey, 0.5, 1, 0.5, 0.1)).p_plus;
  EXPECT_NEAR(p, expected, 1e-14);
  EXPECT_NEAR(p, 0.51516, 5e-6);
  for (double s : {0.0, 0.3}) {
    EXPECT_NEAR(ramsey(config(Protocol::ramsey, 0.5, 1, s, 0.1)).p_plus, expected, 1e-14);
  }
}

TEST(Parity, NoiselessBellStaysEven) {
  const auto b = parity_measure(bell_state(), {1.0, 0.5, 0.0});
  EXPECT_LT((b.even - bell_state()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(b.odd.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Parity, FullDepolarizationGivesMixedState) {
  const auto b = parity_measure(bell_state(), {1.0, 0.5, 1.0});
  EXPECT_LT((b.even - Matrix4<double>::Identity() / 4.0).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(b.even.trace().real(), 1, 1e-15);
}

TEST(Parity, PartialDepolarizationMixesIn) {
  const auto b = parity_measure(bell_state(), {1.0, 0.5, 0.02});
  const Matrix4<double> expected = 0.98 * bell_state() + 0.02 * Matrix4<double>::Identity() / 4.0;
  EXPECT_LT((b.even - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Parity, BranchWeightsAreIdealBornWeights) {
  std::mt19937_64 rng(21);
  const Matrix4<double> rho = random_state<double, 4>(rng) * 0.6;
  const auto b = parity_measure(rho, {1.0, 0.5, 0.3});
  EXPECT_NEAR(b.even.trace().real(), (parity_projector(Parity::even) * rho).trace().real(), 1e-14);
  EXPECT_NEAR(b.odd.trace().real(), (parity_projector(Parity::odd) * rho).trace().real(), 1e-14);
}

TEST(Qec, SingleRoundEqualsRamsey) {
  for (double s : {0.0, 0.25, 0.5}) {
    for (double omega : {-0.4, 0.13, 1.1}) {
      const double q = qec_run(config(Protocol::qec, 0.8, 1, s, omega)).p_plus;
      const double r = ramsey(config(Protocol::ramsey, 0.8, 1, s, omega)).p_plus;
      EXPECT_NEAR(q, r, 1e-14);
    }
  }
}

TEST(Qec, EveryRoundCountEqualsRamsey) {
  for (int n : {2, 4, 8, 16}) {
    const double q = qec_run(config(Protocol::qec, 1.2, n, 0.5, 0.3)).p_plus;
    const double r = ramsey(config(Protocol::ramsey, 1.2, 1, 0.5, 0.3)).p_plus;
    EXPECT_NEAR(q, r, 1e-12) << "n=" << n;
  }
}

TEST(Qec, OperatingPointAndTrace) {
  for (int n : {1, 2, 5, 32}) {
    auto cfg = config(Protocol::qec, 1.5, n, 0.2);
    EXPECT_NEAR(qec_run(cfg).p_plus, 0.5, 1e-15);
    cfg.omega = 0.3;
    const auto [rho, steps] = two_qubit_final_state(cfg);
    EXPECT_NEAR(rho.trace().real(), 1, 1e-12);
    EXPECT_EQ(qec_run(cfg).survival, 1.0);
  }
}

TEST(Qed, SingleRoundClosedForm) {
  for (double gt : {0.3, 1.0, 2.0}) {
    const double omega = 0.4;
    const auto r = qed_run(config(Protocol::qed, gt, 1, 0.5, omega));
    EXPECT_NEAR(r.p_plus, 0.5 + 0.5 * std::sin(omega * gt) / std::cosh(gt), 1e-14);
    EXPECT_NEAR(r.survival, (1 + std::exp(-2 * gt)) / 2, 1e-14);
    EXPECT_EQ(r.t_cycle, gt);
  }
}

TEST(Qed, ManyRoundBinomialClosedForm) {
  for (int n : {2, 4, 8}) {
    for (double gt : {0.25, 1.0, 4.0}) {
      const double omega = 0.21;
      const auto r = qed_run(config(Protocol::qed, gt, n, 0.5, omega));
      EXPECT_NEAR(r.p_plus, qed_binomial(gt, n, omega * gt), 1e-12) << n << " " << gt;
      EXPECT_NEAR(r.survival, std::pow((1 + std::exp(-2 * gt / n)) / 2, n), 1e-12);
    }
  }
}

TEST(Qed, NoDecayBehavesLikeIdealRamsey) {
  const auto r = qed_run(config(Protocol::qed, 1.0, 4, 0.5, 0.6, 0.0));
  EXPECT_EQ(r.survival, 1.0);
  EXPECT_NEAR(r.p_plus, ramsey(config(Protocol::ramsey, 1.0, 1, 0.5, 0.6, 0.0)).p_plus, 1e-14);
}

TEST(Qed, SurvivalIsProductOfRounds) {
  for (double s : {0.0, 0.3, 0.5}) {
    for (double eps : {0.0, 0.04}) {
      const auto r = qed_run(config(Protocol::qed, 1.3, 7, s, 0.2, 1.0, eps));
      ASSERT_EQ(r.step_survivals.size(), 7u);
      const double prod =
          std::accumulate(r.step_survivals.begin(), r.step_survivals.end(), 1.0, std::multiplies<>());
      EXPECT_NEAR(r.survival, prod, 1e-12);
      EXPECT_GE(r.p_plus, 0);
      EXPECT_LE(r.p_plus, 1);
    }
  }
}

TEST(Qed, ManyRoundLimit) {
  const double t = 1.0;
  const auto cfg = config(Protocol::qed, t, 1024, 0.5);
  EXPECT_NEAR(qed_run(cfg).survival, std::exp(-t), 1e-3);
  EXPECT_NEAR(sensitivity(cfg).visibility, 1.0, 1e-3);
}

TEST(Qed, UnderflowingSurvivalIsDegenerate) {
  EXPECT_THROW(qed_run(config(Protocol::qed, 1e4, 2048, 0.5)), DegenerateConfigurationError);
}

TEST(Adaptive, SharesTheConditionalState) {
  for (int n : {1, 3, 9}) {
    const auto a = adaptive_run(config(Protocol::adaptive, 1.1, n, 0.3, 0.25));
    const auto q = qed_run(config(Protocol::qed, 1.1, n, 0.3, 0.25));
    EXPECT_EQ(a.p_plus, q.p_plus);
    EXPECT_EQ(a.survival, q.survival);
    EXPECT_LE(a.t_cycle, 1.1 + 1e-12);
  }
}

TEST(Adaptive, CycleTimeEdgeCases) {
  const auto cfg = config(Protocol::adaptive, 2.0, 5, 0.5);
  EXPECT_DOUBLE_EQ(adaptive_cycle_time(cfg, std::vector<double>(5, 1.0)), 2.0);
  const auto one = config(Protocol::adaptive, 2.0, 1, 0.5);
  EXPECT_DOUBLE_EQ(adaptive_cycle_time(one, {0.37}), 2.0);
}

TEST(Adaptive, CycleTimeMatchesUniformSum) {
  for (int n = 1; n <= 8; ++n) {
    for (double gt : {0.25, 1.0, 4.0}) {
      const double ps = (1 + std::exp(-2 * gt / n)) / 2;
      const auto r = adaptive_run(config(Protocol::adaptive, gt, n, 0.5));
      EXPECT_NEAR(r.t_cycle, uniform_cycle_time(gt, n, ps), 1e-12);
    }
  }
}

TEST(AllProtocols, OddAroundTheOperatingPoint) {
  for (auto p : {Protocol::ramsey, Protocol::qec, Protocol::qed, Protocol::adaptive}) {
    for (double s : {0.0, 0.5}) {
      for (double eps : {0.0, 0.05}) {
        for (double gamma : {0.5, 2.0}) {
          auto cfg = config(p, 0.9, 6, s, 0, gamma, eps);
          EXPECT_NEAR(run(cfg).p_plus, 0.5, 1e-12);
          cfg.omega = 0.35;
          const double up = run(cfg).p_plus - 0.5;
          cfg.omega = -0.35;
          const double down = run(cfg).p_plus - 0.5;
          EXPECT_NEAR(up, -down, 1e-12);
        }
      }
    }
  }
}

TEST(AllProtocols, FringeIsASineWithProtocolVisibility) {
  for (auto p : {Protocol::ramsey, Protocol::qec, Protocol::qed, Protocol::adaptive}) {
    for (double s : {0.0, 0.25, 0.5}) {
      for (int n : {1, 4}) {
        const double t = 0.9;
        const double v = sensitivity(config(p, t, n, s)).visibility;
        double worst = 0;
        for (int k = -10; k <= 10; ++k) {
          const double wt = 0.01 * k;
          const double pp = run(config(p, t, n, s, wt / t)).p_plus;
          worst = std::max(worst, std::abs(pp - 0.5 - 0.5 * v * std::sin(wt)));
        }
        EXPECT_LT(worst, 1e-10) << to_string(p) << " s=" << s << " n=" << n;
      }
    }
  }
}

TEST(AllProtocols, FinalStatesAreValid) {
  for (auto p : {Protocol::qec, Protocol::qed, Protocol::adaptive}) {
    for (double eps : {0.0, 0.1}) {
      const auto [rho, steps] = two_qubit_final_state(config(p, 2.0, 12, 0.1, 0.4, 1.0, eps));
      EXPECT_LE((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_GE(min_eigenvalue(rho), -1e-10);
      EXPECT_LE(rho.trace().real(), 1 + 1e-12);
    }
  }
}

TEST(Config, Validation) {
  EXPECT_THROW(run(config(Protocol::qed, 0.0, 1)), ArgumentError);
  EXPECT_THROW(run(config(Protocol::qed, -1.0, 1)), ArgumentError);
  EXPECT_THROW(run(config(Protocol::qed, 1.0, 0)), ArgumentError);
  EXPECT_THROW(run(config(Protocol::qed, 1.0, kMaxParityRounds + 1)), ArgumentError);
  EXPECT_THROW(run(config(Protocol::qed, 1e-9, 1 << 12)), ArgumentError);
  EXPECT_THROW(run(config(Protocol::qed, 1.0, 2, 1.2)), ArgumentError);
  EXPECT_THROW(run(config(Protocol::qed, 1.0, 2, 0.5, 0, 1, -0.1)), ArgumentError);
  EXPECT_NO_THROW(run(config(Protocol::qed, 1e-9, 1 << 12, 0.5, 0, 0.0)));
}

}  // namespace
}  // namespace qsense
