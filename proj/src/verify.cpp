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

#include "qsense/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "qsense/optimizer.hpp"

namespace qsense {

namespace {

using Check = std::function<CheckResult()>;

CheckResult verdict(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok, std::move(detail)};
}

template <int Dim>
double worst_oracle_gap(std::mt19937_64& rng, int states_per_point) {
  double worst = 0;
  for (double s : {0.0, 0.25, 0.5}) {
    for (double gt : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      for (int k = 0; k < states_per_point; ++k) {
        const auto rho0 = random_state<double, Dim>(rng);
        const NoiseModel nm{1.0, s, 0.0};
        const FieldParams fp{0.7, gt};
        const int steps = static_cast<int>(std::ceil(gt / 0.005));
        const auto exact = detail::relax<double, Dim>(rho0, nm, fp);
        const auto numeric = lindblad_integrate<double, Dim>(rho0, nm, fp, steps);
        worst = std::max(worst, trace_distance(exact, numeric));
      }
    }
  }
  return worst;
}

CheckResult channel_oracle() {
  std::mt19937_64 rng(20160601);
  const double gap = std::max(worst_oracle_gap<2>(rng, 4), worst_oracle_gap<4>(rng, 4));
  return verdict("closed-form channel matches RK4 integration", gap < 1e-8,
                 fmt::format("max trace distance {:.3e} (bound 1e-8)", gap));
}

CheckResult semigroup() {
  double worst = 0;
  std::mt19937_64 rng(7);
  for (double s : {0.0, 0.3, 0.5}) {
    const NoiseModel nm{1.0, s, 0};
    const auto rho = random_state<double, 4>(rng);
    const auto once = analytic_map_2q<double>(rho, nm, {0.4, 1.3});
    const auto twice = analytic_map_2q<double>(analytic_map_2q<double>(rho, nm, {0.4, 0.5}), nm,
                                               {0.4, 0.8});
    worst = std::max(worst, (once - twice).cwiseAbs().maxCoeff());
  }
  return verdict("channel composes as a semigroup", worst < 1e-10,
                 fmt::format("max deviation {:.3e}", worst));
}

CheckResult complete_positivity() {
  double lowest = 0;
  for (double s : {0.0, 0.25, 0.5}) {
    for (double gt : {0.05, 0.5, 3.0}) {
      // Choi matrix sum_ij |i><j| (x) E(|i><j|).
      Matrix4<double> choi = Matrix4<double>::Zero();
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          Matrix2<double> unit = Matrix2<double>::Zero();
          unit(i, j) = 1;
          choi += tensor(unit, analytic_map_1q<double>(unit, {1.0, s, 0}, {0.3, gt}));
        }
      }
      lowest = std::min(lowest, min_eigenvalue(choi));
    }
  }
  return verdict("channel is completely positive", lowest >= -1e-10,
                 fmt::format("min Choi eigenvalue {:.3e}", lowest));
}

CheckResult qec_matches_ramsey() {
  double worst = 0;
  for (double s : {0.0, 0.5}) {
    for (int n : {1, 2, 4, 8}) {
      for (double omega : {-0.3, 0.2}) {
        ProtocolConfig q{0.8, n, Protocol::qec, {1.0, s, 0}, omega};
        ProtocolConfig r{0.8, 1, Protocol::ramsey, {1.0, s, 0}, omega};
        worst = std::max(worst, std::abs(run(q).p_plus - run(r).p_plus));
      }
    }
  }
  return verdict("QEC readout equals Ramsey readout for every n", worst < 1e-12,
                 fmt::format("max deviation {:.3e}", worst));
}

CheckResult qed_closed_form() {
  double worst = 0;
  for (double gt : {0.25, 1.0, 4.0}) {
    for (int n = 1; n <= 8; ++n) {
      const double omega = 0.37;
      const double tau = gt / n;
      const double e = std::exp(-tau);
      const double ps = (1 + e * e) / 2;
      const double p1 = (1 + 2 * e + e * e) / 4 / ps;
      double even = 0, odd = 0;
      for (int j = 0; j <= n; ++j) {
        const double term = std::tgamma(n + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(n - j + 1.0)) *
                            std::pow(p1, n - j) * std::pow(1 - p1, j);
        (j % 2 == 0 ? even : odd) += term;
      }
      const double sn = std::sin(omega * gt);
      const double p_expected = even * (1 + sn) / 2 + odd * (1 - sn) / 2;
      ProtocolConfig cfg{gt, n, Protocol::qed, {1.0, 0.5, 0}, omega};
      const auto res = run(cfg);
      worst = std::max({worst, std::abs(res.p_plus - p_expected),
                        std::abs(res.survival - std::pow(ps, n))});
    }
  }
  return verdict("QED readout and survival match the binomial closed form", worst < 1e-12,
                 fmt::format("max deviation {:.3e}", worst));
}

CheckResult baseline() {
  const double b = single_qubit_baseline();
  const double exact = std::sqrt(2 * std::exp(1.0));
  return verdict("single-qubit optimum is sqrt(2e)", std::abs(b - exact) < 1e-6,
                 fmt::format("{:.8f} vs {:.8f}", b, exact));
}

CheckResult oddness() {
  double worst = 0;
  for (auto p : {Protocol::ramsey, Protocol::qec, Protocol::qed, Protocol::adaptive}) {
    for (double eps : {0.0, 0.03}) {
      for (double s : {0.0, 0.5}) {
        ProtocolConfig c{1.1, 5, p, {1.0, s, eps}, 0.0};
        worst = std::max(worst, std::abs(run(c).p_plus - 0.5));
        c.omega = 0.21;
        const double up = run(c).p_plus;
        c.omega = -0.21;
        const double down = run(c).p_plus;
        worst = std::max(worst, std::abs((up - 0.5) + (down - 0.5)));
      }
    }
  }
  return verdict("p_plus - 1/2 is odd in omega", worst < 1e-12,
                 fmt::format("max deviation {:.3e}", worst));
}

CheckResult scaling() {
  ProtocolConfig cfg{0.9, 4, Protocol::adaptive, {1.0, 0.3, 0.01}, 0};
  const double d1 = delta_omega(cfg, 1.0);
  const double d2 = delta_omega(cfg, 2.0);
  const double t_gap = std::abs(d1 / d2 - std::sqrt(2.0));
  double s_gap = 0;
  const double ref = sensitivity(cfg).delta_omega_scaled;
  for (double c : {0.1, 2.0, 10.0}) {
    ProtocolConfig scaled = cfg;
    scaled.nm.gamma *= c;
    scaled.t /= c;
    s_gap = std::max(s_gap, std::abs(sensitivity(scaled).delta_omega_scaled / ref - 1));
  }
  return verdict("d_omega ~ T^-1/2 and (gamma, t) scale invariance",
                 t_gap < 1e-12 && s_gap < 1e-10,
                 fmt::format("T-scaling {:.3e}, scale invariance {:.3e}", t_gap, s_gap));
}

CheckResult state_invariants() {
  double worst_herm = 0, lowest = 0, worst_trace = 0;
  for (auto p : {Protocol::qec, Protocol::qed}) {
    for (double eps : {0.0, 0.05}) {
      for (int n : {1, 3, 16}) {
        ProtocolConfig cfg{1.4, n, p, {1.0, 0.2, eps}, 0.4};
        const auto [rho, steps] = two_qubit_final_state(cfg);
        worst_herm = std::max(worst_herm, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
        lowest = std::min(lowest, min_eigenvalue(rho));
        const double tr = rho.trace().real();
        if (p == Protocol::qec) worst_trace = std::max(worst_trace, std::abs(tr - 1));
      }
    }
  }
  const bool ok = worst_herm <= 1e-12 && lowest >= -1e-10 && worst_trace <= 1e-12;
  return verdict("protocol states stay Hermitian, PSD, trace-bounded", ok,
                 fmt::format("hermiticity {:.2e}, min eigenvalue {:.2e}, QEC trace {:.2e}",
                             worst_herm, lowest, worst_trace));
}

}  // namespace

std::vector<CheckResult> run_verification() {
  const std::vector<Check> checks = {channel_oracle, semigroup,        complete_positivity,
                                     qec_matches_ramsey, qed_closed_form, baseline,
                                     oddness,        scaling,          state_invariants};
  std::vector<CheckResult> results;
  for (const auto& check : checks) {
    try {
      results.push_back(check());
    } catch (const std::exception& e) {
      results.push_back({"(check threw)", false, e.what()});
    }
  }
  return results;
}

}  // namespace qsense
