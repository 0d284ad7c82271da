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

#include "qsense/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsense/parallel.hpp"

namespace qsense {

namespace {

constexpr double kRelativeTolerance = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const std::function<double(double)>& f, double t) {
  try {
    const double v = f(t);
    return std::isfinite(v) ? v : kInf;
  } catch (const NumericalError&) {
    return kInf;
  }
}

}  // namespace

Bracket default_bracket(double gamma) {
  if (!(gamma > 0)) throw ArgumentError("default_bracket: gamma must be > 0");
  return {1e-3 / gamma, 10.0 / gamma};
}

LineMinimum minimize_t(const std::function<double(double)>& objective, Bracket bracket,
                       int grid_points) {
  if (!(bracket.lo > 0) || !(bracket.hi > bracket.lo)) {
    throw ArgumentError("minimize_t: need 0 < lo < hi");
  }
  if (grid_points < 3) throw ArgumentError("minimize_t: need at least 3 grid points");

  const double log_lo = std::log(bracket.lo);
  const double step = (std::log(bracket.hi) - log_lo) / (grid_points - 1);
  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) grid[static_cast<std::size_t>(i)] = std::exp(log_lo + i * step);
  grid.back() = bracket.hi;

  int best = 0;
  double best_value = kInf;
  for (int i = 0; i < grid_points; ++i) {
    const double v = safe_eval(objective, grid[static_cast<std::size_t>(i)]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (!std::isfinite(best_value)) {
    throw NumericalError("minimize_t: objective is not finite anywhere on the bracket");
  }

  LineMinimum result{grid[static_cast<std::size_t>(best)], best_value,
                     best == 0 || best == grid_points - 1};

  // Golden section on the two cells around the grid minimum.
  double a = grid[static_cast<std::size_t>(std::max(best - 1, 0))];
  double b = grid[static_cast<std::size_t>(std::min(best + 1, grid_points - 1))];
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = safe_eval(objective, c);
  double fd = safe_eval(objective, d);
  while (b - a > kRelativeTolerance * (a + b) / 2) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = safe_eval(objective, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = safe_eval(objective, d);
    }
  }
  if (fc < result.value) result = {c, fc, result.at_boundary};
  if (fd < result.value) result = {d, fd, result.at_boundary};
  return result;
}

std::vector<int> default_n_set() {
  std::vector<int> ns;
  for (int n = 1; n <= 1024; n *= 2) ns.push_back(n);
  return ns;
}

std::function<double(double, int)> scaled_objective(Protocol protocol, const NoiseModel& nm) {
  return [protocol, nm](double t, int n) {
    ProtocolConfig cfg;
    cfg.t = t;
    cfg.n = n;
    cfg.protocol = protocol;
    cfg.nm = nm;
    return sensitivity(cfg).delta_omega_scaled;
  };
}

double single_qubit_baseline() {
  static const double baseline = [] {
    NoiseModel nm;
    nm.gamma = 1.0;
    auto f = scaled_objective(Protocol::ramsey, nm);
    return minimize_t([&](double t) { return f(t, 1); }, default_bracket(1.0)).value;
  }();
  return baseline;
}

OptimumReport minimize_t_n(const std::function<double(double, int)>& objective,
                           const std::vector<int>& n_set, Bracket bracket, int grid_points) {
  if (n_set.empty()) throw ArgumentError("minimize_t_n: empty n set");
  std::vector<int> ns = n_set;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.front() < 1) throw ArgumentError("minimize_t_n: n must be >= 1");

  auto lines = parallel_map(ns.size(), [&](std::size_t i) {
    const int n = ns[i];
    try {
      return minimize_t([&](double t) { return objective(t, n); }, bracket, grid_points);
    } catch (const NumericalError&) {
      return LineMinimum{};  // this n cannot sense anywhere on the bracket
    }
  });

  OptimumReport report;
  std::size_t best = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    report.per_n.push_back({ns[i], lines[i]});
    report.boundary_warning = report.boundary_warning || lines[i].at_boundary;
    if (lines[i].value < lines[best].value) best = i;
  }
  if (!std::isfinite(lines[best].value)) {
    throw NumericalError("minimize_t_n: objective is not finite for any n");
  }
  report.best_n = ns[best];
  report.best_t = lines[best].t;
  report.best_delta_omega_scaled = lines[best].value;
  report.baseline_scaled = single_qubit_baseline();
  report.advantage = report.baseline_scaled / report.best_delta_omega_scaled;

  // Geometric tail: the per-n optimum converges like a power of 1/n, so
  // successive differences over doublings shrink by a constant ratio.
  const std::size_t m = ns.size();
  if (best == m - 1 && m >= 3 && ns[m - 1] == 2 * ns[m - 2] && ns[m - 2] == 2 * ns[m - 3]) {
    auto aitken = [](double x1, double x2, double x3, double& out) {
      const double d1 = x2 - x1;
      const double d2 = x3 - x2;
      if (d1 == 0 || d2 == 0 || (d1 > 0) != (d2 > 0) || std::abs(d2) >= std::abs(d1)) return false;
      out = x3 + d2 * d2 / (d1 - d2);
      return true;
    };
    double v = 0, t = 0;
    if (aitken(lines[m - 3].value, lines[m - 2].value, lines[m - 1].value, v)) {
      report.extrapolated = true;
      report.asymptote_delta_omega_scaled = v;
      report.asymptote_t = aitken(lines[m - 3].t, lines[m - 2].t, lines[m - 1].t, t)
                               ? t
                               : lines[m - 1].t;
    }
  }
  return report;
}

OptimumReport optimize_protocol(Protocol protocol, const NoiseModel& nm,
                                const std::vector<int>& n_set, int grid_points) {
  nm.validate();
  const std::vector<int> ns = protocol == Protocol::ramsey ? std::vector<int>{1} : n_set;
  return minimize_t_n(scaled_objective(protocol, nm), ns, default_bracket(nm.gamma), grid_points);
}

double epsilon_threshold(Protocol protocol, double s, const ThresholdOptions& options) {
  if (protocol == Protocol::ramsey || protocol == Protocol::qec) {
    throw ArgumentError("epsilon_threshold: protocol must be postselected");
  }
  if (!(options.hi > options.lo) || options.lo < 0 || options.hi > 1) {
    throw ArgumentError("epsilon_threshold: bad epsilon bracket");
  }
  const double baseline = single_qubit_baseline();
  auto gap = [&](double epsilon) {
    NoiseModel nm{options.gamma, s, epsilon};
    return optimize_protocol(protocol, nm, options.n_set, options.grid_points)
               .best_delta_omega_scaled -
           baseline;
  };
  double lo = options.lo;
  double hi = options.hi;
  if (!(gap(lo) < 0)) {
    throw ArgumentError("epsilon_threshold: protocol does not beat the baseline at epsilon = " +
                        std::to_string(lo));
  }
  if (!(gap(hi) > 0)) {
    throw NoCrossingError("epsilon_threshold: no crossing on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  }
  while (hi - lo > options.tolerance) {
    const double mid = (lo + hi) / 2;
    (gap(mid) < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace qsense
