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

// Parameter sweeps and their tabular output.
//
// CSV layout: `#`-prefixed metadata lines (tool version, protocol, every
// parameter), one header line, then one record per row with the columns
//
//   t,n,epsilon,s,gamma,delta_omega_scaled,survival,visibility
//
// JSON output is an array of objects with the same keys in the same order.

#pragma once

#include <array>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsense/estimation.hpp"

namespace qsense {

inline constexpr std::string_view kVersion = "0.1.0";

inline constexpr std::array<std::string_view, 8> kSweepColumns = {
    "t", "n", "epsilon", "s", "gamma", "delta_omega_scaled", "survival", "visibility"};

struct SweepRow {
  double t = 0;
  int n = 1;
  double epsilon = 0;
  double s = 0;
  double gamma = 0;
  double delta_omega_scaled = 0;
  double survival = 0;
  double visibility = 0;

  static SweepRow from(const SensitivityPoint& p);
};

struct SweepTable {
  std::string protocol;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<SweepRow> rows;
};

/// `lo:hi:count`; linear unless `log`.
struct Grid {
  double lo = 0;
  double hi = 0;
  int count = 0;
  bool log = false;

  std::vector<double> points() const;
  std::string to_string() const;
};

Grid parse_grid(std::string_view text, bool log = false);
std::vector<int> parse_int_list(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);

/// d_omega(t) for every n in `n_list` and t on the grid; rows ordered by (n, t).
SweepTable sweep_t(Protocol protocol, const NoiseModel& nm, const std::vector<int>& n_list,
                   const Grid& t_grid);

/// Optimized-t d_omega for every (noise model, n); rows ordered by the noise
/// models as given, then n.
SweepTable sweep_vs_n(Protocol protocol, const std::vector<NoiseModel>& models,
                      const std::vector<int>& n_list, int grid_points = 64);

void write_csv(std::ostream& out, const SweepTable& table);
void write_json(std::ostream& out, const SweepTable& table);

/// Shortest round-trip rendering used for every number in the output.
std::string format_number(double v);

}  // namespace qsense
