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

#include "qsense/sweep.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <json.hpp>

#include "qsense/optimizer.hpp"
#include "qsense/parallel.hpp"

namespace qsense {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_real(std::string_view s) {
  // std::from_chars for double is unavailable in libstdc++ 11.
  const std::string buf(s);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(buf, &used);
  } catch (const std::exception&) {
    throw ArgumentError("not a number: '" + buf + "'");
  }
  if (used != buf.size() || !std::isfinite(v)) throw ArgumentError("not a number: '" + buf + "'");
  return v;
}

int to_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ArgumentError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

SweepRow SweepRow::from(const SensitivityPoint& p) {
  return {p.t, p.n, p.epsilon, p.s, p.gamma, p.delta_omega_scaled, p.survival, p.visibility};
}

std::vector<double> Grid::points() const {
  std::vector<double> pts(static_cast<std::size_t>(count));
  if (count == 1) {
    pts[0] = lo;
    return pts;
  }
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    pts[static_cast<std::size_t>(i)] =
        log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
  }
  pts.back() = hi;
  return pts;
}

std::string Grid::to_string() const {
  return fmt::format("{}:{}:{}{}", format_number(lo), format_number(hi), count, log ? " (log)" : "");
}

Grid parse_grid(std::string_view text, bool log) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ArgumentError("grid must look like lo:hi:count");
  Grid g{to_real(parts[0]), to_real(parts[1]), to_int(parts[2]), log};
  if (g.count < 1) throw ArgumentError("grid count must be >= 1");
  if (g.count > 1 && !(g.hi > g.lo)) throw ArgumentError("grid needs lo < hi");
  if (log && !(g.lo > 0)) throw ArgumentError("log grid needs lo > 0");
  return g;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (auto part : split(text, ',')) out.push_back(to_int(part));
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(to_real(part));
  return out;
}

SweepTable sweep_t(Protocol protocol, const NoiseModel& nm, const std::vector<int>& n_list,
                   const Grid& t_grid) {
  nm.validate();
  const std::vector<int> ns = protocol == Protocol::ramsey ? std::vector<int>{1} : n_list;
  if (ns.empty()) throw ArgumentError("empty n list");
  const auto ts = t_grid.points();

  SweepTable table;
  table.protocol = std::string(to_string(protocol));
  table.params = {{"gamma", format_number(nm.gamma)},
                  {"s", format_number(nm.s)},
                  {"epsilon", format_number(nm.epsilon)},
                  {"t_grid", t_grid.to_string()}};
  if (protocol != Protocol::ramsey) {
    std::string list;
    for (int n : ns) list += (list.empty() ? "" : ",") + std::to_string(n);
    table.params.emplace_back("n_list", list);
  }

  table.rows = parallel_map(ns.size() * ts.size(), [&](std::size_t i) {
    ProtocolConfig cfg;
    cfg.protocol = protocol;
    cfg.nm = nm;
    cfg.n = ns[i / ts.size()];
    cfg.t = ts[i % ts.size()];
    return SweepRow::from(sensitivity(cfg));
  });
  return table;
}

SweepTable sweep_vs_n(Protocol protocol, const std::vector<NoiseModel>& models,
                      const std::vector<int>& n_list, int grid_points) {
  if (models.empty() || n_list.empty()) throw ArgumentError("empty sweep axis");
  for (const auto& m : models) m.validate();

  SweepTable table;
  table.protocol = std::string(to_string(protocol));
  std::string s_list, e_list, n_str;
  for (const auto& m : models) {
    s_list += (s_list.empty() ? "" : ",") + format_number(m.s);
    e_list += (e_list.empty() ? "" : ",") + format_number(m.epsilon);
  }
  for (int n : n_list) n_str += (n_str.empty() ? "" : ",") + std::to_string(n);
  table.params = {{"gamma", format_number(models.front().gamma)},
                  {"s_list", s_list},
                  {"epsilon_list", e_list},
                  {"n_list", n_str},
                  {"t", "optimized per row"}};

  table.rows = parallel_map(models.size() * n_list.size(), [&](std::size_t i) {
    const NoiseModel& nm = models[i / n_list.size()];
    const int n = n_list[i % n_list.size()];
    auto objective = scaled_objective(protocol, nm);
    const auto best =
        minimize_t([&](double t) { return objective(t, n); }, default_bracket(nm.gamma), grid_points);
    ProtocolConfig cfg;
    cfg.protocol = protocol;
    cfg.nm = nm;
    cfg.n = n;
    cfg.t = best.t;
    return SweepRow::from(sensitivity(cfg));
  });
  return table;
}

std::string format_number(double v) { return fmt::format("{}", v); }

void write_csv(std::ostream& out, const SweepTable& table) {
  out << "# qed-sensing " << kVersion << '\n';
  out << "# protocol: " << table.protocol << '\n';
  for (const auto& [key, value] : table.params) out << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < kSweepColumns.size(); ++i) {
    out << (i ? "," : "") << kSweepColumns[i];
  }
  out << '\n';
  for (const auto& r : table.rows) {
    out << fmt::format("{},{},{},{},{},{},{},{}\n", format_number(r.t), r.n,
                       format_number(r.epsilon), format_number(r.s), format_number(r.gamma),
                       format_number(r.delta_omega_scaled), format_number(r.survival),
                       format_number(r.visibility));
  }
}

void write_json(std::ostream& out, const SweepTable& table) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : table.rows) {
    nlohmann::ordered_json rec;
    rec["t"] = r.t;
    rec["n"] = r.n;
    rec["epsilon"] = r.epsilon;
    rec["s"] = r.s;
    rec["gamma"] = r.gamma;
    rec["delta_omega_scaled"] = r.delta_omega_scaled;
    rec["survival"] = r.survival;
    rec["visibility"] = r.visibility;
    records.push_back(std::move(rec));
  }
  out << records.dump(2) << '\n';
}

}  // namespace qsense
