// Copyright 2026 The qec5 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON and CSV forms of benchmark results. CSV always uses '.' as the decimal
// separator (classic locale) and a fixed column order.

#pragma once

#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qec5/benchmark.hpp"

namespace qec5 {

namespace detail {

inline std::string fixed(double v, int digits = 12) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(digits) << std::fixed << v;
  return os.str();
}

}  // namespace detail

inline nlohmann::json goal_to_json(const GoalResult& g) {
  return {{"goal", g.goal},           {"name", g.name},          {"measured", g.measured},
          {"threshold", g.threshold}, {"margin", g.margin},      {"passed", g.passed},
          {"note", g.note}};
}

inline nlohmann::json goals_to_json(const std::array<GoalResult, 4>& goals) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& g : goals) arr.push_back(goal_to_json(g));
  return arr;
}

/// Report schema (version 1):
///   {"schema": "qec5.report/1", "engine", "noise": {"fe", "extra"}, "seed",
///    "records": [{"error", "axis", "polarization"}],
///    "per_error_fidelity": [{"error", "syndrome", "fidelity"}],
///    "aggregate_e2", "demonic": {"qubit", "fidelity"}, "goals": [...]}
inline nlohmann::json report_to_json(const BenchmarkReport& rep) {
  nlohmann::json j;
  j["schema"] = "qec5.report/1";
  j["engine"] = rep.engine;
  j["noise"] = rep.noise.to_json();
  j["seed"] = rep.seed;
  auto& records = j["records"] = nlohmann::json::array();
  for (const auto& r : rep.records) {
    records.push_back({{"error", r.error_label}, {"axis", std::string(1, axis_name(r.input_axis))}, {"polarization", r.polarization}});
  }
  auto& per = j["per_error_fidelity"] = nlohmann::json::array();
  for (const auto& e : rep.per_error_fidelity) {
    per.push_back({{"error", e.error_label}, {"syndrome", e.syndrome.str()}, {"fidelity", e.fidelity}});
  }
  j["aggregate_e2"] = rep.aggregate_e2;
  j["demonic"] = {{"qubit", rep.demonic_qubit}, {"fidelity", rep.demonic_min}};
  j["goals"] = goals_to_json(evaluate_goals(rep));
  return j;
}

/// Rebuilds a report from its records; derived fields are recomputed.
inline BenchmarkReport report_from_json(const nlohmann::json& j) {
  std::vector<ExperimentRecord> records;
  for (const auto& r : j.at("records")) {
    records.push_back({r.at("error").get<std::string>(), parse_axis(r.at("axis").get<std::string>()),
                       r.at("polarization").get<double>()});
  }
  BenchmarkReport rep = assemble_report(std::move(records));
  rep.engine = j.value("engine", std::string("dense"));
  rep.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("noise")) {
    const auto& n = j.at("noise");
    rep.noise.fe = n.value("fe", 1.0);
    if (n.contains("extra") && !n.at("extra").is_null()) rep.noise.extra = n.at("extra");
  }
  return rep;
}

/// error,axis,polarization
inline void write_records_csv(std::ostream& os, const BenchmarkReport& rep) {
  os << "error,axis,polarization\n";
  for (const auto& r : rep.records) os << r.error_label << ',' << axis_name(r.input_axis) << ',' << detail::fixed(r.polarization) << '\n';
}

/// bin_low,bin_high,count
inline void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins) {
  os << "bin_low,bin_high,count\n";
  for (const auto& b : bins) os << detail::fixed(b.low, 6) << ',' << detail::fixed(b.high, 6) << ',' << b.count << '\n';
}

/// p,unencoded,encoded over `steps` + 1 evenly spaced points.
inline void write_curve_csv(std::ostream& os, double fe, double pmin, double pmax, int steps) {
  if (steps < 1) throw std::invalid_argument("curve: steps must be >= 1");
  if (!(pmin <= pmax)) throw std::invalid_argument("curve: pmin must not exceed pmax");
  os << "p,unencoded,encoded\n";
  for (int i = 0; i <= steps; ++i) {
    const double p = pmin + (pmax - pmin) * i / steps;
    os << detail::fixed(p) << ',' << detail::fixed(unencoded_curve(p)) << ',' << detail::fixed(encoded_curve(p, fe)) << '\n';
  }
}

inline void write_goals_table(std::ostream& os, const std::array<GoalResult, 4>& goals) {
  os << "goal  measured  threshold  margin   verdict\n";
  for (const auto& g : goals) {
    os << std::left << std::setw(6) << g.goal << std::setw(10) << detail::fixed(g.measured, 4) << std::setw(11)
       << detail::fixed(g.threshold, 4) << std::setw(9) << detail::fixed(g.margin, 4) << (g.passed ? "PASS" : "FAIL")
       << "  " << g.name << '\n';
  }
}

}  // namespace qec5
