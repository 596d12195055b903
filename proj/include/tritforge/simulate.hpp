// tritforge/simulate.hpp: transition simulation and discrete proxy metrics
//
// Copyright (c) 2026 The tritforge Authors
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

#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pattern.hpp"
#include "solver.hpp"

namespace tritforge {

struct metrics_report {
  std::size_t delay_rounds = 0;   // max settle rounds over transitions
  double static_div_mean = 0.0;   // mean division events over distinct states
  double activity = 0.0;          // half-VDD steps per transition, summed over driven nets
  std::size_t device_total = 0;
  std::vector<std::string> warnings;

  bool operator==(const metrics_report&) const = default;
};

inline void to_json(nlohmann::json& j, const metrics_report& m) {
  j = nlohmann::json{{"delay_rounds", m.delay_rounds},
                     {"static_div_mean", m.static_div_mean},
                     {"activity", m.activity},
                     {"device_total", m.device_total},
                     {"warnings", m.warnings}};
}

struct simulation {
  std::vector<std::string> nets;  // traced nets (rails excluded), sorted
  std::vector<std::vector<node_state>> trace;
  std::vector<std::size_t> settle_rounds;  // per step; step 0 is the initial solve
  metrics_report metrics;
};

namespace detail {

inline std::vector<std::vector<voltage_level>> pattern_points(const netlist& n, const pattern& p) {
  std::vector<std::size_t> column;
  for (const auto& in : n.inputs) {
    auto it = std::find(p.signals.begin(), p.signals.end(), in.net);
    if (it == p.signals.end()) throw domain_error("pattern has no column for input '" + in.net + "'");
    column.push_back(static_cast<std::size_t>(it - p.signals.begin()));
  }
  for (const auto& s : p.signals) {
    if (!n.is_input(s)) throw domain_error("pattern signal '" + s + "' is not a declared input");
  }
  std::vector<std::vector<voltage_level>> points;
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    std::vector<voltage_level> v;
    for (std::size_t i = 0; i < n.inputs.size(); ++i) {
      const int value = p.rows[r][column[i]];
      if (value >= arity(n.inputs[i].domain)) {
        throw domain_error("pattern row " + std::to_string(r) + ": value " + std::to_string(value) +
                           " outside the domain of '" + n.inputs[i].net + "'");
      }
      v.push_back(encode(trit{value}, n.inputs[i].domain));
    }
    points.push_back(std::move(v));
  }
  return points;
}

inline std::string format_volts(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace detail

/// Mean division events over the distinct rows of a pattern, each solved from scratch.
[[nodiscard]] inline double static_division_mean(const netlist& n, const pattern& p) {
  const compiled_circuit c(n);
  const auto points = detail::pattern_points(n, p);
  const std::set<std::vector<voltage_level>> distinct(points.begin(), points.end());
  if (distinct.empty()) return 0.0;
  const std::vector<std::vector<voltage_level>> states(distinct.begin(), distinct.end());
  const auto sols = sweep(c, states);
  double total = 0.0;
  for (const auto& s : sols) total += static_cast<double>(s.division_regions.size());
  return total / static_cast<double>(sols.size());
}

/// Apply the pattern row by row, each solve seeded with the previous state.
[[nodiscard]] inline simulation simulate_pattern(const netlist& n, const pattern& p) {
  if (p.rows.empty()) throw domain_error("simulate_pattern: empty pattern");
  const compiled_circuit c(n);
  const auto points = detail::pattern_points(n, p);
  simulation sim;
  std::vector<int> traced;
  for (std::size_t i = 0; i < c.net_count(); ++i) {
    if (is_rail(c.net_names()[i])) continue;
    traced.push_back(static_cast<int>(i));
    sim.nets.push_back(c.net_names()[i]);
  }

  // Held charge matters only where it is seen: outputs and nets that gate a device.
  std::set<std::string> observable;
  for (const auto& o : n.outputs) observable.insert(o.net);
  for (const auto& d : n.devices) observable.insert(d.gate);
  std::set<std::string> floating;
  std::map<std::vector<voltage_level>, std::size_t> divisions;  // first occurrence of each state
  raw_solution prev;
  long activity_units = 0;
  for (std::size_t step = 0; step < points.size(); ++step) {
    raw_solution sol;
    try {
      sol = step == 0 ? c.solve(points[step]) : c.solve(points[step], &prev.levels);
    } catch (const unresolvable_error& e) {
      throw unresolvable_error("transition " + std::to_string(step) + ": " + e.what(), e.net());
    } catch (const oscillation_error& e) {
      throw oscillation_error("transition " + std::to_string(step) + ": " + e.what());
    }
    if (step > 0) {
      sim.metrics.delay_rounds = std::max(sim.metrics.delay_rounds, sol.settle_rounds);
      for (std::size_t i = 0; i < c.net_count(); ++i) {
        if (c.is_source(static_cast<int>(i))) continue;
        const auto a = prev.levels[i], b = sol.levels[i];
        if (is_level(a) && is_level(b)) activity_units += std::abs(static_cast<int>(a) - static_cast<int>(b));
      }
    }
    divisions.emplace(points[step], sol.division_regions.size());
    for (int f : sol.floating) {
      const auto& name = c.net_names()[f];
      if (step > 0 && observable.count(name)) floating.insert(name);
    }
    std::vector<node_state> row;
    for (int i : traced) row.push_back(sol.levels[i]);
    sim.trace.push_back(std::move(row));
    sim.settle_rounds.push_back(sol.settle_rounds);
    prev = std::move(sol);
  }
  if (p.rows.size() > 1) {
    sim.metrics.activity = static_cast<double>(activity_units) / static_cast<double>(p.rows.size() - 1);
  }
  double total = 0.0;
  for (const auto& [state, count] : divisions) total += static_cast<double>(count);
  sim.metrics.static_div_mean = total / static_cast<double>(divisions.size());
  sim.metrics.device_total = device_count(n).total;
  for (const auto& f : floating) sim.metrics.warnings.push_back("floating: net '" + f + "' holds charge");
  for (const auto& w : full_swing_lint(n)) {
    sim.metrics.warnings.push_back("swing: net '" + w.net + "' passes " + (w.type == polarity::n ? "VDD" : "GND") +
                                   " through " + std::string(to_string(w.type)) + "-type devices only, headroom " +
                                   detail::format_volts(w.headroom) + " V");
  }
  return sim;
}

/// CSV with header `step,<net>...`; levels as 0/1/2/X/Z.
[[nodiscard]] inline std::string trace_csv(const simulation& sim) {
  std::ostringstream os;
  os << "step";
  for (const auto& net : sim.nets) os << ',' << net;
  os << '\n';
  for (std::size_t s = 0; s < sim.trace.size(); ++s) {
    os << s;
    for (auto l : sim.trace[s]) os << ',' << state_char(l);
    os << '\n';
  }
  return os.str();
}

}  // namespace tritforge
