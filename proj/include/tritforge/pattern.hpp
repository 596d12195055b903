// tritforge/pattern.hpp: input patterns: static states and complete transition tours
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

#include <algorithm>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "netlist_io.hpp"

namespace tritforge {

enum class pattern_kind : std::uint8_t { complete_transitions, static_states, custom };

/// Rows hold logical values; each is mapped to a level by the input's declared domain.
struct pattern {
  std::vector<std::string> signals;
  std::vector<std::vector<int>> rows;
  pattern_kind kind = pattern_kind::custom;

  [[nodiscard]] std::size_t transitions() const noexcept { return rows.empty() ? 0 : rows.size() - 1; }

  bool operator==(const pattern&) const = default;
};

namespace detail {

inline std::vector<std::vector<int>> all_states(const std::vector<int>& arities) {
  std::vector<std::vector<int>> out{{}};
  for (int k : arities) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : out) {
      for (int v = 0; v < k; ++v) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

// Eulerian circuit of the complete digraph on k vertices, smallest successor first.
inline std::vector<std::size_t> complete_tour(std::size_t k) {
  if (k == 0) return {};
  if (k == 1) return {0};
  std::vector<std::size_t> next_succ(k, 0);
  auto advance = [&](std::size_t v) {
    while (next_succ[v] < k && next_succ[v] == v) ++next_succ[v];
    return next_succ[v] < k;
  };
  std::vector<std::size_t> stack{0}, circuit;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    if (advance(v)) {
      stack.push_back(next_succ[v]++);
    } else {
      circuit.push_back(v);
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

}  // namespace detail

/// Static states (lexicographic product) or a tour taking every ordered state pair exactly once.
[[nodiscard]] inline pattern gen_pattern(std::vector<std::string> signals, const std::vector<int>& arities,
                                         pattern_kind kind) {
  if (signals.size() != arities.size()) throw domain_error("gen_pattern: one arity per signal required");
  for (int k : arities) {
    if (k < 1 || k > 3) throw domain_error("gen_pattern: domain size must be 1..3");
  }
  if (kind == pattern_kind::custom) throw domain_error("gen_pattern: custom patterns are read from files");
  pattern p;
  p.signals = std::move(signals);
  p.kind = kind;
  const auto states = detail::all_states(arities);
  if (kind == pattern_kind::static_states) {
    p.rows = states;
  } else {
    for (std::size_t s : detail::complete_tour(states.size())) p.rows.push_back(states[s]);
  }
  return p;
}

/// Pattern over the declared inputs of a netlist.
[[nodiscard]] inline pattern gen_pattern(const netlist& n, pattern_kind kind) {
  std::vector<std::string> names;
  std::vector<int> arities;
  for (const auto& in : n.inputs) {
    names.push_back(in.net);
    arities.push_back(arity(in.domain));
  }
  return gen_pattern(std::move(names), arities, kind);
}

[[nodiscard]] inline std::string write_pattern(const pattern& p) {
  std::ostringstream os;
  os << ".signals";
  for (const auto& s : p.signals) os << ' ' << s;
  os << '\n';
  for (const auto& row : p.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
    os << '\n';
  }
  return os.str();
}

[[nodiscard]] inline pattern read_pattern(std::string_view text) {
  pattern p;
  bool have_header = false;
  std::size_t line_no = 0;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (!have_header) {
      if (detail::lower(toks[0].text) != ".signals" || toks.size() < 2) {
        throw syntax_error(line_no, toks[0].column, "pattern must start with '.signals <net>...'");
      }
      for (std::size_t i = 1; i < toks.size(); ++i) p.signals.push_back(toks[i].text);
      have_header = true;
      continue;
    }
    if (toks.size() != p.signals.size()) {
      throw syntax_error(line_no, toks[0].column,
                         "expected " + std::to_string(p.signals.size()) + " values, got " + std::to_string(toks.size()));
    }
    std::vector<int> row;
    for (const auto& t : toks) {
      if (t.text != "0" && t.text != "1" && t.text != "2") {
        throw syntax_error(line_no, t.column, "pattern value must be 0, 1 or 2, got '" + t.text + "'");
      }
      row.push_back(t.text[0] - '0');
    }
    p.rows.push_back(std::move(row));
  }
  if (!have_header) throw syntax_error(line_no == 0 ? 1 : line_no, 1, "missing '.signals' header");
  return p;
}

}  // namespace tritforge
