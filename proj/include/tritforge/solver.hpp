// tritforge/solver.hpp: discrete switch-level solver over {GND, HALF, VDD}
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
#include <array>
#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

#include "netlist.hpp"

namespace tritforge {

/// Net state during and after solving. `x` is unresolved, `z` floating.
enum class node_state : std::uint8_t { gnd = 0, half = 1, vdd = 2, x = 3, z = 4 };

[[nodiscard]] constexpr node_state to_state(voltage_level l) noexcept { return static_cast<node_state>(l); }

[[nodiscard]] constexpr bool is_level(node_state s) noexcept { return s <= node_state::vdd; }

[[nodiscard]] inline voltage_level to_level(node_state s) {
  if (!is_level(s)) throw domain_error("net state is not a voltage level");
  return static_cast<voltage_level>(s);
}

[[nodiscard]] constexpr char state_char(node_state s) noexcept {
  constexpr std::array<char, 5> chars{'0', '1', '2', 'X', 'Z'};
  return chars[static_cast<std::size_t>(s)];
}

/// Whether a device conducts with its gate at `gate`; thresholds are rail referenced.
[[nodiscard]] inline bool conducts(polarity p, threshold_class vt, voltage_level gate, double vdd = default_vdd) {
  constexpr double eps = 1e-12;
  const double g = volts(gate, vdd);
  const double overdrive = p == polarity::n ? g : vdd - g;
  return overdrive + eps >= threshold_volts(vt);
}

class solver_error : public error {
 public:
  using error::error;
};

/// No fixed point within the round bound.
class oscillation_error : public solver_error {
 public:
  using solver_error::solver_error;
};

/// A net is still X (or an output floats) at the fixed point.
class unresolvable_error : public solver_error {
 public:
  unresolvable_error(const std::string& what, std::string net) : solver_error(what), net_(std::move(net)) {}
  [[nodiscard]] const std::string& net() const noexcept { return net_; }

 private:
  std::string net_;
};

struct swing_warning {
  std::string net;
  polarity type = polarity::n;  // n: VDD passed through N devices only; p: GND through P only
  double headroom = 0.0;        // volts

  bool operator==(const swing_warning&) const = default;
};

/// Index-based solution produced by compiled_circuit.
struct raw_solution {
  std::vector<node_state> levels;
  std::vector<std::vector<int>> division_regions;  // sorted members, regions sorted
  std::vector<int> floating;
  std::size_t settle_rounds = 0;

  [[nodiscard]] bool divided(int net) const {
    for (const auto& r : division_regions) {
      if (std::binary_search(r.begin(), r.end(), net)) return true;
    }
    return false;
  }
};

namespace detail {

struct disjoint_sets {
  std::vector<int> parent;

  void reset(std::size_t n) {
    parent.resize(n);
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

[[nodiscard]] inline node_state level_of_mask(unsigned mask) noexcept {
  switch (mask) {
    case 0: return node_state::z;
    case 1: return node_state::gnd;
    case 2: return node_state::half;
    case 4: return node_state::vdd;
    default: return node_state::half;  // sources of different levels meet: division
  }
}

}  // namespace detail

/// A netlist lowered to index form for repeated solving.
class compiled_circuit {
 public:
  explicit compiled_circuit(const netlist& n) : vdd_(n.vdd) {
    names_ = n.all_nets();
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], static_cast<int>(i));
    source_.assign(names_.size(), false);
    source_[index(rail_vdd)] = true;
    source_[index(rail_gnd)] = true;
    for (const auto& in : n.inputs) {
      if (is_rail(in.net)) throw domain_error("rail '" + in.net + "' declared as input");
      inputs_.push_back(index(in.net));
      input_domains_.push_back(in.domain);
      source_[inputs_.back()] = true;
    }
    for (const auto& out : n.outputs) {
      outputs_.push_back(index(out.net));
      output_encodings_.push_back(out.enc);
    }
    for (const auto& d : n.devices) {
      cdev c{index(d.gate), index(d.source), index(d.drain), d.type, d.vt, {}};
      for (int l = 0; l < 3; ++l) c.on[l] = conducts(d.type, d.vt, static_cast<voltage_level>(l), vdd_);
      devices_.push_back(c);
    }
  }

  [[nodiscard]] const std::vector<std::string>& net_names() const noexcept { return names_; }
  [[nodiscard]] std::size_t net_count() const noexcept { return names_.size(); }
  [[nodiscard]] int find(std::string_view net) const {
    auto it = index_.find(std::string(net));
    return it == index_.end() ? -1 : it->second;
  }
  [[nodiscard]] int index(std::string_view net) const {
    const int i = find(net);
    if (i < 0) throw domain_error("unknown net '" + std::string(net) + "'");
    return i;
  }
  [[nodiscard]] bool is_source(int net) const { return source_[net]; }
  [[nodiscard]] const std::vector<int>& inputs() const noexcept { return inputs_; }
  [[nodiscard]] const std::vector<encoding>& input_domains() const noexcept { return input_domains_; }
  [[nodiscard]] const std::vector<int>& outputs() const noexcept { return outputs_; }
  [[nodiscard]] const std::vector<encoding>& output_encodings() const noexcept { return output_encodings_; }
  [[nodiscard]] double vdd() const noexcept { return vdd_; }

  /// Solve one input point; `in` follows the input declaration order.
  [[nodiscard]] raw_solution solve(const std::vector<voltage_level>& in,
                                   const std::vector<node_state>* prev = nullptr) const {
    if (in.size() != inputs_.size()) throw domain_error("input vector size does not match declared inputs");
    const std::size_t n = names_.size();
    if (prev && prev->size() != n) throw domain_error("previous state does not match the netlist");
    std::vector<node_state> cur(n, node_state::x);
    if (prev) cur = *prev;
    cur[index(rail_vdd)] = node_state::vdd;
    cur[index(rail_gnd)] = node_state::gnd;
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      const auto levels = domain_levels(input_domains_[i]);
      if (std::find(levels.begin(), levels.end(), in[i]) == levels.end()) {
        throw domain_error("level " + std::string(to_string(in[i])) + " outside the domain of input '" +
                           names_[inputs_[i]] + "'");
      }
      cur[inputs_[i]] = to_state(in[i]);
    }

    raw_solution out;
    const std::size_t limit = 4 * n;
    scratch s;
    std::vector<node_state> next(n);
    for (;;) {
      step(cur, prev != nullptr, s, next);
      if (next == cur) break;
      if (++out.settle_rounds > limit) {
        throw oscillation_error("no fixed point within " + std::to_string(limit) + " rounds");
      }
      cur.swap(next);
    }

    // Final conduction graph: every gate is resolved unless an X remains.
    for (std::size_t i = 0; i < n; ++i) {
      if (cur[i] == node_state::x) throw unresolvable_error("net '" + names_[i] + "' is unresolved", names_[i]);
    }
    if (!prev) {
      for (int o : outputs_) {
        if (cur[o] == node_state::z) throw unresolvable_error("output '" + names_[o] + "' floats", names_[o]);
      }
    }
    components(cur, false, s);
    std::map<int, std::vector<int>> regions;
    for (std::size_t i = 0; i < n; ++i) {
      if (source_[i]) continue;
      const int root = s.sets.find(static_cast<int>(i));
      const unsigned m = s.mask[root];
      if (m == 0) out.floating.push_back(static_cast<int>(i));
      else if ((m & (m - 1)) != 0) regions[root].push_back(static_cast<int>(i));
    }
    for (auto& [root, members] : regions) out.division_regions.push_back(std::move(members));
    std::sort(out.division_regions.begin(), out.division_regions.end());
    out.levels = std::move(cur);
    return out;
  }

  /// Nets whose full-swing level is passed only through the weak device type.
  [[nodiscard]] std::vector<swing_warning> swing_lint(const raw_solution& sol) const {
    std::vector<bool> observable(names_.size(), false);
    for (int o : outputs_) observable[o] = true;
    for (const auto& d : devices_) observable[d.g] = true;
    std::vector<swing_warning> out;
    for (const auto target : {node_state::vdd, node_state::gnd}) {
      const polarity strong = target == node_state::vdd ? polarity::p : polarity::n;
      const auto best = widest(sol.levels, target, strong);
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (source_[i] || !observable[i] || sol.levels[i] != target) continue;
        if (best[i] == std::numeric_limits<double>::infinity()) continue;
        if (best[i] == -std::numeric_limits<double>::infinity()) continue;  // held charge, no path
        out.push_back({names_[i], strong == polarity::p ? polarity::n : polarity::p, best[i]});
      }
    }
    return out;
  }

 private:
  struct cdev {
    int g, s, d;
    polarity type;
    threshold_class vt;
    std::array<bool, 3> on;
  };

  struct scratch {
    detail::disjoint_sets sets;
    std::vector<unsigned> mask;
    std::vector<std::pair<int, unsigned>> pending;
    std::vector<node_state> lo;
  };

  // Union-find over conducting devices; X/Z gates count as off (lower bound) or on (upper bound).
  void components(const std::vector<node_state>& cur, bool upper, scratch& s) const {
    const std::size_t n = names_.size();
    s.sets.reset(n);
    s.pending.clear();
    for (const auto& d : devices_) {
      const node_state g = cur[d.g];
      const bool on = is_level(g) ? d.on[static_cast<std::size_t>(g)] : upper;
      if (!on) continue;
      const bool ss = source_[d.s], sd = source_[d.d];
      if (ss && sd) continue;
      if (ss) s.pending.emplace_back(d.d, source_bit(cur[d.s]));
      else if (sd) s.pending.emplace_back(d.s, source_bit(cur[d.d]));
      else s.sets.unite(d.s, d.d);
    }
    s.mask.assign(n, 0);
    for (auto [net, bit] : s.pending) s.mask[s.sets.find(net)] |= bit;
  }

  void bound(const std::vector<node_state>& cur, bool upper, bool hold, scratch& s, std::vector<node_state>& res) const {
    components(cur, upper, s);
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (source_[i]) {
        res[i] = cur[i];
        continue;
      }
      node_state l = detail::level_of_mask(s.mask[s.sets.find(static_cast<int>(i))]);
      if (l == node_state::z && hold && is_level(cur[i])) l = cur[i];
      res[i] = l;
    }
  }

  void step(const std::vector<node_state>& cur, bool hold, scratch& s, std::vector<node_state>& next) const {
    s.lo.resize(cur.size());
    bound(cur, false, hold, s, s.lo);
    bound(cur, true, hold, s, next);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (next[i] != s.lo[i]) next[i] = node_state::x;
    }
  }

  static unsigned source_bit(node_state s) { return 1u << static_cast<unsigned>(s); }

  // Bottleneck (max-min) headroom from sources at `target`; +inf when a strong-only path exists.
  [[nodiscard]] std::vector<double> widest(const std::vector<node_state>& levels, node_state target,
                                           polarity strong) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = names_.size();
    std::vector<double> best(n, -inf);
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& d : devices_) {
      const node_state g = levels[d.g];
      if (!is_level(g) || !d.on[static_cast<std::size_t>(g)]) continue;
      double w = inf;
      if (d.type != strong) {
        const double gv = volts(static_cast<voltage_level>(g), vdd_);
        w = (d.type == polarity::n ? gv : vdd_ - gv) - threshold_volts(d.vt);
      }
      adj[d.s].emplace_back(d.d, w);
      adj[d.d].emplace_back(d.s, w);
    }
    std::vector<bool> done(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (source_[i] && levels[i] == target) best[i] = inf;
    }
    for (;;) {
      int u = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (!done[i] && best[i] != -inf && (u < 0 || best[i] > best[u])) u = static_cast<int>(i);
      }
      if (u < 0) break;
      done[u] = true;
      if (source_[u] && levels[u] != target) continue;
      if (source_[u] && best[u] != inf) continue;
      for (auto [v, w] : adj[u]) {
        if (source_[v]) continue;
        const double cand = std::min(best[u], w);
        if (cand > best[v]) best[v] = cand;
      }
    }
    return best;
  }

  double vdd_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<bool> source_;
  std::vector<int> inputs_;
  std::vector<encoding> input_domains_;
  std::vector<int> outputs_;
  std::vector<encoding> output_encodings_;
  std::vector<cdev> devices_;
};

/// Named view of a solution.
struct solve_result {
  std::map<std::string, node_state> levels;
  std::vector<std::vector<std::string>> division_regions;
  std::set<std::string> division_nets;
  std::set<std::string> floating;
  std::size_t settle_rounds = 0;
  std::vector<swing_warning> swing_warnings;

  [[nodiscard]] node_state level(const std::string& net) const {
    auto it = levels.find(net);
    if (it == levels.end()) throw domain_error("unknown net '" + net + "'");
    return it->second;
  }
  [[nodiscard]] std::size_t division_count() const noexcept { return division_regions.size(); }

  bool operator==(const solve_result&) const = default;
};

namespace detail {

inline solve_result name_solution(const compiled_circuit& c, const raw_solution& r) {
  solve_result out;
  const auto& names = c.net_names();
  for (std::size_t i = 0; i < names.size(); ++i) out.levels.emplace(names[i], r.levels[i]);
  for (const auto& region : r.division_regions) {
    std::vector<std::string> members;
    for (int i : region) {
      members.push_back(names[i]);
      out.division_nets.insert(names[i]);
    }
    out.division_regions.push_back(std::move(members));
  }
  for (int i : r.floating) out.floating.insert(names[i]);
  out.settle_rounds = r.settle_rounds;
  out.swing_warnings = c.swing_lint(r);
  return out;
}

inline std::vector<voltage_level> order_inputs(const compiled_circuit& c,
                                               const std::map<std::string, voltage_level>& inputs) {
  std::vector<voltage_level> v;
  const auto& names = c.net_names();
  for (int i : c.inputs()) {
    auto it = inputs.find(names[i]);
    if (it == inputs.end()) throw domain_error("no level assigned to input '" + names[i] + "'");
    v.push_back(it->second);
  }
  for (const auto& [net, lvl] : inputs) {
    const int i = c.find(net);
    if (i < 0 || std::find(c.inputs().begin(), c.inputs().end(), i) == c.inputs().end()) {
      throw domain_error("'" + net + "' is not a declared input");
    }
  }
  return v;
}

}  // namespace detail

/// Steady state for one input assignment, optionally seeded with a previous state.
[[nodiscard]] inline solve_result solve_state(const netlist& n, const std::map<std::string, voltage_level>& inputs,
                                              const solve_result* prev = nullptr) {
  const compiled_circuit c(n);
  const auto in = detail::order_inputs(c, inputs);
  if (!prev) return detail::name_solution(c, c.solve(in));
  std::vector<node_state> seed;
  for (const auto& name : c.net_names()) {
    auto it = prev->levels.find(name);
    seed.push_back(it == prev->levels.end() ? node_state::x : it->second);
  }
  return detail::name_solution(c, c.solve(in, &seed));
}

/// Runs fn(i) for i in [0, count) on worker threads; the first failure (by index) is rethrown.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max<std::size_t>(1, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Cartesian product of level sets, first set most significant.
[[nodiscard]] inline std::vector<std::vector<voltage_level>> product(
    const std::vector<std::vector<voltage_level>>& domains) {
  std::vector<std::vector<voltage_level>> out{{}};
  for (const auto& d : domains) {
    std::vector<std::vector<voltage_level>> next;
    for (const auto& prefix : out) {
      for (auto l : d) {
        next.push_back(prefix);
        next.back().push_back(l);
      }
    }
    out = std::move(next);
  }
  return out;
}

[[nodiscard]] inline std::vector<std::vector<voltage_level>> input_domain(const netlist& n) {
  std::vector<std::vector<voltage_level>> d;
  for (const auto& in : n.inputs) d.push_back(domain_levels(in.domain));
  return d;
}

inline std::string describe_point(const std::vector<std::string>& names, const std::vector<voltage_level>& point) {
  std::string s;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) s += ' ';
    s += names[i] + '=' + std::string(to_string(point[i]));
  }
  return s;
}

/// Solve every point from scratch; results in point order.
[[nodiscard]] inline std::vector<raw_solution> sweep(const compiled_circuit& c,
                                                     const std::vector<std::vector<voltage_level>>& points) {
  std::vector<raw_solution> out(points.size());
  std::vector<std::string> in_names;
  for (int i : c.inputs()) in_names.push_back(c.net_names()[i]);
  parallel_for(points.size(), [&](std::size_t i) {
    try {
      out[i] = c.solve(points[i]);
    } catch (const unresolvable_error& e) {
      throw unresolvable_error(std::string(e.what()) + " at " + describe_point(in_names, points[i]), e.net());
    } catch (const oscillation_error& e) {
      throw oscillation_error(std::string(e.what()) + " at " + describe_point(in_names, points[i]));
    }
  });
  return out;
}

struct truth_row {
  std::vector<voltage_level> inputs;
  std::vector<voltage_level> outputs;

  bool operator==(const truth_row&) const = default;
};

struct truth_table_result {
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;
  std::vector<encoding> output_encodings;
  std::vector<truth_row> rows;

  bool operator==(const truth_table_result&) const = default;
};

/// Exhaustive output levels over `domain` (defaults to every declared input domain).
[[nodiscard]] inline truth_table_result truth_table(
    const netlist& n, const std::optional<std::vector<std::vector<voltage_level>>>& domain = std::nullopt) {
  const compiled_circuit c(n);
  truth_table_result t;
  for (const auto& in : n.inputs) t.input_names.push_back(in.net);
  for (const auto& out : n.outputs) {
    t.output_names.push_back(out.net);
    t.output_encodings.push_back(out.enc);
  }
  const auto points = product(domain ? *domain : input_domain(n));
  const auto sols = sweep(c, points);
  for (std::size_t i = 0; i < points.size(); ++i) {
    truth_row row{points[i], {}};
    for (int o : c.outputs()) row.outputs.push_back(to_level(sols[i].levels[o]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Warnings over every point of the declared input domain, worst headroom per (net, type).
[[nodiscard]] inline std::vector<swing_warning> full_swing_lint(const netlist& n) {
  const compiled_circuit c(n);
  const auto points = product(input_domain(n));
  std::map<std::pair<std::string, polarity>, double> worst;
  for (const auto& p : points) {
    raw_solution sol;
    try {
      sol = c.solve(p);
    } catch (const solver_error&) {
      continue;
    }
    for (auto& w : c.swing_lint(sol)) {
      auto key = std::make_pair(w.net, w.type);
      auto it = worst.find(key);
      if (it == worst.end() || w.headroom < it->second) worst[key] = w.headroom;
    }
  }
  std::vector<swing_warning> out;
  for (const auto& [k, h] : worst) out.push_back({k.first, k.second, h});
  return out;
}

}  // namespace tritforge
