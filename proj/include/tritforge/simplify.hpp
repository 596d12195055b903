// tritforge/simplify.hpp: assumption-driven device elimination and carry re-encoding
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
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "solver.hpp"

namespace tritforge {

enum class simplify_error_kind : std::uint8_t {
  unknown_net,
  non_input_assumption,
  rail_merge,
  no_divider_found,
  equivalence_check_failed,
};

class simplify_error : public error {
 public:
  simplify_error(simplify_error_kind kind, const std::string& what) : error(what), kind_(kind) {}
  [[nodiscard]] simplify_error_kind kind() const noexcept { return kind_; }

 private:
  simplify_error_kind kind_;
};

/// The levels an input net is assumed to take.
struct assumption_domain {
  std::string net;
  std::vector<voltage_level> levels;
};

[[nodiscard]] inline assumption_domain make_assumption(std::string net, encoding domain) {
  return {std::move(net), domain_levels(domain)};
}

struct pass_report {
  std::size_t wired = 0;
  std::size_t opened = 0;
  std::size_t remapped = 0;
  std::size_t pruned = 0;
  std::size_t factored = 0;

  pass_report& operator+=(const pass_report& o) {
    wired += o.wired;
    opened += o.opened;
    remapped += o.remapped;
    pruned += o.pruned;
    factored += o.factored;
    return *this;
  }
  bool operator==(const pass_report&) const = default;
};

inline void to_json(nlohmann::json& j, const pass_report& r) {
  j = nlohmann::json{{"wired", r.wired},
                     {"opened", r.opened},
                     {"remapped", r.remapped},
                     {"pruned", r.pruned},
                     {"factored", r.factored}};
}

struct pass_result {
  netlist circuit;
  pass_report report;
};

enum class device_action : std::uint8_t { keep, wire, open, remap_lvt };

[[nodiscard]] inline std::string_view to_string(device_action a) noexcept {
  switch (a) {
    case device_action::keep: return "keep";
    case device_action::wire: return "wire";
    case device_action::open: return "open";
    case device_action::remap_lvt: return "remap";
  }
  return "?";
}

/// Wire if on at every gate level, open if off at every one; under a binary
/// assumption a mixed device is moved to LVT when that keeps its conduction.
[[nodiscard]] inline device_action classify_device(polarity p, threshold_class vt,
                                                   const std::vector<voltage_level>& gate_levels,
                                                   bool binary_assumption, double vdd = default_vdd) {
  bool any_on = false, any_off = false;
  for (auto l : gate_levels) (conducts(p, vt, l, vdd) ? any_on : any_off) = true;
  if (any_on && !any_off) return device_action::wire;
  if (any_off && !any_on) return device_action::open;
  if (!binary_assumption || vt == threshold_class::lvt) return device_action::keep;
  for (auto l : gate_levels) {
    if (l == voltage_level::half) return device_action::keep;
    if (conducts(p, vt, l, vdd) != conducts(p, threshold_class::lvt, l, vdd)) return device_action::keep;
  }
  return device_action::remap_lvt;
}

namespace detail {

inline bool is_source_net(const netlist& n, const std::string& net) { return is_rail(net) || n.is_input(net); }

inline void rename_net(netlist& n, const std::string& from, const std::string& to) {
  for (auto& d : n.devices) {
    if (d.gate == from) d.gate = to;
    if (d.source == from) d.source = to;
    if (d.drain == from) d.drain = to;
  }
  for (auto& l : n.loads) {
    if (l.net == from) l.net = to;
  }
  if (n.nets.erase(from) && !n.is_declared(to)) n.nets.insert(to);
}

inline void erase_device(netlist& n, const std::string& id) {
  n.devices.erase(std::remove_if(n.devices.begin(), n.devices.end(), [&](const device& d) { return d.id == id; }),
                  n.devices.end());
}

inline device* find_device(netlist& n, const std::string& id) {
  for (auto& d : n.devices) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

inline std::vector<std::string> sorted_ids(const netlist& n) {
  std::vector<std::string> ids;
  for (const auto& d : n.devices) ids.push_back(d.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

/// Outcome per point: nullopt when the solve fails, else one value per output.
using outcome = std::optional<std::vector<int>>;

inline std::vector<outcome> evaluate(const netlist& n, const std::vector<std::vector<voltage_level>>& points,
                                     bool decoded) {
  const compiled_circuit c(n);
  std::vector<outcome> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    raw_solution sol;
    try {
      sol = c.solve(points[i]);
    } catch (const solver_error&) {
      return;
    }
    std::vector<int> v;
    for (std::size_t k = 0; k < c.outputs().size(); ++k) {
      const node_state s = sol.levels[c.outputs()[k]];
      if (!decoded) {
        v.push_back(static_cast<int>(s));
        continue;
      }
      try {
        v.push_back(decode(to_level(s), c.output_encodings()[k]).value());
      } catch (const domain_error&) {
        v.push_back(-1);
      }
    }
    out[i] = std::move(v);
  });
  return out;
}

/// Every point the reference resolves must resolve identically in the candidate.
inline bool outcomes_agree(const std::vector<outcome>& ref, const std::vector<outcome>& cand) {
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (ref[i] && ref[i] != cand[i]) return false;
  }
  return true;
}

/// Per-point level vectors keyed by net name; nullopt for failed solves.
inline std::vector<std::optional<std::map<std::string, node_state>>> all_levels(
    const netlist& n, const std::vector<std::vector<voltage_level>>& points) {
  const compiled_circuit c(n);
  std::vector<std::optional<std::map<std::string, node_state>>> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      const auto sol = c.solve(points[i]);
      std::map<std::string, node_state> m;
      for (std::size_t k = 0; k < c.net_count(); ++k) m.emplace(c.net_names()[k], sol.levels[k]);
      out[i] = std::move(m);
    } catch (const solver_error&) {
    }
  }
  return out;
}

inline std::vector<std::vector<voltage_level>> assumed_points(const netlist& n, const assumption_domain& a) {
  std::vector<std::vector<voltage_level>> domains;
  for (const auto& in : n.inputs) domains.push_back(in.net == a.net ? a.levels : domain_levels(in.domain));
  return product(domains);
}

inline std::vector<std::vector<int>> logical_points(const netlist& n) {
  std::vector<std::vector<int>> out{{}};
  for (const auto& in : n.inputs) {
    std::vector<std::vector<int>> next;
    for (const auto& p : out) {
      for (int v = 0; v < arity(in.domain); ++v) {
        next.push_back(p);
        next.back().push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::vector<voltage_level>> encode_points(const netlist& n,
                                                             const std::vector<std::vector<int>>& logical) {
  std::vector<std::vector<voltage_level>> out;
  for (const auto& p : logical) {
    std::vector<voltage_level> v;
    for (std::size_t i = 0; i < p.size(); ++i) v.push_back(encode(trit{p[i]}, n.inputs[i].domain));
    out.push_back(std::move(v));
  }
  return out;
}

/// Devices reachable from `start` through channels, crossing only non-source nets.
inline std::set<std::string> channel_reach(const netlist& n, const std::string& start) {
  std::set<std::string> devs;
  std::set<std::string> seen{start};
  std::deque<std::string> q{start};
  while (!q.empty()) {
    const std::string net = q.front();
    q.pop_front();
    for (const auto& d : n.devices) {
      if (!d.touches(net)) continue;
      devs.insert(d.id);
      const std::string& other = d.other_end(net);
      if (!is_source_net(n, other) && seen.insert(other).second) q.push_back(other);
    }
  }
  return devs;
}

}  // namespace detail

/// A net computed from `input` by a private inverter-like region.
struct tracked_complement {
  std::string net;
  std::map<voltage_level, voltage_level> function;  // input level -> complement level
  std::vector<std::string> devices;                 // the region driving it
};

/// Single-stage inverters of `input`: regions gated only by `input` or rails,
/// reaching only rails, with an output used only as a gate.
[[nodiscard]] inline std::vector<tracked_complement> find_complements(const netlist& n, const std::string& input,
                                                                      const std::vector<voltage_level>& levels) {
  std::set<std::string> gate_nets;
  for (const auto& d : n.devices) gate_nets.insert(d.gate);
  std::vector<tracked_complement> out;
  for (const auto& t : gate_nets) {
    if (t == input || n.is_declared(t)) continue;
    std::set<std::string> region_nets{t};
    std::set<std::string> region_devs;
    std::deque<std::string> q{t};
    bool ok = true;
    while (!q.empty() && ok) {
      const std::string net = q.front();
      q.pop_front();
      for (const auto& d : n.devices) {
        if (!d.touches(net)) continue;
        region_devs.insert(d.id);
        const std::string& other = d.other_end(net);
        if (is_rail(other)) continue;
        if (n.is_declared(other)) {
          ok = false;
          break;
        }
        if (region_nets.insert(other).second) q.push_back(other);
      }
    }
    if (!ok || region_devs.empty()) continue;
    bool uses_input = false;
    netlist sub;
    sub.vdd = n.vdd;
    sub.inputs.push_back({input, encoding::standard});
    sub.outputs.push_back({t, encoding::standard});
    for (const auto& d : n.devices) {
      if (!region_devs.count(d.id)) continue;
      if (d.gate == input) uses_input = true;
      else if (!is_rail(d.gate)) ok = false;
      sub.devices.push_back(d);
    }
    for (const auto& d : n.devices) {
      if (region_devs.count(d.id)) continue;
      for (const auto& net : region_nets) {
        if (net != t && d.gate == net) ok = false;
      }
    }
    if (!ok || !uses_input) continue;
    tracked_complement tc{t, {}, {region_devs.begin(), region_devs.end()}};
    const compiled_circuit c(sub);
    for (auto l : levels) {
      try {
        const auto sol = c.solve({l});
        const node_state s = sol.levels[c.outputs()[0]];
        if (!is_level(s)) {
          ok = false;
          break;
        }
        tc.function[l] = to_level(s);
      } catch (const solver_error&) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(tc));
  }
  return out;
}

namespace detail {

inline void check_assumption(const netlist& n, const assumption_domain& a) {
  const auto nets = n.all_nets();
  if (!std::binary_search(nets.begin(), nets.end(), a.net)) {
    throw simplify_error(simplify_error_kind::unknown_net, "unknown net '" + a.net + "'");
  }
  const input_decl* in = n.find_input(a.net);
  if (!in) throw simplify_error(simplify_error_kind::non_input_assumption, "'" + a.net + "' is not a declared input");
  if (a.levels.empty()) throw domain_error("assumption on '" + a.net + "' has no levels");
  const auto allowed = domain_levels(in->domain);
  for (auto l : a.levels) {
    if (std::find(allowed.begin(), allowed.end(), l) == allowed.end()) {
      throw domain_error("assumption on '" + a.net + "' widens its declared domain");
    }
  }
}

inline std::optional<encoding> named_domain(std::vector<voltage_level> levels) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (auto e : {encoding::standard, encoding::half_vdd_high, encoding::full_vdd_high}) {
    if (domain_levels(e) == levels) return e;
  }
  return std::nullopt;
}

enum class merge_outcome : std::uint8_t { merged, kept };

/// Replace an always-on device by a short. Exact merges are applied directly;
/// a merge into a source is kept only if `verify` accepts it.
template <typename Verify>
merge_outcome short_device(netlist& n, const std::string& id, Verify&& verify) {
  const device* d = n.find_device(id);
  const std::string a = d->source, b = d->drain;
  if (a == b) {
    erase_device(n, id);
    return merge_outcome::merged;
  }
  const bool da = n.is_declared(a), db = n.is_declared(b);
  if (da && db) {
    if (is_rail(a) && is_rail(b)) {
      throw simplify_error(simplify_error_kind::rail_merge, "device '" + id + "' would short VDD to GND");
    }
    return merge_outcome::kept;
  }
  std::string keep = a, drop = b;
  if (db || (!da && b < a)) std::swap(keep, drop);
  netlist trial = n;
  erase_device(trial, id);
  rename_net(trial, drop, keep);
  if (is_source_net(n, keep) && !verify(n, trial, drop, keep)) return merge_outcome::kept;
  n = std::move(trial);
  return merge_outcome::merged;
}

}  // namespace detail

/// Classify every device gated by the assumed net (or a tracked complement) and apply it.
[[nodiscard]] inline pass_result apply_assumption(const netlist& n, const assumption_domain& a) {
  detail::check_assumption(n, a);
  std::map<std::string, std::vector<voltage_level>> gate_levels;
  gate_levels[a.net] = a.levels;
  for (const auto& tc : find_complements(n, a.net, a.levels)) {
    std::set<voltage_level> s;
    for (auto l : a.levels) s.insert(tc.function.at(l));
    gate_levels[tc.net] = {s.begin(), s.end()};
  }
  const bool binary = detail::named_domain(a.levels) == encoding::full_vdd_high;

  pass_result r{n, {}};
  std::vector<std::string> wires;
  for (const auto& id : detail::sorted_ids(n)) {
    device* d = detail::find_device(r.circuit, id);
    auto it = gate_levels.find(d->gate);
    if (it == gate_levels.end()) continue;
    switch (classify_device(d->type, d->vt, it->second, binary, n.vdd)) {
      case device_action::open:
        detail::erase_device(r.circuit, id);
        ++r.report.opened;
        break;
      case device_action::remap_lvt:
        d->vt = threshold_class::lvt;
        ++r.report.remapped;
        break;
      case device_action::wire: wires.push_back(id); break;
      case device_action::keep: break;
    }
  }

  const auto points = detail::assumed_points(n, a);
  auto verify = [&](const netlist& before, const netlist& after, const std::string& drop, const std::string& keep) {
    const auto ref = detail::all_levels(before, points);
    const auto cand = detail::all_levels(after, points);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (ref[i].has_value() != cand[i].has_value()) return false;
      if (!ref[i]) continue;
      for (const auto& [net, lvl] : *ref[i]) {
        const std::string& mapped = net == drop ? keep : net;
        auto it = cand[i]->find(mapped);
        if (it == cand[i]->end() ? lvl != node_state::z : it->second != lvl) return false;
      }
    }
    return true;
  };
  for (const auto& id : wires) {
    if (detail::short_device(r.circuit, id, verify) == detail::merge_outcome::merged) ++r.report.wired;
  }

  if (auto e = detail::named_domain(a.levels)) {
    for (auto& in : r.circuit.inputs) {
      if (in.net == a.net) in.domain = *e;
    }
  }
  return r;
}

/// Remove devices that cannot influence any output.
[[nodiscard]] inline pass_result prune_dead(const netlist& n) {
  pass_result r{n, {}};
  netlist& c = r.circuit;
  const std::size_t before = c.devices.size();

  const auto degenerate = std::remove_if(c.devices.begin(), c.devices.end(),
                                         [](const device& d) { return d.source == d.drain; });
  c.devices.erase(degenerate, c.devices.end());

  for (bool changed = true; changed;) {
    changed = false;
    // Live: channel-reachable from outputs, closed under gate fan-in.
    std::set<std::string> live_devs;
    std::set<std::string> seen;
    std::deque<std::string> q;
    for (const auto& o : c.outputs) {
      if (seen.insert(o.net).second) q.push_back(o.net);
    }
    while (!q.empty()) {
      const std::string net = q.front();
      q.pop_front();
      for (const auto& d : c.devices) {
        if (!d.touches(net) || !live_devs.insert(d.id).second) continue;
        const std::string& other = d.other_end(net);
        if (!detail::is_source_net(c, other) && seen.insert(other).second) q.push_back(other);
        if (!detail::is_source_net(c, d.gate) && seen.insert(d.gate).second) q.push_back(d.gate);
      }
    }
    // Stubs: a channel ending on a private net nobody observes.
    std::map<std::string, std::size_t> degree;
    std::set<std::string> live_gates;
    for (const auto& d : c.devices) {
      if (!live_devs.count(d.id)) continue;
      ++degree[d.source];
      ++degree[d.drain];
      live_gates.insert(d.gate);
    }
    std::vector<device> kept;
    for (const auto& d : c.devices) {
      bool dead = !live_devs.count(d.id);
      for (const auto* end : {&d.source, &d.drain}) {
        if (!dead && !c.is_declared(*end) && degree[*end] == 1 && !live_gates.count(*end)) dead = true;
      }
      if (dead) changed = true;
      else kept.push_back(d);
    }
    c.devices = std::move(kept);
  }
  r.report.pruned = before - c.devices.size();

  std::set<std::string> used;
  for (const auto& d : c.devices) {
    used.insert(d.gate);
    used.insert(d.source);
    used.insert(d.drain);
  }
  for (auto it = c.nets.begin(); it != c.nets.end();) {
    if (!used.count(*it)) {
      it = c.nets.erase(it);
      ++r.report.pruned;
    } else {
      ++it;
    }
  }
  const auto stale = std::remove_if(c.loads.begin(), c.loads.end(), [&](const load& l) {
    return !used.count(l.net) && !c.is_declared(l.net);
  });
  r.report.pruned += static_cast<std::size_t>(c.loads.end() - stale);
  c.loads.erase(stale, c.loads.end());
  return r;
}

/// Collapse devices with equal (polarity, vt, gate, {source, drain}).
[[nodiscard]] inline pass_result factor_parallel(const netlist& n) {
  pass_result r{n, {}};
  std::sort(r.circuit.devices.begin(), r.circuit.devices.end(),
            [](const device& a, const device& b) { return a.id < b.id; });
  using key = std::tuple<polarity, threshold_class, std::string, std::string, std::string>;
  std::map<key, std::size_t> first;
  std::vector<device> kept;
  for (const auto& d : r.circuit.devices) {
    const key k{d.type, d.vt, d.gate, std::min(d.source, d.drain), std::max(d.source, d.drain)};
    auto [it, fresh] = first.emplace(k, kept.size());
    if (fresh) {
      kept.push_back(d);
      continue;
    }
    for (const auto& t : d.tags) kept[it->second].add_tag(t);
    ++r.report.factored;
  }
  r.circuit.devices = std::move(kept);
  return r;
}

namespace detail {

inline std::string fresh_name(const netlist& n, const std::string& base) {
  const auto nets = n.all_nets();
  std::string name = base;
  for (int i = 1; std::binary_search(nets.begin(), nets.end(), name) || n.find_device(name + "_p") ||
                  n.find_device(name + "_n");
       ++i) {
    name = base + std::to_string(i);
  }
  return name;
}

// Devices on the carry's channel region that conduct, gated by a rail, in every divided state.
inline std::vector<std::string> detect_dividers(const netlist& n, const std::string& carry) {
  const compiled_circuit c(n);
  const int ci = c.index(carry);
  std::optional<std::set<std::string>> common;
  for (const auto& p : product(input_domain(n))) {
    raw_solution sol;
    try {
      sol = c.solve(p);
    } catch (const solver_error&) {
      continue;
    }
    const std::vector<int>* region = nullptr;
    for (const auto& r : sol.division_regions) {
      if (std::binary_search(r.begin(), r.end(), ci)) region = &r;
    }
    if (!region) continue;
    std::set<std::string> names;
    for (int i : *region) names.insert(c.net_names()[i]);
    std::set<std::string> here;
    for (const auto& d : n.devices) {
      if (!is_rail(d.gate)) continue;
      if (!names.count(d.source) && !names.count(d.drain)) continue;
      if (conducts(d.type, d.vt, d.gate == rail_vdd ? voltage_level::vdd : voltage_level::gnd, n.vdd)) {
        here.insert(d.id);
      }
    }
    if (!common) {
      common = here;
    } else {
      std::set<std::string> both;
      std::set_intersection(common->begin(), common->end(), here.begin(), here.end(),
                            std::inserter(both, both.begin()));
      common = std::move(both);
    }
  }
  if (!common) return {};
  return {common->begin(), common->end()};
}

}  // namespace detail

/// Remove the carry's voltage divider so logical 1 is carried at VDD, and move
/// every half-level input to the binary domain.
[[nodiscard]] inline pass_result rebind_carry(const netlist& n, const std::string& carry) {
  {
    const auto nets = n.all_nets();
    if (!std::binary_search(nets.begin(), nets.end(), carry)) {
      throw simplify_error(simplify_error_kind::unknown_net, "unknown net '" + carry + "'");
    }
    if (!n.is_output(carry)) throw domain_error("carry net '" + carry + "' is not a declared output");
  }
  pass_result r{n, {}};
  netlist& c = r.circuit;

  std::vector<std::string> dividers;
  {
    const auto mine = detail::channel_reach(n, carry);
    std::set<std::string> others;
    for (const auto& o : n.outputs) {
      if (o.net == carry) continue;
      const auto reach = detail::channel_reach(n, o.net);
      others.insert(reach.begin(), reach.end());
    }
    for (const auto& id : mine) {
      if (n.find_device(id)->has_tag("divider") && !others.count(id)) dividers.push_back(id);
    }
  }
  if (dividers.empty()) dividers = detail::detect_dividers(n, carry);
  if (dividers.empty()) {
    throw simplify_error(simplify_error_kind::no_divider_found, "no voltage divider found on '" + carry + "'");
  }

  auto accept = [](const netlist&, const netlist&, const std::string&, const std::string&) { return true; };
  for (const auto& id : dividers) {
    if (c.find_device(id)->type == polarity::p) {
      if (detail::short_device(c, id, accept) == detail::merge_outcome::merged) ++r.report.wired;
    } else {
      detail::erase_device(c, id);
      ++r.report.opened;
    }
  }

  for (auto& in : n.inputs) {
    if (in.domain != encoding::half_vdd_high) continue;
    const std::string& x = in.net;
    const std::vector<voltage_level> old_levels = domain_levels(encoding::half_vdd_high);
    // Logical value (0/1) at which each gate net conducts, per polarity and vt.
    std::map<std::string, std::map<voltage_level, voltage_level>> gate_fn;
    gate_fn[x] = {{voltage_level::gnd, voltage_level::gnd}, {voltage_level::half, voltage_level::half}};
    std::set<std::string> doomed;
    for (const auto& tc : find_complements(c, x, old_levels)) {
      gate_fn[tc.net] = tc.function;
      doomed.insert(tc.devices.begin(), tc.devices.end());
    }
    std::vector<device> kept;
    for (const auto& d : c.devices) {
      if (doomed.count(d.id)) ++r.report.pruned;
      else kept.push_back(d);
    }
    c.devices = std::move(kept);

    std::string bar;
    std::vector<std::string> shorts;
    for (const auto& id : detail::sorted_ids(c)) {
      device* d = detail::find_device(c, id);
      auto it = gate_fn.find(d->gate);
      if (it == gate_fn.end()) continue;
      const bool on0 = conducts(d->type, d->vt, it->second.at(voltage_level::gnd), c.vdd);
      const bool on1 = conducts(d->type, d->vt, it->second.at(voltage_level::half), c.vdd);
      if (on0 && on1) {
        shorts.push_back(id);
        continue;
      }
      if (!on0 && !on1) {
        detail::erase_device(c, id);
        ++r.report.opened;
        continue;
      }
      // N conducts at VDD, P at GND: pick x or its binary complement accordingly.
      const bool want_high = d->type == polarity::n ? on1 : on0;
      if (!want_high && bar.empty()) bar = detail::fresh_name(c, x + "_bar");
      d->gate = want_high ? x : bar;
      d->vt = threshold_class::lvt;
      ++r.report.remapped;
    }
    for (const auto& id : shorts) {
      if (detail::short_device(c, id, accept) == detail::merge_outcome::merged) ++r.report.wired;
    }
    if (!bar.empty()) {
      c.devices.push_back({bar + "_p", polarity::p, threshold_class::mvt, x, std::string(rail_vdd), bar, {}});
      c.devices.push_back({bar + "_n", polarity::n, threshold_class::mvt, x, bar, std::string(rail_gnd), {}});
    }
    for (auto& decl : c.inputs) {
      if (decl.net == x) decl.domain = encoding::full_vdd_high;
    }
  }
  for (auto& o : c.outputs) {
    if (o.net == carry) o.enc = encoding::full_vdd_high;
  }

  auto pruned = prune_dead(c);
  r.report += pruned.report;
  c = std::move(pruned.circuit);

  const auto logical = detail::logical_points(n);
  const auto before = detail::evaluate(n, detail::encode_points(n, logical), true);
  const auto after = detail::evaluate(c, detail::encode_points(c, logical), true);
  if (!detail::outcomes_agree(before, after)) {
    throw simplify_error(simplify_error_kind::equivalence_check_failed,
                         "decoded truth changed while rebinding '" + carry + "'");
  }
  return r;
}

/// assume -> prune -> factor [-> rebind -> prune], with equivalence as a postcondition.
[[nodiscard]] inline pass_result simplify_pipeline(const netlist& n, const assumption_domain& a,
                                                   const std::optional<std::string>& rebind = std::nullopt) {
  pass_result r{n, {}};
  auto step = [&](pass_result s) {
    r.report += s.report;
    r.circuit = std::move(s.circuit);
  };
  // A merge can hand the assumed domain to nets it did not reach before, so sweep to a fixed point.
  for (std::size_t round = 0; round <= n.devices.size(); ++round) {
    const netlist before = r.circuit;
    step(apply_assumption(r.circuit, a));
    step(prune_dead(r.circuit));
    step(factor_parallel(r.circuit));
    if (structurally_equal(before, r.circuit)) break;
  }

  const auto points = detail::assumed_points(n, a);
  if (!detail::outcomes_agree(detail::evaluate(n, points, false), detail::evaluate(r.circuit, points, false))) {
    throw simplify_error(simplify_error_kind::equivalence_check_failed,
                         "simplified netlist differs on the assumed domain");
  }
  if (rebind) {
    step(rebind_carry(r.circuit, *rebind));
    step(prune_dead(r.circuit));
  }
  return r;
}

}  // namespace tritforge
