// tritforge/netlist.hpp: flat transistor netlist IR
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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trit.hpp"

namespace tritforge {

inline constexpr std::string_view rail_vdd = "VDD";
inline constexpr std::string_view rail_gnd = "GND";

[[nodiscard]] inline bool is_rail(std::string_view net) noexcept { return net == rail_vdd || net == rail_gnd; }

enum class polarity : std::uint8_t { n, p };

/// CNFET threshold classes; the chirality index fixes the tube diameter.
enum class threshold_class : std::uint8_t { hvt, mvt, lvt, ulvt };

inline constexpr std::array<threshold_class, 4> all_threshold_classes{
    threshold_class::hvt, threshold_class::mvt, threshold_class::lvt, threshold_class::ulvt};

[[nodiscard]] constexpr int chirality_n(threshold_class vt) noexcept {
  switch (vt) {
    case threshold_class::hvt: return 10;
    case threshold_class::mvt: return 14;
    case threshold_class::lvt: return 19;
    case threshold_class::ulvt: return 25;
  }
  return 0;
}

/// Zigzag (n,0) tube diameter in nm.
[[nodiscard]] constexpr double cnt_diameter_nm(int n) noexcept { return 0.0783 * n; }

/// Vt = 0.43 / d(nm), in volts.
[[nodiscard]] constexpr double threshold_volts(threshold_class vt) noexcept {
  return 0.43 / cnt_diameter_nm(chirality_n(vt));
}

[[nodiscard]] inline std::string_view to_string(polarity p) noexcept { return p == polarity::n ? "n" : "p"; }

[[nodiscard]] inline std::string_view to_string(threshold_class vt) noexcept {
  switch (vt) {
    case threshold_class::hvt: return "hvt";
    case threshold_class::mvt: return "mvt";
    case threshold_class::lvt: return "lvt";
    case threshold_class::ulvt: return "ulvt";
  }
  return "?";
}

/// Input domain keyword in the text format for an encoding.
[[nodiscard]] inline std::string_view domain_name(encoding enc) noexcept {
  switch (enc) {
    case encoding::standard: return "ternary";
    case encoding::half_vdd_high: return "halfpair";
    case encoding::full_vdd_high: return "binary";
  }
  return "?";
}

[[nodiscard]] inline std::string_view output_encoding_name(encoding enc) noexcept {
  switch (enc) {
    case encoding::standard: return "standard";
    case encoding::half_vdd_high: return "half";
    case encoding::full_vdd_high: return "vdd";
  }
  return "?";
}

/// Levels a net declared with `enc` may take, ascending.
[[nodiscard]] inline std::vector<voltage_level> domain_levels(encoding enc) {
  switch (enc) {
    case encoding::standard: return {voltage_level::gnd, voltage_level::half, voltage_level::vdd};
    case encoding::half_vdd_high: return {voltage_level::gnd, voltage_level::half};
    case encoding::full_vdd_high: return {voltage_level::gnd, voltage_level::vdd};
  }
  return {};
}

struct device {
  std::string id;
  polarity type = polarity::n;
  threshold_class vt = threshold_class::mvt;
  std::string gate;
  std::string source;
  std::string drain;
  std::vector<std::string> tags;  // sorted, unique

  [[nodiscard]] bool has_tag(std::string_view t) const {
    return std::find(tags.begin(), tags.end(), t) != tags.end();
  }
  void add_tag(std::string t) {
    auto it = std::lower_bound(tags.begin(), tags.end(), t);
    if (it == tags.end() || *it != t) tags.insert(it, std::move(t));
  }
  [[nodiscard]] bool touches(std::string_view net) const { return source == net || drain == net; }
  /// The channel terminal opposite to `net`.
  [[nodiscard]] const std::string& other_end(std::string_view net) const { return source == net ? drain : source; }

  bool operator==(const device&) const = default;
};

struct input_decl {
  std::string net;
  encoding domain = encoding::standard;

  bool operator==(const input_decl&) const = default;
};

struct output_decl {
  std::string net;
  encoding enc = encoding::standard;

  bool operator==(const output_decl&) const = default;
};

struct load {
  std::string id;
  std::string net;
  double farads = 0.0;

  bool operator==(const load&) const = default;
};

struct netlist {
  std::string title;
  double vdd = default_vdd;
  std::set<std::string> nets;  // explicitly declared with `.net`
  std::vector<input_decl> inputs;
  std::vector<output_decl> outputs;
  std::vector<device> devices;
  std::vector<load> loads;

  [[nodiscard]] const input_decl* find_input(std::string_view net) const {
    for (const auto& i : inputs) {
      if (i.net == net) return &i;
    }
    return nullptr;
  }
  [[nodiscard]] const output_decl* find_output(std::string_view net) const {
    for (const auto& o : outputs) {
      if (o.net == net) return &o;
    }
    return nullptr;
  }
  [[nodiscard]] bool is_input(std::string_view net) const { return find_input(net) != nullptr; }
  [[nodiscard]] bool is_output(std::string_view net) const { return find_output(net) != nullptr; }
  /// Rails, inputs and outputs: names that belong to the interface.
  [[nodiscard]] bool is_declared(std::string_view net) const {
    return is_rail(net) || is_input(net) || is_output(net);
  }
  [[nodiscard]] const device* find_device(std::string_view id) const {
    for (const auto& d : devices) {
      if (d.id == id) return &d;
    }
    return nullptr;
  }

  /// Every net name referenced anywhere, rails included, sorted.
  [[nodiscard]] std::vector<std::string> all_nets() const {
    std::set<std::string> s(nets.begin(), nets.end());
    s.emplace(rail_vdd);
    s.emplace(rail_gnd);
    for (const auto& i : inputs) s.insert(i.net);
    for (const auto& o : outputs) s.insert(o.net);
    for (const auto& d : devices) {
      s.insert(d.gate);
      s.insert(d.source);
      s.insert(d.drain);
    }
    for (const auto& l : loads) s.insert(l.net);
    return {s.begin(), s.end()};
  }

  [[nodiscard]] double total_load() const {
    double c = 0.0;
    for (const auto& l : loads) c += l.farads;
    return c;
  }

  bool operator==(const netlist&) const = default;
};

/// Devices and loads sorted by id, tags normalised; the structural identity used by round trips.
[[nodiscard]] inline netlist canonical(netlist n) {
  std::sort(n.devices.begin(), n.devices.end(), [](const device& a, const device& b) { return a.id < b.id; });
  for (auto& d : n.devices) {
    std::sort(d.tags.begin(), d.tags.end());
    d.tags.erase(std::unique(d.tags.begin(), d.tags.end()), d.tags.end());
  }
  std::sort(n.loads.begin(), n.loads.end(), [](const load& a, const load& b) { return a.id < b.id; });
  return n;
}

[[nodiscard]] inline bool structurally_equal(const netlist& a, const netlist& b) { return canonical(a) == canonical(b); }

struct device_counts {
  std::map<std::pair<polarity, threshold_class>, std::size_t> by_class;
  std::size_t total = 0;

  [[nodiscard]] std::size_t count(polarity p, threshold_class vt) const {
    auto it = by_class.find({p, vt});
    return it == by_class.end() ? 0 : it->second;
  }
  [[nodiscard]] std::size_t count(polarity p) const {
    std::size_t c = 0;
    for (const auto& [k, v] : by_class) {
      if (k.first == p) c += v;
    }
    return c;
  }
};

/// Device totals; the total is the area proxy.
[[nodiscard]] inline device_counts device_count(const netlist& n) {
  device_counts c;
  for (const auto& d : n.devices) ++c.by_class[{d.type, d.vt}];
  c.total = n.devices.size();
  return c;
}

/// Transistor reduction in percent, e.g. 106 -> 74 gives 30.19.
[[nodiscard]] inline double reduction_percent(std::size_t old_count, std::size_t new_count) {
  return improvement_percent(static_cast<double>(old_count), static_cast<double>(new_count));
}

}  // namespace tritforge
