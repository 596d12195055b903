// tritforge/synth.hpp: pull-network synthesis for ternary and binary gates
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
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "netlist.hpp"
#include "solver.hpp"

namespace tritforge {

/// A net together with the logical value it carries at every primary input point.
/// A value of -1 marks a point where the net is unconstrained.
struct signal {
  std::string net;
  encoding enc = encoding::standard;
  std::vector<int> values;
};

/// How gate inputs are presented to pull networks.
enum class literal_mode : std::uint8_t {
  direct,   // the signal plus single-stage complements (NTI/PTI or binary inverter)
  decoded,  // one-hot indicators and their complements
};

namespace detail {

enum class literal_kind : std::uint8_t { self, nti, pti, inv, ind, nind };

struct literal {
  polarity type;
  threshold_class vt;
  std::size_t input;
  literal_kind kind;
  int value;           // indicator value for ind/nind
  unsigned set;        // bitmask of logical input values at which the device conducts
};

struct subset_option {
  unsigned mask;
  std::vector<literal> devices;
};

[[nodiscard]] inline voltage_level inverted(voltage_level l, literal_kind k) {
  switch (k) {
    case literal_kind::nti:
    case literal_kind::inv: return l == voltage_level::gnd ? voltage_level::vdd : voltage_level::gnd;
    case literal_kind::pti: return l == voltage_level::vdd ? voltage_level::gnd : voltage_level::vdd;
    default: return l;
  }
}

}  // namespace detail

/// Builds a netlist gate by gate over a fixed set of primary input points.
class circuit_builder {
 public:
  explicit circuit_builder(std::vector<std::vector<int>> points, double vdd = default_vdd)
      : points_(std::move(points)) {
    n_.vdd = vdd;
  }

  [[nodiscard]] netlist& circuit() noexcept { return n_; }
  [[nodiscard]] const std::vector<std::vector<int>>& points() const noexcept { return points_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

  signal input(const std::string& name, encoding domain, std::size_t column) {
    n_.inputs.push_back({name, domain});
    signal s{name, domain, {}};
    for (const auto& p : points_) s.values.push_back(p[column]);
    return s;
  }

  void output(const std::string& net, encoding enc) { n_.outputs.push_back({net, enc}); }

  std::string fresh_net() {
    char buf[32];
    std::snprintf(buf, sizeof buf, "n%03d", ++net_counter_);
    return buf;
  }

  void device(polarity p, threshold_class vt, const std::string& g, const std::string& s, const std::string& d,
              std::vector<std::string> extra_tags = {}) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "m%03d", ++device_counter_);
    struct device dev{buf, p, vt, g, s, d, {}};
    for (const auto& t : tags_) dev.add_tag(t);
    for (auto& t : extra_tags) dev.add_tag(std::move(t));
    n_.devices.push_back(std::move(dev));
  }

  /// Restores the tag set on destruction.
  class tag_guard {
   public:
    tag_guard(std::vector<std::string>& slot, std::vector<std::string> next)
        : slot_(slot), saved_(std::exchange(slot, std::move(next))) {}
    tag_guard(const tag_guard&) = delete;
    tag_guard& operator=(const tag_guard&) = delete;
    ~tag_guard() { slot_ = std::move(saved_); }

   private:
    std::vector<std::string>& slot_;
    std::vector<std::string> saved_;
  };

  /// Tags applied to every device created while the guard lives.
  [[nodiscard]] tag_guard tag_scope(const std::vector<std::string>& tags) {
    auto next = tags_;
    next.insert(next.end(), tags.begin(), tags.end());
    return tag_guard(tags_, std::move(next));
  }

  // --- single-stage inverters -------------------------------------------------

  std::string nti(const signal& x) {
    return cached(x.net + "_nti", [&](const std::string& y) {
      device(polarity::p, threshold_class::hvt, x.net, std::string(rail_vdd), y);
      device(polarity::n, threshold_class::lvt, x.net, y, std::string(rail_gnd));
    });
  }
  std::string pti(const signal& x) {
    return cached(x.net + "_pti", [&](const std::string& y) {
      device(polarity::p, threshold_class::lvt, x.net, std::string(rail_vdd), y);
      device(polarity::n, threshold_class::hvt, x.net, y, std::string(rail_gnd));
    });
  }
  std::string inv(const signal& x) {
    return cached(x.net + "_inv", [&](const std::string& y) {
      device(polarity::p, threshold_class::mvt, x.net, std::string(rail_vdd), y);
      device(polarity::n, threshold_class::mvt, x.net, y, std::string(rail_gnd));
    });
  }

  /// Binary net that is VDD exactly when x == v (or when x != v for the complement).
  std::string indicator(const signal& x, int v, bool complement) {
    if (x.enc == encoding::full_vdd_high) return (v == 1) != complement ? x.net : inv(x);
    const std::string name = x.net + (complement ? "_not" : "_is") + std::to_string(v);
    if (auto it = cache_.find(name); it != cache_.end()) return it->second;
    std::vector<int> f;
    for (int xv : x.values) f.push_back(xv < 0 ? -1 : ((xv == v) != complement ? 1 : 0));
    auto scope = clear_tags();
    binary_gate({x}, f, name, literal_mode::direct);
    cache_.emplace(name, name);
    return name;
  }

  // --- gates ------------------------------------------------------------------

  /// Full-swing binary gate; the output carries logical 1 at VDD.
  signal binary_gate(const std::vector<signal>& in, const std::vector<int>& f, const std::string& out,
                     literal_mode mode) {
    network(in, polarity::p, select(f, {1}), select(f, {0}), mode, std::string(rail_vdd), out, true);
    network(in, polarity::n, select(f, {0}), select(f, {1}), mode, out, std::string(rail_gnd), true);
    return {out, encoding::full_vdd_high, f};
  }

  /// Ternary CMOS gate: PUN2/PDN2 pull to the rails, PUN1/PDN1 meet through a
  /// P/N divider pair to produce the half level.
  signal ternary_gate(const std::vector<signal>& in, const std::vector<int>& f, const std::string& out,
                      literal_mode mode) {
    network(in, polarity::p, select(f, {2}), select(f, {0, 1}), mode, std::string(rail_vdd), out, true);
    network(in, polarity::n, select(f, {0}), select(f, {1, 2}), mode, out, std::string(rail_gnd), true);
    const auto ones = select(f, {1});
    if (!ones.empty()) {
      std::string m1 = std::string(rail_vdd), m2 = std::string(rail_gnd);
      if (!always_on(in, polarity::p, ones, select(f, {0}), mode)) {
        m1 = fresh_net();
        network(in, polarity::p, ones, select(f, {0}), mode, std::string(rail_vdd), m1, false);
      }
      if (!always_on(in, polarity::n, ones, select(f, {2}), mode)) {
        m2 = fresh_net();
        network(in, polarity::n, ones, select(f, {2}), mode, m2, std::string(rail_gnd), false);
      }
      divider(m1, out, m2);
    }
    return {out, encoding::standard, f};
  }

  /// Diode-style pair: P (gate GND) from `up` to `mid`, N (gate VDD) from `mid` to `down`.
  void divider(const std::string& up, const std::string& mid, const std::string& down) {
    device(polarity::p, threshold_class::lvt, std::string(rail_gnd), up, mid, {"divider"});
    device(polarity::n, threshold_class::lvt, std::string(rail_vdd), mid, down, {"divider"});
  }

  /// Literals available for a signal, in preference order.
  std::vector<detail::literal> literals(const signal& x, std::size_t input, polarity p, literal_mode mode) const {
    using detail::literal_kind;
    std::vector<detail::literal> out;
    const int k = arity(x.enc);
    auto add = [&](threshold_class vt, literal_kind kind, int value) {
      unsigned set = 0;
      for (int v = 0; v < k; ++v) {
        voltage_level g = encode(trit{v}, x.enc);
        if (kind == literal_kind::ind) g = v == value ? voltage_level::vdd : voltage_level::gnd;
        else if (kind == literal_kind::nind) g = v == value ? voltage_level::gnd : voltage_level::vdd;
        else g = detail::inverted(g, kind);
        if (conducts(p, vt, g, n_.vdd)) set |= 1u << v;
      }
      const unsigned full = (1u << k) - 1;
      if (set == 0 || set == full) return;
      for (const auto& l : out) {
        if (l.set == set) return;
      }
      out.push_back({p, vt, input, kind, value, set});
    };
    if (mode == literal_mode::decoded) {
      for (int v = 0; v < k; ++v) {
        add(threshold_class::lvt, literal_kind::ind, v);
        add(threshold_class::lvt, literal_kind::nind, v);
      }
      return out;
    }
    add(threshold_class::hvt, literal_kind::self, 0);
    add(threshold_class::lvt, literal_kind::self, 0);
    if (x.enc == encoding::full_vdd_high) {
      add(threshold_class::lvt, literal_kind::inv, 0);
    } else {
      add(threshold_class::lvt, literal_kind::nti, 0);
      if (x.enc == encoding::standard) add(threshold_class::lvt, literal_kind::pti, 0);
    }
    return out;
  }

 private:
  using cube = std::vector<const detail::subset_option*>;

  static std::vector<std::size_t> select(const std::vector<int>& f, std::initializer_list<int> values) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (int v : values) {
        if (f[i] == v) out.push_back(i);
      }
    }
    return out;
  }

  tag_guard clear_tags() { return tag_guard(tags_, {}); }

  std::string cached(const std::string& name, const std::function<void(const std::string&)>& build) {
    if (auto it = cache_.find(name); it != cache_.end()) return it->second;
    auto scope = clear_tags();
    build(name);
    cache_.emplace(name, name);
    return name;
  }

  std::string gate_net(const std::vector<signal>& in, const detail::literal& l) {
    const signal& x = in[l.input];
    switch (l.kind) {
      case detail::literal_kind::self: return x.net;
      case detail::literal_kind::nti: return nti(x);
      case detail::literal_kind::pti: return pti(x);
      case detail::literal_kind::inv: return inv(x);
      case detail::literal_kind::ind: return indicator(x, l.value, false);
      case detail::literal_kind::nind: return indicator(x, l.value, true);
    }
    return x.net;
  }

  std::vector<std::vector<detail::subset_option>> options(const std::vector<signal>& in, polarity p,
                                                          literal_mode mode) const {
    std::vector<std::vector<detail::subset_option>> out;
    for (std::size_t i = 0; i < in.size(); ++i) {
      const auto lits = literals(in[i], i, p, mode);
      const unsigned full = (1u << arity(in[i].enc)) - 1;
      std::vector<detail::subset_option> opts{{full, {}}};
      auto have = [&](unsigned m) {
        for (const auto& o : opts) {
          if (o.mask == m) return true;
        }
        return false;
      };
      for (const auto& l : lits) {
        if (!have(l.set)) opts.push_back({l.set, {l}});
      }
      for (std::size_t a = 0; a < lits.size(); ++a) {
        for (std::size_t b = a + 1; b < lits.size(); ++b) {
          const unsigned m = lits[a].set & lits[b].set;
          if (m != 0 && !have(m)) opts.push_back({m, {lits[a], lits[b]}});
        }
      }
      out.push_back(std::move(opts));
    }
    return out;
  }

  // Greedy cube cover of `on` avoiding `off`; inputs are matched per point.
  std::vector<cube> cover(const std::vector<signal>& in, const std::vector<std::vector<detail::subset_option>>& opts,
                          const std::vector<std::size_t>& on, const std::vector<std::size_t>& off) const {
    std::vector<cube> all;
    cube cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == opts.size()) {
        all.push_back(cur);
        return;
      }
      for (const auto& o : opts[i]) {
        cur.push_back(&o);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    auto contains = [&](const cube& c, std::size_t point) {
      for (std::size_t i = 0; i < in.size(); ++i) {
        const int v = in[i].values[point];
        if (v < 0 || !(c[i]->mask & (1u << v))) return false;
      }
      return true;
    };
    auto devices = [](const cube& c) {
      std::size_t k = 0;
      for (const auto* o : c) k += o->devices.size();
      return k;
    };
    std::vector<cube> valid;
    for (const auto& c : all) {
      bool ok = true;
      for (std::size_t p : off) {
        if (contains(c, p)) {
          ok = false;
          break;
        }
      }
      if (ok) valid.push_back(c);
    }
    std::vector<bool> covered(size(), false);
    std::size_t remaining = on.size();
    std::vector<cube> chosen;
    while (remaining > 0) {
      const cube* best = nullptr;
      std::size_t best_gain = 0, best_cost = 0;
      for (const auto& c : valid) {
        std::size_t gain = 0;
        for (std::size_t p : on) {
          if (!covered[p] && contains(c, p)) ++gain;
        }
        const std::size_t cost = devices(c);
        if (gain > best_gain || (gain == best_gain && gain > 0 && cost < best_cost)) {
          best = &c;
          best_gain = gain;
          best_cost = cost;
        }
      }
      if (!best) throw error("synthesis: an on-point cannot be separated from the off-set");
      for (std::size_t p : on) {
        if (!covered[p] && contains(*best, p)) {
          covered[p] = true;
          --remaining;
        }
      }
      chosen.push_back(*best);
    }
    return chosen;
  }

  bool always_on(const std::vector<signal>& in, polarity p, const std::vector<std::size_t>& on,
                 const std::vector<std::size_t>& off, literal_mode mode) const {
    if (on.empty()) return false;
    const auto opts = options(in, p, mode);
    for (const auto& c : cover(in, opts, on, off)) {
      std::size_t k = 0;
      for (const auto* o : c) k += o->devices.size();
      if (k == 0) return true;
    }
    return false;
  }

  /// Series-parallel network between `top` and `bottom` conducting on `on`, never on `off`.
  /// An always-on cover becomes a single rail-gated device when `tie` is set.
  void network(const std::vector<signal>& in, polarity p, const std::vector<std::size_t>& on,
               const std::vector<std::size_t>& off, literal_mode mode, const std::string& top,
               const std::string& bottom, bool tie) {
    if (on.empty()) return;
    const auto opts = options(in, p, mode);
    const auto cubes = cover(in, opts, on, off);
    for (const auto& c : cubes) {
      std::vector<detail::literal> chain;
      for (const auto* o : c) chain.insert(chain.end(), o->devices.begin(), o->devices.end());
      if (chain.empty()) {
        if (tie) {
          device(p, threshold_class::lvt, std::string(p == polarity::p ? rail_gnd : rail_vdd), top, bottom, {"tie"});
        }
        return;
      }
    }
    for (const auto& c : cubes) {
      std::vector<detail::literal> chain;
      for (const auto* o : c) chain.insert(chain.end(), o->devices.begin(), o->devices.end());
      std::string from = top;
      for (std::size_t k = 0; k < chain.size(); ++k) {
        const std::string to = k + 1 == chain.size() ? bottom : fresh_net();
        const std::string g = gate_net(in, chain[k]);
        device(chain[k].type, chain[k].vt, g, from, to);
        from = to;
      }
    }
  }

  netlist n_;
  std::vector<std::vector<int>> points_;
  std::vector<std::string> tags_;
  std::map<std::string, std::string> cache_;
  int net_counter_ = 0;
  int device_counter_ = 0;
};

}  // namespace tritforge
