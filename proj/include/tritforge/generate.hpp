// tritforge/generate.hpp: reference gates, full/half adders, test bench, ripple-carry adder
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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "netlist_io.hpp"
#include "solver.hpp"
#include "synth.hpp"

namespace tritforge {

class unsupported_combination : public error {
 public:
  using error::error;
};

enum class logic_style : std::uint8_t { ternary_cmos, ntpt, mux_pttg, decoder_encoder };
enum class completeness : std::uint8_t { complete, partial };
enum class cascade_mode : std::uint8_t { direct, two_tha };

inline constexpr std::array<logic_style, 4> all_styles{logic_style::ternary_cmos, logic_style::ntpt,
                                                       logic_style::mux_pttg, logic_style::decoder_encoder};

[[nodiscard]] inline std::string_view to_string(logic_style s) noexcept {
  switch (s) {
    case logic_style::ternary_cmos: return "ternary-cmos";
    case logic_style::ntpt: return "ntpt";
    case logic_style::mux_pttg: return "mux";
    case logic_style::decoder_encoder: return "decenc";
  }
  return "?";
}

[[nodiscard]] inline std::optional<logic_style> parse_style(std::string_view s) {
  for (auto st : all_styles) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

struct style_spec {
  logic_style style = logic_style::ternary_cmos;
  completeness comp = completeness::complete;
  encoding carry = encoding::half_vdd_high;
  cascade_mode cascade = cascade_mode::direct;
};

[[nodiscard]] inline std::string describe(const style_spec& s) {
  std::string out(to_string(s.style));
  out += s.comp == completeness::complete ? "/complete" : "/partial";
  out += s.carry == encoding::full_vdd_high ? "/vdd" : "/half";
  out += s.cascade == cascade_mode::direct ? "/direct" : "/two-tha";
  return out;
}

inline void check_spec(const style_spec& s) {
  if (s.carry == encoding::standard) throw unsupported_combination("carry encoding must be half or vdd");
  if (s.comp == completeness::complete && s.carry == encoding::full_vdd_high) {
    throw unsupported_combination("a complete adder cannot carry logical 1 at VDD");
  }
}

/// The encoding each adder port uses under a spec.
struct adder_ports {
  encoding cin_domain;
  encoding carry_out;
};

[[nodiscard]] inline adder_ports ports_of(const style_spec& s) {
  if (s.comp == completeness::complete) return {encoding::standard, encoding::standard};
  return {s.carry, s.carry};
}

namespace detail {

/// Realizes functions of already built signals in one logic style.
class style_gates {
 public:
  style_gates(circuit_builder& b, logic_style style) : b_(b), style_(style) {}

  /// Output `net` computing f; `enc` is standard, half_vdd_high (values {0,1}) or full_vdd_high.
  signal make(const std::vector<signal>& in, const std::vector<int>& f, const std::string& net, encoding enc) {
    signal s;
    switch (style_) {
      case logic_style::ternary_cmos:
        s = enc == encoding::full_vdd_high ? b_.binary_gate(in, f, net, literal_mode::direct)
                                           : b_.ternary_gate(in, f, net, literal_mode::direct);
        break;
      case logic_style::ntpt: s = ntpt(in, f, net, enc); break;
      case logic_style::mux_pttg: s = mux(in, f, net, enc); break;
      case logic_style::decoder_encoder: s = decenc(in, f, net, enc); break;
    }
    s.enc = enc;
    return s;
  }

 private:
  static std::vector<int> map_values(const std::vector<int>& f, const std::function<int(int)>& g) {
    std::vector<int> out;
    for (int v : f) out.push_back(v < 0 ? -1 : g(v));
    return out;
  }
  static bool any_of(const std::vector<int>& f, int v) { return std::find(f.begin(), f.end(), v) != f.end(); }

  // Two binary functions joined by a divider: Out+ = [f >= 1], Out- = [f == 2].
  signal ntpt(const std::vector<signal>& in, const std::vector<int>& f, const std::string& net, encoding enc) {
    if (enc == encoding::full_vdd_high) return b_.binary_gate(in, f, net, literal_mode::direct);
    const std::string plus = b_.fresh_net();
    b_.binary_gate(in, map_values(f, [](int v) { return v >= 1 ? 1 : 0; }), plus, literal_mode::direct);
    std::string minus(rail_gnd);
    if (any_of(f, 2)) {
      minus = b_.fresh_net();
      b_.binary_gate(in, map_values(f, [](int v) { return v == 2 ? 1 : 0; }), minus, literal_mode::direct);
    }
    b_.divider(plus, net, minus);
    return {net, enc, f};
  }

  // One-hot decode, binary mid-gates, then an encoder stage.
  signal decenc(const std::vector<signal>& in, const std::vector<int>& f, const std::string& net, encoding enc) {
    if (enc == encoding::full_vdd_high) return b_.binary_gate(in, f, net, literal_mode::decoded);
    auto gate = [&](int v, bool complement) {
      const std::string y = b_.fresh_net();
      b_.binary_gate(in, map_values(f, [&](int x) { return (x == v) != complement ? 1 : 0; }), y,
                     literal_mode::decoded);
      return y;
    };
    const std::string vdd(rail_vdd), gnd(rail_gnd);
    if (any_of(f, 2)) b_.device(polarity::p, threshold_class::lvt, gate(2, true), vdd, net);
    if (any_of(f, 0)) b_.device(polarity::n, threshold_class::lvt, gate(0, false), net, gnd);
    if (any_of(f, 1)) {
      const std::string m1 = b_.fresh_net(), m2 = b_.fresh_net();
      b_.device(polarity::p, threshold_class::lvt, gate(1, true), vdd, m1);
      b_.device(polarity::n, threshold_class::lvt, gate(1, false), m2, gnd);
      b_.divider(m1, net, m2);
    }
    return {net, enc, f};
  }

  // Transmission-gate tree: the last input selects first, data are functions of in[0].
  signal mux(const std::vector<signal>& in, const std::vector<int>& f, const std::string& net, encoding enc) {
    std::vector<std::size_t> all(b_.size());
    std::iota(all.begin(), all.end(), 0);
    if (in.size() < 2) return fallback(in, f, net, enc);
    const std::string root = node(in, f, net, enc, all, in.size() - 1, net);
    if (root != net) return fallback(in, f, net, enc);
    return {net, enc, f};
  }

  signal fallback(const std::vector<signal>& in, const std::vector<int>& f, const std::string& net, encoding enc) {
    return enc == encoding::full_vdd_high ? b_.binary_gate(in, f, net, literal_mode::direct)
                                          : b_.ternary_gate(in, f, net, literal_mode::direct);
  }

  std::string node(const std::vector<signal>& in, const std::vector<int>& f, const std::string& out, encoding enc,
                   const std::vector<std::size_t>& points, std::size_t depth, const std::string& target) {
    if (depth == 0) return data(in[0], f, out, enc, points);
    const signal& sel = in[depth];
    std::map<int, std::vector<std::size_t>> branches;
    for (std::size_t p : points) {
      if (f[p] >= 0 && sel.values[p] >= 0) branches[sel.values[p]].push_back(p);
    }
    if (branches.size() == 1) {
      const auto& [v, pts] = *branches.begin();
      return node(in, f, out, enc, pts, depth - 1, target);
    }
    const std::string here = target.empty() ? b_.fresh_net() : target;
    for (const auto& [v, pts] : branches) {
      const std::string child = node(in, f, out, enc, pts, depth - 1, "");
      b_.device(polarity::n, threshold_class::lvt, b_.indicator(sel, v, false), child, here);
      b_.device(polarity::p, threshold_class::lvt, b_.indicator(sel, v, true), child, here);
    }
    return here;
  }

  std::string data(const signal& x, const std::vector<int>& f, const std::string& out, encoding enc,
                   const std::vector<std::size_t>& points) {
    std::vector<int> g(static_cast<std::size_t>(arity(x.enc)), -1);
    for (std::size_t p : points) g[static_cast<std::size_t>(x.values[p])] = f[p];
    std::set<int> distinct;
    for (int v : g) {
      if (v >= 0) distinct.insert(v);
    }
    if (distinct.size() == 1) {
      const voltage_level l = encode(trit{*distinct.begin()}, enc);
      if (l == voltage_level::gnd) return std::string(rail_gnd);
      if (l == voltage_level::vdd) return std::string(rail_vdd);
      return half_ref(out);
    }
    bool same_levels = true;
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
      if (g[v] >= 0 && encode(trit{g[v]}, enc) != encode(trit{v}, x.enc)) same_levels = false;
    }
    if (same_levels) return x.net;
    auto& cache = data_cache_[out];
    if (auto it = cache.find(g); it != cache.end()) return it->second;
    std::vector<int> fp;
    for (int xv : x.values) fp.push_back(xv < 0 ? -1 : g[static_cast<std::size_t>(xv)]);
    const std::string y = b_.fresh_net();
    if (enc == encoding::full_vdd_high) b_.binary_gate({x}, fp, y, literal_mode::direct);
    else b_.ternary_gate({x}, fp, y, literal_mode::direct);
    cache.emplace(g, y);
    return y;
  }

  std::string half_ref(const std::string& out) {
    if (auto it = half_refs_.find(out); it != half_refs_.end()) return it->second;
    const std::string y = b_.fresh_net();
    b_.divider(std::string(rail_vdd), y, std::string(rail_gnd));
    half_refs_.emplace(out, y);
    return y;
  }

  circuit_builder& b_;
  logic_style style_;
  std::map<std::string, std::map<std::vector<int>, std::string>> data_cache_;
  std::map<std::string, std::string> half_refs_;
};

inline std::vector<std::vector<int>> adder_points(bool three, int cin_arity) {
  std::vector<std::vector<int>> pts;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (!three) {
        pts.push_back({a, b});
        continue;
      }
      for (int c = 0; c < cin_arity; ++c) pts.push_back({a, b, c});
    }
  }
  return pts;
}

inline std::vector<int> column(const std::vector<std::vector<int>>& pts, const std::function<int(const std::vector<int>&)>& f) {
  std::vector<int> out;
  for (const auto& p : pts) out.push_back(f(p));
  return out;
}

}  // namespace detail

/// Full adder with inputs a, b, cin and outputs Sum, Carry.
[[nodiscard]] inline netlist gen_tfa(const style_spec& spec) {
  check_spec(spec);
  const auto ports = ports_of(spec);
  const auto pts = detail::adder_points(true, arity(ports.cin_domain));
  circuit_builder b(pts);
  auto& n = b.circuit();
  n.title = "tfa " + describe(spec);
  const signal a = b.input("a", encoding::standard, 0);
  const signal bb = b.input("b", encoding::standard, 1);
  const signal c = b.input("cin", ports.cin_domain, 2);
  b.output("Sum", encoding::standard);
  b.output("Carry", ports.carry_out);
  detail::style_gates g(b, spec.style);

  const auto sum_f = detail::column(pts, [](const auto& p) { return (p[0] + p[1] + p[2]) % 3; });
  const auto carry_f = detail::column(pts, [](const auto& p) { return (p[0] + p[1] + p[2]) / 3; });

  if (spec.cascade == cascade_mode::direct) {
    g.make({a, bb, c}, sum_f, "Sum", encoding::standard);
    auto scope = b.tag_scope({"carry-gen"});
    g.make({a, bb, c}, carry_f, "Carry", ports.carry_out);
    return n;
  }
  // Two half adders: (a + b) then (s1 + cin); the partial carries are binary.
  const auto s1_f = detail::column(pts, [](const auto& p) { return (p[0] + p[1]) % 3; });
  const auto c1_f = detail::column(pts, [](const auto& p) { return (p[0] + p[1]) / 3; });
  const auto c2_f = detail::column(pts, [](const auto& p) { return ((p[0] + p[1]) % 3 + p[2]) / 3; });
  const signal s1 = g.make({a, bb}, s1_f, "s1", encoding::standard);
  g.make({s1, c}, sum_f, "Sum", encoding::standard);
  auto scope = b.tag_scope({"carry-gen"});
  const signal c1 = g.make({a, bb}, c1_f, "c1", encoding::full_vdd_high);
  const signal c2 = g.make({s1, c}, c2_f, "c2", encoding::full_vdd_high);
  g.make({c1, c2}, carry_f, "Carry", ports.carry_out);
  return n;
}

/// Half adder with inputs a, b; the carry is carried at HALF or VDD.
[[nodiscard]] inline netlist gen_tha(logic_style style, encoding carry) {
  if (carry == encoding::standard) throw unsupported_combination("half-adder carry must be half or vdd");
  const auto pts = detail::adder_points(false, 0);
  circuit_builder b(pts);
  auto& n = b.circuit();
  n.title = std::string("tha ") + std::string(to_string(style)) + (carry == encoding::full_vdd_high ? "/vdd" : "/half");
  const signal a = b.input("a", encoding::standard, 0);
  const signal bb = b.input("b", encoding::standard, 1);
  b.output("Sum", encoding::standard);
  b.output("Carry", carry);
  detail::style_gates g(b, style);
  g.make({a, bb}, detail::column(pts, [](const auto& p) { return (p[0] + p[1]) % 3; }), "Sum", encoding::standard);
  auto scope = b.tag_scope({"carry-gen"});
  g.make({a, bb}, detail::column(pts, [](const auto& p) { return (p[0] + p[1]) / 3; }), "Carry", carry);
  return n;
}

enum class gate_kind : std::uint8_t { nti, pti, sti, binary_inverter, ternary_decoder, ternary_buffer };

[[nodiscard]] inline std::optional<gate_kind> parse_gate_kind(std::string_view s) {
  static const std::map<std::string_view, gate_kind> names{
      {"nti", gate_kind::nti},       {"pti", gate_kind::pti},
      {"sti", gate_kind::sti},       {"binv", gate_kind::binary_inverter},
      {"decoder", gate_kind::ternary_decoder}, {"buffer", gate_kind::ternary_buffer}};
  auto it = names.find(s);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

/// Single gates with input x; inverters and the buffer drive y, the decoder d0..d2.
[[nodiscard]] inline netlist gen_gate(gate_kind kind) {
  const bool binary = kind == gate_kind::binary_inverter;
  std::vector<std::vector<int>> pts;
  for (int v = 0; v < (binary ? 2 : 3); ++v) pts.push_back({v});
  circuit_builder b(pts);
  auto& n = b.circuit();
  const signal x = b.input("x", binary ? encoding::full_vdd_high : encoding::standard, 0);
  auto invert = [&](inverter_kind k, const signal& in, const std::string& out) {
    std::vector<int> f;
    for (int v : in.values) f.push_back(ternary_inverter(k, trit{v}).value());
    return b.ternary_gate({in}, f, out, literal_mode::direct);
  };
  switch (kind) {
    case gate_kind::nti:
      n.title = "nti";
      b.output("y", encoding::standard);
      invert(inverter_kind::nti, x, "y");
      break;
    case gate_kind::pti:
      n.title = "pti";
      b.output("y", encoding::standard);
      invert(inverter_kind::pti, x, "y");
      break;
    case gate_kind::sti:
      n.title = "sti";
      b.output("y", encoding::standard);
      invert(inverter_kind::sti, x, "y");
      break;
    case gate_kind::binary_inverter:
      n.title = "binary inverter";
      b.output("y", encoding::full_vdd_high);
      b.device(polarity::p, threshold_class::mvt, "x", std::string(rail_vdd), "y");
      b.device(polarity::n, threshold_class::mvt, "x", "y", std::string(rail_gnd));
      break;
    case gate_kind::ternary_decoder:
      n.title = "ternary decoder";
      for (int v = 0; v < 3; ++v) {
        const std::string y = "d" + std::to_string(v);
        b.output(y, encoding::full_vdd_high);
        std::vector<int> f;
        for (int xv : x.values) f.push_back(xv == v ? 1 : 0);
        b.binary_gate({x}, f, y, literal_mode::direct);
      }
      break;
    case gate_kind::ternary_buffer: {
      n.title = "ternary buffer";
      b.output("y", encoding::standard);
      const signal mid = invert(inverter_kind::sti, x, "mid");
      invert(inverter_kind::sti, mid, "y");
      break;
    }
  }
  return n;
}

namespace detail {

inline void add_sti(netlist& n, const std::string& prefix, const std::string& in, const std::string& out) {
  const std::string vdd(rail_vdd), gnd(rail_gnd);
  const std::string m1 = prefix + "_m1", m2 = prefix + "_m2";
  n.devices.push_back({prefix + "_pu2", polarity::p, threshold_class::hvt, in, vdd, out, {}});
  n.devices.push_back({prefix + "_pd0", polarity::n, threshold_class::hvt, in, out, gnd, {}});
  n.devices.push_back({prefix + "_pu1", polarity::p, threshold_class::lvt, in, vdd, m1, {}});
  n.devices.push_back({prefix + "_pd1", polarity::n, threshold_class::lvt, in, m2, gnd, {}});
  n.devices.push_back({prefix + "_dp", polarity::p, threshold_class::lvt, gnd, m1, out, {"divider"}});
  n.devices.push_back({prefix + "_dn", polarity::n, threshold_class::lvt, vdd, out, m2, {"divider"}});
}

inline void prefix_nets(netlist& n, const std::function<std::string(const std::string&)>& rename) {
  for (auto& d : n.devices) {
    d.gate = rename(d.gate);
    d.source = rename(d.source);
    d.drain = rename(d.drain);
  }
  for (auto& l : n.loads) l.net = rename(l.net);
  std::set<std::string> nets;
  for (const auto& net : n.nets) nets.insert(rename(net));
  n.nets = std::move(nets);
}

}  // namespace detail

/// Wrap a design with two-STI input buffers and a fan-out-of-four STI load on each output.
[[nodiscard]] inline netlist gen_testbench(const netlist& dut) {
  netlist tb = dut;
  tb.title = dut.title.empty() ? "testbench" : "testbench " + dut.title;
  const auto used = dut.all_nets();
  std::set<std::string> taken(used.begin(), used.end());
  for (const auto& d : dut.devices) taken.insert(d.id);
  auto fresh = [&](const std::string& want) {
    std::string name = want;
    for (int i = 1; taken.count(name); ++i) name = want + "_" + std::to_string(i);
    taken.insert(name);
    return name;
  };
  std::map<std::string, std::string> inner;
  for (const auto& in : dut.inputs) inner[in.net] = fresh("tb_" + in.net + "_dut");
  detail::prefix_nets(tb, [&](const std::string& net) {
    auto it = inner.find(net);
    return it == inner.end() ? net : it->second;
  });
  for (const auto& in : dut.inputs) {
    const std::string mid = fresh("tb_" + in.net + "_mid");
    detail::add_sti(tb, fresh("tb_" + in.net + "_b1"), in.net, mid);
    detail::add_sti(tb, fresh("tb_" + in.net + "_b2"), mid, inner[in.net]);
  }
  for (const auto& out : dut.outputs) {
    for (int k = 0; k < 4; ++k) {
      const std::string base = "tb_" + out.net + "_fo" + std::to_string(k);
      detail::add_sti(tb, fresh(base), out.net, fresh(base + "_y"));
    }
  }
  return tb;
}

/// Ripple-carry adder of partial full adders; inputs a0.., b0.., cin, outputs s0.., cout.
[[nodiscard]] inline netlist gen_rca(int digits, const style_spec& spec) {
  if (digits < 1) throw domain_error("gen_rca: digits must be positive");
  if (spec.comp != completeness::partial || spec.carry != encoding::full_vdd_high) {
    throw unsupported_combination("ripple-carry adder needs partial full adders with the VDD carry");
  }
  const netlist cell = gen_tfa(spec);
  netlist n;
  n.title = "rca" + std::to_string(digits) + " " + describe(spec);
  n.vdd = cell.vdd;
  for (int i = 0; i < digits; ++i) n.inputs.push_back({"a" + std::to_string(i), encoding::standard});
  for (int i = 0; i < digits; ++i) n.inputs.push_back({"b" + std::to_string(i), encoding::standard});
  n.inputs.push_back({"cin", encoding::full_vdd_high});
  for (int i = 0; i < digits; ++i) n.outputs.push_back({"s" + std::to_string(i), encoding::standard});
  n.outputs.push_back({"cout", encoding::full_vdd_high});
  for (int i = 0; i < digits; ++i) {
    const std::string u = "u" + std::to_string(i) + "_";
    const std::map<std::string, std::string> ports{
        {"a", "a" + std::to_string(i)},
        {"b", "b" + std::to_string(i)},
        {"cin", i == 0 ? "cin" : "c" + std::to_string(i)},
        {"Sum", "s" + std::to_string(i)},
        {"Carry", i + 1 == digits ? "cout" : "c" + std::to_string(i + 1)}};
    netlist inst = cell;
    detail::prefix_nets(inst, [&](const std::string& net) {
      if (is_rail(net)) return net;
      auto it = ports.find(net);
      return it == ports.end() ? u + net : it->second;
    });
    for (auto& d : inst.devices) {
      d.id = u + d.id;
      n.devices.push_back(std::move(d));
    }
  }
  return n;
}

/// Disagreements between a full-adder netlist and the reference adder, decoded per port encoding.
[[nodiscard]] inline std::vector<std::string> check_adder(const netlist& n) {
  const auto t = truth_table(n);
  auto pos = [&](const std::vector<std::string>& names, const std::string& want) {
    auto it = std::find(names.begin(), names.end(), want);
    if (it == names.end()) throw domain_error("adder has no port '" + want + "'");
    return static_cast<std::size_t>(it - names.begin());
  };
  const std::size_t ia = pos(t.input_names, "a"), ib = pos(t.input_names, "b");
  const bool full = std::find(t.input_names.begin(), t.input_names.end(), "cin") != t.input_names.end();
  const std::size_t ic = full ? pos(t.input_names, "cin") : 0;
  const std::size_t os = pos(t.output_names, "Sum"), oc = pos(t.output_names, "Carry");
  std::vector<std::string> bad;
  for (const auto& row : t.rows) {
    const trit a = decode(row.inputs[ia], n.inputs[ia].domain);
    const trit b = decode(row.inputs[ib], n.inputs[ib].domain);
    const trit c = full ? decode(row.inputs[ic], n.inputs[ic].domain) : trit{0};
    const adder_output want = full_add_complete(a, b, c);
    std::string got;
    try {
      const trit s = decode(row.outputs[os], t.output_encodings[os]);
      const trit k = decode(row.outputs[oc], t.output_encodings[oc]);
      if (s == want.sum && k == want.carry) continue;
      got = std::to_string(k.value()) + std::to_string(s.value());
    } catch (const domain_error&) {
      got = "undecodable";
    }
    bad.push_back("a=" + std::to_string(a.value()) + " b=" + std::to_string(b.value()) +
                  " cin=" + std::to_string(c.value()) + ": expected " + std::to_string(want.carry.value()) +
                  std::to_string(want.sum.value()) + ", got " + got);
  }
  return bad;
}

}  // namespace tritforge
