// tritforge/netlist_io.hpp: text format ("tritforge-net v1"), validation
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

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "netlist.hpp"

namespace tritforge {

/// Parse failure with a 1-based source position.
class parse_error : public error {
 public:
  parse_error(std::size_t line, std::size_t column, const std::string& what)
      : error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class syntax_error : public parse_error {
 public:
  using parse_error::parse_error;
};

class semantic_error : public parse_error {
 public:
  using parse_error::parse_error;
};

struct parse_options {
  /// Require every net to be declared by `.net`, `.input` or `.output`.
  bool strict = false;
};

namespace detail {

struct token {
  std::string text;
  std::size_t column = 1;
};

inline std::vector<token> tokenize(std::string_view line) {
  std::vector<token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

inline std::string lower(std::string_view s) {
  std::string r(s);
  for (auto& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return r;
}

/// Number with an optional SPICE-style scale suffix and trailing unit letters.
inline std::optional<double> parse_number(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || !std::isfinite(v)) return std::nullopt;
  std::string rest = lower(std::string_view(end));
  double scale = 1.0;
  if (rest.rfind("meg", 0) == 0) {
    scale = 1e6;
    rest.erase(0, 3);
  } else if (!rest.empty()) {
    static const std::map<char, double> suffix{{'t', 1e12}, {'g', 1e9}, {'k', 1e3}, {'m', 1e-3}, {'u', 1e-6},
                                               {'n', 1e-9}, {'p', 1e-12}, {'f', 1e-15}, {'a', 1e-18}};
    if (auto it = suffix.find(rest.front()); it != suffix.end()) {
      scale = it->second;
      rest.erase(0, 1);
    }
  }
  for (char c : rest) {
    if (!std::isalpha(static_cast<unsigned char>(c))) return std::nullopt;
  }
  return v * scale;
}

inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parse the text format. Throws syntax_error or semantic_error with line/column.
[[nodiscard]] inline netlist parse(std::string_view text, parse_options opts = {}) {
  netlist n;
  struct use {
    std::string net;
    std::size_t line, column;
  };
  std::vector<use> load_uses;
  std::vector<use> device_uses;
  std::set<std::string> declared;
  std::set<std::string> device_ids;
  std::set<std::string> load_ids;

  auto reserved_check = [](const std::string& net, std::size_t line, std::size_t col, std::string_view what) {
    if (is_rail(net)) {
      throw semantic_error(line, col, "reserved rail '" + net + "' cannot be used as " + std::string(what));
    }
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const auto toks = detail::tokenize(raw);
    if (toks.empty()) continue;
    const std::string kw = detail::lower(toks[0].text);
    auto need = [&](std::size_t count, std::string_view form) {
      if (toks.size() < count) {
        throw syntax_error(line_no, toks.back().column, "expected '" + std::string(form) + "'");
      }
    };
    auto no_extra = [&](std::size_t count) {
      if (toks.size() > count) throw syntax_error(line_no, toks[count].column, "unexpected token '" + toks[count].text + "'");
    };

    if (kw == ".end") break;
    if (kw == ".title") {
      std::string_view rest = raw.substr(toks[0].column - 1 + toks[0].text.size());
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) rest.remove_prefix(1);
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.remove_suffix(1);
      n.title = std::string(rest);
    } else if (kw == ".vdd") {
      need(2, ".vdd <volts>");
      no_extra(2);
      auto v = detail::parse_number(toks[1].text);
      if (!v || *v <= 0.0) throw syntax_error(line_no, toks[1].column, "invalid supply voltage '" + toks[1].text + "'");
      n.vdd = *v;
    } else if (kw == ".input") {
      need(3, ".input <net> <ternary|binary|halfpair>");
      no_extra(3);
      reserved_check(toks[1].text, line_no, toks[1].column, "an input");
      const std::string dom = detail::lower(toks[2].text);
      encoding enc;
      if (dom == "ternary") enc = encoding::standard;
      else if (dom == "binary") enc = encoding::full_vdd_high;
      else if (dom == "halfpair") enc = encoding::half_vdd_high;
      else throw syntax_error(line_no, toks[2].column, "unknown input domain '" + toks[2].text + "'");
      if (n.is_input(toks[1].text)) throw semantic_error(line_no, toks[1].column, "duplicate input '" + toks[1].text + "'");
      n.inputs.push_back({toks[1].text, enc});
      declared.insert(toks[1].text);
    } else if (kw == ".output") {
      need(2, ".output <net>");
      no_extra(3);
      reserved_check(toks[1].text, line_no, toks[1].column, "an output");
      encoding enc = encoding::standard;
      if (toks.size() == 3) {
        const std::string e = detail::lower(toks[2].text);
        if (e == "standard") enc = encoding::standard;
        else if (e == "half") enc = encoding::half_vdd_high;
        else if (e == "vdd") enc = encoding::full_vdd_high;
        else throw syntax_error(line_no, toks[2].column, "unknown output encoding '" + toks[2].text + "'");
      }
      if (n.is_output(toks[1].text)) throw semantic_error(line_no, toks[1].column, "duplicate output '" + toks[1].text + "'");
      n.outputs.push_back({toks[1].text, enc});
      declared.insert(toks[1].text);
    } else if (kw == ".net") {
      need(2, ".net <net>");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        reserved_check(toks[i].text, line_no, toks[i].column, "a declared net");
        n.nets.insert(toks[i].text);
        declared.insert(toks[i].text);
      }
    } else if (kw == "m") {
      need(5, "M <id> <n|p> <hvt|mvt|lvt|ulvt> G=<net> S=<net> D=<net>");
      device d;
      d.id = toks[1].text;
      const std::string pol = detail::lower(toks[2].text);
      if (pol == "n") d.type = polarity::n;
      else if (pol == "p") d.type = polarity::p;
      else throw syntax_error(line_no, toks[2].column, "device polarity must be n or p, got '" + toks[2].text + "'");
      const std::string vt = detail::lower(toks[3].text);
      if (vt == "hvt") d.vt = threshold_class::hvt;
      else if (vt == "mvt") d.vt = threshold_class::mvt;
      else if (vt == "lvt") d.vt = threshold_class::lvt;
      else if (vt == "ulvt") d.vt = threshold_class::ulvt;
      else throw syntax_error(line_no, toks[3].column, "unknown threshold class '" + toks[3].text + "'");
      std::map<std::string, const detail::token*> terminals;
      for (std::size_t i = 4; i < toks.size(); ++i) {
        const auto eq = toks[i].text.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == toks[i].text.size()) {
          throw syntax_error(line_no, toks[i].column, "expected key=value, got '" + toks[i].text + "'");
        }
        const std::string key = detail::lower(toks[i].text.substr(0, eq));
        const std::string val = toks[i].text.substr(eq + 1);
        if (key == "tag") {
          d.add_tag(val);
        } else if (key == "g" || key == "s" || key == "d") {
          if (terminals.count(key)) throw syntax_error(line_no, toks[i].column, "terminal " + key + " given twice");
          terminals[key] = &toks[i];
          (key == "g" ? d.gate : key == "s" ? d.source : d.drain) = val;
          device_uses.push_back({val, line_no, toks[i].column + eq + 1});
        } else {
          throw syntax_error(line_no, toks[i].column, "unknown device field '" + key + "'");
        }
      }
      for (const char* k : {"g", "s", "d"}) {
        if (!terminals.count(k)) {
          throw syntax_error(line_no, toks.back().column, std::string("device '") + d.id + "' is missing terminal " + k);
        }
      }
      if (!device_ids.insert(d.id).second) throw semantic_error(line_no, toks[1].column, "duplicate device id '" + d.id + "'");
      n.devices.push_back(std::move(d));
    } else if (kw == "c") {
      need(4, "C <id> <net> <farads>");
      no_extra(4);
      auto f = detail::parse_number(toks[3].text);
      if (!f || *f < 0.0) throw syntax_error(line_no, toks[3].column, "invalid capacitance '" + toks[3].text + "'");
      if (!load_ids.insert(toks[1].text).second) {
        throw semantic_error(line_no, toks[1].column, "duplicate load id '" + toks[1].text + "'");
      }
      n.loads.push_back({toks[1].text, toks[2].text, *f});
      load_uses.push_back({toks[2].text, line_no, toks[2].column});
    } else {
      throw syntax_error(line_no, toks[0].column, "unknown statement '" + toks[0].text + "'");
    }
  }

  std::set<std::string> known = declared;
  known.emplace(rail_vdd);
  known.emplace(rail_gnd);
  if (opts.strict) {
    for (const auto& u : device_uses) {
      if (!known.count(u.net)) throw semantic_error(u.line, u.column, "undeclared net '" + u.net + "'");
    }
  } else {
    for (const auto& u : device_uses) known.insert(u.net);
  }
  for (const auto& u : load_uses) {
    if (!known.count(u.net)) throw semantic_error(u.line, u.column, "undeclared net '" + u.net + "'");
  }
  return n;
}

/// Canonical text: declarations first, devices and loads sorted by id, lowercase keywords.
[[nodiscard]] inline std::string serialize(const netlist& input) {
  const netlist n = canonical(input);
  std::ostringstream os;
  os << "# tritforge-net v1\n";
  if (!n.title.empty()) os << ".title " << n.title << '\n';
  os << ".vdd " << detail::format_number(n.vdd) << '\n';
  for (const auto& i : n.inputs) os << ".input " << i.net << ' ' << domain_name(i.domain) << '\n';
  for (const auto& o : n.outputs) {
    os << ".output " << o.net;
    if (o.enc != encoding::standard) os << ' ' << output_encoding_name(o.enc);
    os << '\n';
  }
  for (const auto& net : n.nets) os << ".net " << net << '\n';
  for (const auto& d : n.devices) {
    os << "m " << d.id << ' ' << to_string(d.type) << ' ' << to_string(d.vt) << " g=" << d.gate << " s=" << d.source
       << " d=" << d.drain;
    for (const auto& t : d.tags) os << " tag=" << t;
    os << '\n';
  }
  for (const auto& l : n.loads) os << "c " << l.id << ' ' << l.net << ' ' << detail::format_number(l.farads) << '\n';
  os << ".end\n";
  return os.str();
}

struct diagnostic {
  std::string code;
  std::string message;

  bool operator==(const diagnostic&) const = default;
};

/// Structural lints; an empty result means the netlist is well formed.
[[nodiscard]] inline std::vector<diagnostic> validate(const netlist& n) {
  std::vector<diagnostic> out;
  std::map<std::string, std::size_t> channel_refs;
  std::map<std::string, std::size_t> gate_refs;
  for (const auto& d : n.devices) {
    ++channel_refs[d.source];
    ++channel_refs[d.drain];
    ++gate_refs[d.gate];
    if (d.source == d.drain) out.push_back({"degenerate-device", "degenerate device '" + d.id + "': source equals drain"});
    if (is_rail(d.gate) && is_rail(d.source) && is_rail(d.drain)) {
      out.push_back({"rail-device", "device '" + d.id + "' has all terminals on rails"});
    }
  }
  for (const auto& o : n.outputs) {
    if (n.is_input(o.net)) out.push_back({"output-is-input", "net '" + o.net + "' is both an input and an output"});
    else if (!channel_refs.count(o.net)) out.push_back({"undriven-output", "undriven output '" + o.net + "'"});
  }
  for (const auto& net : n.all_nets()) {
    if (n.is_declared(net)) continue;
    const std::size_t ch = channel_refs.count(net) ? channel_refs[net] : 0;
    const std::size_t gt = gate_refs.count(net) ? gate_refs[net] : 0;
    if (ch == 0 && gt > 0) out.push_back({"undriven-net", "undriven net '" + net + "' is used as a gate"});
    else if (ch + gt <= 1) out.push_back({"dangling-net", "dangling net '" + net + "'"});
  }
  for (const auto& i : n.inputs) {
    if (domain_levels(i.domain).empty()) out.push_back({"empty-domain", "input '" + i.net + "' has an empty domain"});
  }
  return out;
}

}  // namespace tritforge
