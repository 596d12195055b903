// tritforge: command-line driver
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
//
// Exit status: 0 success, 1 domain or input error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tritforge/tritforge.hpp"

namespace tf = tritforge;
using nlohmann::json;

namespace {

struct run_config {
  std::string input;
  std::string output;
  std::string report;
  std::string pattern_file;
  std::string format;
  bool force = false;

  // gen
  std::string gate;
  std::string style = "ternary-cmos";
  bool partial = false;
  std::string carry = "half";
  bool two_tha = false;
  int digits = 4;
  bool static_states = false;

  // truth, simplify, catalog
  std::string expect;
  std::string assume;
  std::string rebind;
  std::string field;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tf::error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Write to `path`, or stdout when empty; existing files need --force.
void write_text(const std::string& path, const std::string& text, bool force) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  if (std::filesystem::exists(path) && !force) {
    throw tf::error("refusing to overwrite '" + path + "' (pass --force)");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw tf::error("cannot write '" + path + "'");
  out << text;
  if (!out) throw tf::error("write to '" + path + "' failed");
}

tf::netlist load_netlist(const std::string& path) {
  try {
    return tf::parse(read_text(path));
  } catch (const tf::parse_error& e) {
    throw tf::error(path + ": " + e.what());
  }
}

tf::encoding carry_encoding(const std::string& s) {
  return s == "vdd" ? tf::encoding::full_vdd_high : tf::encoding::half_vdd_high;
}

tf::style_spec spec_of(const run_config& c) {
  return {*tf::parse_style(c.style), c.partial ? tf::completeness::partial : tf::completeness::complete,
          carry_encoding(c.carry), c.two_tha ? tf::cascade_mode::two_tha : tf::cascade_mode::direct};
}

char level_char(tf::voltage_level l) { return static_cast<char>('0' + static_cast<int>(l)); }

// --- subcommands -------------------------------------------------------------

void gen_gate(const run_config& c) {
  write_text(c.output, tf::serialize(tf::gen_gate(*tf::parse_gate_kind(c.gate))), c.force);
}

void gen_tfa(const run_config& c) { write_text(c.output, tf::serialize(tf::gen_tfa(spec_of(c))), c.force); }

void gen_tha(const run_config& c) {
  write_text(c.output, tf::serialize(tf::gen_tha(*tf::parse_style(c.style), carry_encoding(c.carry))), c.force);
}

void gen_rca(const run_config& c) {
  auto spec = spec_of(c);
  spec.comp = tf::completeness::partial;
  spec.carry = tf::encoding::full_vdd_high;
  write_text(c.output, tf::serialize(tf::gen_rca(c.digits, spec)), c.force);
}

void gen_testbench(const run_config& c) {
  write_text(c.output, tf::serialize(tf::gen_testbench(load_netlist(c.input))), c.force);
}

void gen_pattern(const run_config& c) {
  const auto kind = c.static_states ? tf::pattern_kind::static_states : tf::pattern_kind::complete_transitions;
  write_text(c.output, tf::write_pattern(tf::gen_pattern(load_netlist(c.input), kind)), c.force);
}

tf::pattern pattern_for(const run_config& c, const tf::netlist& n) {
  if (c.pattern_file.empty()) return tf::gen_pattern(n, tf::pattern_kind::complete_transitions);
  try {
    return tf::read_pattern(read_text(c.pattern_file));
  } catch (const tf::parse_error& e) {
    throw tf::error(c.pattern_file + ": " + e.what());
  }
}

std::string metrics_text(const tf::metrics_report& m) {
  std::ostringstream os;
  os << "delay_rounds " << m.delay_rounds << "\nstatic_div_mean " << m.static_div_mean << "\nactivity "
     << m.activity << "\ndevice_total " << m.device_total << '\n';
  for (const auto& w : m.warnings) os << "warning " << w << '\n';
  return os.str();
}

void sim(const run_config& c) {
  const auto n = load_netlist(c.input);
  const auto s = tf::simulate_pattern(n, pattern_for(c, n));
  if (c.format == "json") {
    json j{{"nets", s.nets}, {"settle_rounds", s.settle_rounds}, {"metrics", s.metrics}};
    json rows = json::array();
    for (const auto& row : s.trace) {
      std::string r;
      for (auto l : row) r += tf::state_char(l);
      rows.push_back(r);
    }
    j["trace"] = rows;
    write_text(c.output, j.dump(2) + "\n", c.force);
  } else {
    write_text(c.output, tf::trace_csv(s), c.force);
  }
  if (!c.report.empty()) write_text(c.report, json(s.metrics).dump(2) + "\n", c.force);
}

int truth(const run_config& c) {
  const auto n = load_netlist(c.input);
  const auto t = tf::truth_table(n);
  std::ostringstream os;
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& r : t.rows) {
      json in, out;
      for (std::size_t i = 0; i < r.inputs.size(); ++i) in[t.input_names[i]] = std::string(1, level_char(r.inputs[i]));
      for (std::size_t i = 0; i < r.outputs.size(); ++i) {
        out[t.output_names[i]] = std::string(1, level_char(r.outputs[i]));
      }
      rows.push_back({{"inputs", in}, {"outputs", out}});
    }
    os << json{{"inputs", t.input_names}, {"outputs", t.output_names}, {"rows", rows}}.dump(2) << '\n';
  } else {
    const char sep = c.format == "csv" ? ',' : ' ';
    bool first = true;
    for (const auto& name : t.input_names) os << (std::exchange(first, false) ? "" : std::string(1, sep)) << name;
    for (const auto& name : t.output_names) os << sep << name;
    os << '\n';
    for (const auto& r : t.rows) {
      first = true;
      for (auto l : r.inputs) os << (std::exchange(first, false) ? "" : std::string(1, sep)) << level_char(l);
      for (auto l : r.outputs) os << sep << level_char(l);
      os << '\n';
    }
  }
  write_text(c.output, os.str(), c.force);
  if (c.expect.empty()) return 0;

  const tf::input_decl* cin = n.find_input("cin");
  if (!cin) throw tf::domain_error("--expect " + c.expect + ": netlist has no 'cin' input");
  const std::size_t want = c.expect == "table2" ? 3 : 2;
  if (static_cast<std::size_t>(tf::arity(cin->domain)) != want) {
    std::cerr << "tritforge: expectation " << c.expect << " needs a " << (want == 3 ? "ternary" : "two-valued")
              << " carry-in\n";
    return 1;
  }
  const auto bad = tf::check_adder(n);
  for (const auto& b : bad) std::cerr << "mismatch: " << b << '\n';
  return bad.empty() ? 0 : 1;
}

void simplify(const run_config& c) {
  const auto eq = c.assume.find('=');
  if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--assume", "expected <net>=<domain>");
  const std::string net = c.assume.substr(0, eq), dom = c.assume.substr(eq + 1);
  tf::encoding enc;
  if (dom == "ternary") enc = tf::encoding::standard;
  else if (dom == "binary") enc = tf::encoding::full_vdd_high;
  else if (dom == "halfpair") enc = tf::encoding::half_vdd_high;
  else throw CLI::ValidationError("--assume", "domain must be ternary, binary or halfpair");

  const auto n = load_netlist(c.input);
  std::optional<std::string> rebind;
  if (!c.rebind.empty()) rebind = c.rebind;
  const auto r = tf::simplify_pipeline(n, tf::make_assumption(net, enc), rebind);
  write_text(c.output, tf::serialize(r.circuit), c.force);
  if (!c.report.empty()) write_text(c.report, json(r.report).dump(2) + "\n", c.force);
  std::cerr << "devices " << n.devices.size() << " -> " << r.circuit.devices.size() << '\n';
}

int lint(const run_config& c) {
  const auto n = load_netlist(c.input);
  const auto diags = tf::validate(n);
  std::vector<tf::swing_warning> swing;
  if (diags.empty()) swing = tf::full_swing_lint(n);
  std::ostringstream os;
  if (c.format == "json") {
    json d = json::array(), s = json::array();
    for (const auto& x : diags) d.push_back({{"code", x.code}, {"message", x.message}});
    for (const auto& w : swing) {
      s.push_back({{"net", w.net}, {"type", std::string(tf::to_string(w.type))}, {"headroom", w.headroom}});
    }
    os << json{{"diagnostics", d}, {"swing", s}}.dump(2) << '\n';
  } else {
    for (const auto& x : diags) os << "error " << x.code << ": " << x.message << '\n';
    for (const auto& w : swing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", w.headroom);
      os << "warning swing: net '" << w.net << "' passes " << (w.type == tf::polarity::n ? "VDD" : "GND")
         << " through " << tf::to_string(w.type) << "-type devices only, headroom " << buf << " V\n";
    }
  }
  write_text(c.output, os.str(), c.force);
  return diags.empty() ? 0 : 1;
}

void metrics(const run_config& c) {
  const auto n = load_netlist(c.input);
  const auto m = tf::simulate_pattern(n, pattern_for(c, n)).metrics;
  const std::string text = c.format == "text" ? metrics_text(m) : json(m).dump(2) + "\n";
  write_text(c.output, text, c.force);
  if (!c.report.empty()) write_text(c.report, json(m).dump(2) + "\n", c.force);
}

void catalog_stats(const run_config& c) {
  const auto records = tf::load_catalog(read_text(c.input));
  const auto agg = tf::aggregate(records, c.field);
  std::ostringstream os;
  if (c.format == "json") {
    json j = json::object();
    for (const auto& [k, s] : agg) j[k] = {{"count", s.count}, {"percent", s.percent}};
    os << j.dump(2) << '\n';
  } else {
    const char* fmt = c.format == "csv" ? "%s,%zu,%.1f\n" : "%-40s %3zu %5.1f%%\n";
    if (c.format == "csv") os << c.field << ",count,percent\n";
    for (const auto& [k, s] : agg) {
      char buf[160];
      std::snprintf(buf, sizeof buf, fmt, k.c_str(), s.count, s.percent);
      os << buf;
    }
  }
  write_text(c.output, os.str(), c.force);
}

int catalog_pdp(const run_config& c) {
  const std::string text = read_text(c.input);
  const std::string first_line = text.substr(0, text.find_first_of("\r\n"));
  const auto rows = first_line == tf::results_header ? tf::pdp_check(tf::load_results(text))
                                                     : tf::pdp_check(tf::load_catalog(text));
  std::ostringstream os;
  std::size_t bad = 0;
  if (c.format == "json") {
    json j = json::array();
    for (const auto& r : rows) {
      j.push_back({{"key", r.key}, {"recomputed_fj", r.recomputed_fj},
                   {"reported_fj", r.reported_fj ? json(*r.reported_fj) : json(nullptr)}, {"consistent", r.consistent}});
    }
    os << j.dump(2) << '\n';
  } else {
    if (c.format == "csv") os << "key,recomputed_fj,reported_fj,consistent\n";
    for (const auto& r : rows) {
      char buf[200];
      const std::string reported = r.reported_fj ? std::to_string(*r.reported_fj) : std::string();
      if (c.format == "csv") {
        std::snprintf(buf, sizeof buf, "%s,%.4f,%s,%s\n", r.key.c_str(), r.recomputed_fj, reported.c_str(),
                      r.consistent ? "yes" : "no");
      } else {
        std::snprintf(buf, sizeof buf, "%-24s %8.4f fJ  reported %-10s %s\n", r.key.c_str(), r.recomputed_fj,
                      r.reported_fj ? reported.c_str() : "-", r.consistent ? "ok" : "MISMATCH");
      }
      os << buf;
    }
  }
  for (const auto& r : rows) bad += !r.consistent;
  write_text(c.output, os.str(), c.force);
  return bad ? 1 : 0;
}

void add_output(CLI::App* app, run_config& c) {
  app->add_option("-o,--output", c.output, "Output file (default: stdout)");
  app->add_flag("--force", c.force, "Overwrite existing output files");
}

void add_format(CLI::App* app, run_config& c, const std::string& def) {
  c.format = def;
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
}

void add_style(CLI::App* app, run_config& c) {
  app->add_option("--style", c.style, "Logic style")->check(CLI::IsMember({"ternary-cmos", "ntpt", "mux", "decenc"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ternary full-adder netlist generator, switch-level simulator and simplifier", "tritforge"};
  app.require_subcommand(1);
  run_config c;
  std::function<int()> action;
  auto set = [&](CLI::App* sub, std::function<int()> fn) { sub->callback([&action, fn] { action = fn; }); };
  auto ok = [](auto fn) { return [fn] { fn(); return 0; }; };

  auto* gen = app.add_subcommand("gen", "Generate netlists and stimulus patterns");
  gen->require_subcommand(1);

  auto* g_gate = gen->add_subcommand("gate", "Single gate: nti, pti, sti, binv, decoder, buffer");
  g_gate->add_option("kind", c.gate, "Gate kind")->required()->check(
      CLI::IsMember({"nti", "pti", "sti", "binv", "decoder", "buffer"}));
  add_output(g_gate, c);
  set(g_gate, ok([&] { gen_gate(c); }));

  auto* g_tfa = gen->add_subcommand("tfa", "Ternary full adder");
  add_style(g_tfa, c);
  g_tfa->add_flag("--partial", c.partial, "Carry-in restricted to {0,1}");
  g_tfa->add_option("--carry", c.carry, "Encoding of carry logical 1 (partial only)")
      ->check(CLI::IsMember({"half", "vdd"}));
  g_tfa->add_flag("--two-tha", c.two_tha, "Build from two cascaded half adders");
  add_output(g_tfa, c);
  set(g_tfa, ok([&] { gen_tfa(c); }));

  auto* g_tha = gen->add_subcommand("tha", "Ternary half adder");
  add_style(g_tha, c);
  g_tha->add_option("--carry", c.carry, "Encoding of carry logical 1")->check(CLI::IsMember({"half", "vdd"}));
  add_output(g_tha, c);
  set(g_tha, ok([&] { gen_tha(c); }));

  auto* g_rca = gen->add_subcommand("rca", "Ripple-carry adder of partial full adders with the VDD carry");
  add_style(g_rca, c);
  g_rca->add_option("--digits", c.digits, "Number of trits")->check(CLI::Range(1, 16));
  g_rca->add_flag("--two-tha", c.two_tha, "Cells built from two half adders");
  add_output(g_rca, c);
  set(g_rca, ok([&] { gen_rca(c); }));

  auto* g_tb = gen->add_subcommand("testbench", "Wrap a netlist with input buffers and FO4 output loads");
  g_tb->add_option("netlist", c.input, "Design under test")->required();
  add_output(g_tb, c);
  set(g_tb, ok([&] { gen_testbench(c); }));

  auto* g_pat = gen->add_subcommand("pattern", "Input pattern over a netlist's declared inputs");
  g_pat->add_option("netlist", c.input, "Netlist whose inputs define the domain")->required();
  g_pat->add_flag("--static", c.static_states, "Every state once instead of every transition once");
  add_output(g_pat, c);
  set(g_pat, ok([&] { gen_pattern(c); }));

  auto* s_sim = app.add_subcommand("sim", "Apply a pattern and write the per-step trace");
  s_sim->add_option("netlist", c.input, "Netlist")->required();
  s_sim->add_option("--pattern", c.pattern_file, "Pattern file (default: every transition once)");
  s_sim->add_option("--report", c.report, "Write metrics JSON here");
  add_format(s_sim, c, "csv");
  add_output(s_sim, c);
  set(s_sim, ok([&] { sim(c); }));

  auto* s_truth = app.add_subcommand("truth", "Exhaustive truth table");
  s_truth->add_option("netlist", c.input, "Netlist")->required();
  s_truth->add_option("--expect", c.expect, "Check against the reference adder")
      ->check(CLI::IsMember({"table2", "table2-partial"}));
  add_format(s_truth, c, "text");
  add_output(s_truth, c);
  set(s_truth, [&] { return truth(c); });

  auto* s_simp = app.add_subcommand("simplify", "Input-domain simplification with optional carry re-encoding");
  s_simp->add_option("netlist", c.input, "Netlist")->required();
  s_simp->add_option("--assume", c.assume, "<net>=<ternary|binary|halfpair>")->required();
  s_simp->add_option("--rebind-carry", c.rebind, "Carry output to move to the VDD encoding");
  s_simp->add_option("--report", c.report, "Write the pass report JSON here");
  add_output(s_simp, c);
  set(s_simp, ok([&] { simplify(c); }));

  auto* s_lint = app.add_subcommand("lint", "Structural diagnostics and full-swing warnings");
  s_lint->add_option("netlist", c.input, "Netlist")->required();
  add_format(s_lint, c, "text");
  add_output(s_lint, c);
  set(s_lint, [&] { return lint(c); });

  auto* s_metrics = app.add_subcommand("metrics", "Discrete delay, division and activity proxies");
  s_metrics->add_option("netlist", c.input, "Netlist")->required();
  s_metrics->add_option("--pattern", c.pattern_file, "Pattern file (default: every transition once)");
  s_metrics->add_option("--report", c.report, "Also write metrics JSON here");
  add_format(s_metrics, c, "json");
  add_output(s_metrics, c);
  set(s_metrics, ok([&] { metrics(c); }));

  auto* s_cat = app.add_subcommand("catalog", "Design catalog statistics and checks");
  s_cat->require_subcommand(1);
  auto* c_stats = s_cat->add_subcommand("stats", "Count records per category");
  c_stats->add_option("csv", c.input, "Catalog CSV")->required();
  c_stats->add_option("--field", c.field, "Categorical field")->required();
  add_format(c_stats, c, "text");
  add_output(c_stats, c);
  set(c_stats, ok([&] { catalog_stats(c); }));
  auto* c_pdp = s_cat->add_subcommand("pdp-check", "Recompute power-delay products");
  c_pdp->add_option("csv", c.input, "Catalog or results CSV")->required();
  add_format(c_pdp, c, "text");
  add_output(c_pdp, c);
  set(c_pdp, [&] { return catalog_pdp(c); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "tritforge: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tritforge: error: " << e.what() << '\n';
    return 1;
  }
}
