// Copyright (c) 2026 The tritforge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance driver: prints one PASS/FAIL line per criterion.
//   acceptance [--only 1,2,...] [--skip 6,...]
// Exit status is 1 if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "support.hpp"
#include "tritforge/tritforge.hpp"

namespace tf = tritforge;
using tf::completeness;
using tf::encoding;
using tf::polarity;
using tf::threshold_class;
using tf::voltage_level;

namespace {

// Tolerances and limits.
constexpr double truth_time_limit_s = 10.0;
constexpr double rca_time_limit_s = 60.0;
constexpr int property_cases = 1000;
constexpr double pdp_rel_tol = 0.005;        // 0.5 %
constexpr double improvement_tol_pts = 0.2;  // percentage points
constexpr double percent_sum_tol = 0.1;

struct verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<tf::style_spec> variants(std::optional<completeness> comp = std::nullopt,
                                     std::optional<encoding> carry = std::nullopt) {
  std::vector<tf::style_spec> out;
  for (auto s : tf::all_styles) {
    for (auto cas : {tf::cascade_mode::direct, tf::cascade_mode::two_tha}) {
      const tf::style_spec all[] = {{s, completeness::complete, encoding::half_vdd_high, cas},
                                    {s, completeness::partial, encoding::half_vdd_high, cas},
                                    {s, completeness::partial, encoding::full_vdd_high, cas}};
      for (const auto& v : all) {
        if (comp && v.comp != *comp) continue;
        if (carry && v.comp == completeness::partial && v.carry != *carry) continue;
        out.push_back(v);
      }
    }
  }
  return out;
}

// 1 ----------------------------------------------------------------------------

verdict truth_fidelity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t points = 0, mismatches = 0, count = 0;
  std::string first;
  for (const auto& v : variants()) {
    const auto n = tf::gen_tfa(v);
    const auto t = tf::truth_table(n);
    const std::size_t want = v.comp == completeness::complete ? 27 : 18;
    if (t.rows.size() != want) {
      ++mismatches;
      if (first.empty()) first = tf::describe(v) + ": wrong domain size";
    }
    points += t.rows.size();
    for (const auto& row : t.rows) {
      const tf::trit a = tf::decode(row.inputs[0], n.inputs[0].domain);
      const tf::trit b = tf::decode(row.inputs[1], n.inputs[1].domain);
      const tf::trit c = tf::decode(row.inputs[2], n.inputs[2].domain);
      const auto ref = v.comp == completeness::complete ? tf::full_add_complete(a, b, c) : tf::full_add_partial(a, b, c);
      bool ok = false;
      try {
        ok = tf::decode(row.outputs[0], t.output_encodings[0]) == ref.sum &&
             tf::decode(row.outputs[1], t.output_encodings[1]) == ref.carry;
      } catch (const tf::domain_error&) {
      }
      if (!ok) {
        ++mismatches;
        if (first.empty()) first = tf::describe(v);
      }
    }
    ++count;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && count == 24 && secs < truth_time_limit_s,
          std::to_string(count) + " variants, " + std::to_string(points) + " points, " + std::to_string(mismatches) +
              " mismatches" + (first.empty() ? "" : " (first: " + first + ")") + ", " + fmt(secs) + " s (limit " +
              fmt(truth_time_limit_s, 0) + " s)"};
}

// 2 ----------------------------------------------------------------------------

enum class via { direct, sti, pti };

tf::netlist rule_unit(polarity type, threshold_class vt, via v) {
  tf::netlist n;
  n.inputs = {{"a", encoding::standard}, {"c", encoding::standard}};
  n.outputs = {{"y", encoding::standard}};
  std::string gate = "c";
  if (v == via::sti) {
    tf::detail::add_sti(n, "inv", "c", "cb");
    gate = "cb";
  } else if (v == via::pti) {
    n.devices.push_back({"inv_p", polarity::p, threshold_class::lvt, "c", "VDD", "cb", {}});
    n.devices.push_back({"inv_n", polarity::n, threshold_class::hvt, "c", "cb", "GND", {}});
    gate = "cb";
  }
  n.devices.push_back({"pu", polarity::p, threshold_class::mvt, "a", "VDD", "w", {}});
  n.devices.push_back({"dut", type, vt, gate, "w", "y", {}});
  n.devices.push_back({"pd", polarity::n, threshold_class::mvt, "a", "y", "GND", {}});
  return n;
}

verdict rule_suite() {
  const std::vector<voltage_level> halfpair{voltage_level::gnd, voltage_level::half};
  const std::vector<voltage_level> binary{voltage_level::gnd, voltage_level::vdd};
  struct row {
    const char* what;
    polarity type;
    threshold_class vt;
    via v;
    std::vector<voltage_level> levels;
    tf::device_action expect;
  };
  const std::vector<row> rows{
      {"P-LVT on c, c in {0,1}", polarity::p, threshold_class::lvt, via::direct, halfpair, tf::device_action::wire},
      {"P-HVT on c, c in {0,1}", polarity::p, threshold_class::hvt, via::direct, halfpair, tf::device_action::keep},
      {"P-HVT on STI(c)", polarity::p, threshold_class::hvt, via::sti, halfpair, tf::device_action::open},
      {"P-HVT on PTI(c)", polarity::p, threshold_class::hvt, via::pti, halfpair, tf::device_action::open},
      {"P-ULVT on c", polarity::p, threshold_class::ulvt, via::direct, halfpair, tf::device_action::wire},
      {"N-HVT on c", polarity::n, threshold_class::hvt, via::direct, halfpair, tf::device_action::open},
      {"N-HVT on STI(c)", polarity::n, threshold_class::hvt, via::sti, halfpair, tf::device_action::keep},
      {"N-LVT on STI(c)", polarity::n, threshold_class::lvt, via::sti, halfpair, tf::device_action::wire},
      {"N-HVT on PTI(c)", polarity::n, threshold_class::hvt, via::pti, halfpair, tf::device_action::wire},
      {"N-MVT on STI(c)", polarity::n, threshold_class::mvt, via::sti, halfpair, tf::device_action::wire},
      {"P-HVT on binary c", polarity::p, threshold_class::hvt, via::direct, binary, tf::device_action::remap_lvt},
  };
  std::size_t ok = 0;
  std::string first;
  for (const auto& r : rows) {
    const auto n = rule_unit(r.type, r.vt, r.v);
    const auto res = tf::apply_assumption(n, {"c", r.levels});
    // The inverter stage follows the same rules; a run without the device under test isolates its share.
    auto without = n;
    std::erase_if(without.devices, [](const tf::device& x) { return x.id == "dut"; });
    const auto base = tf::apply_assumption(without, {"c", r.levels});
    const std::size_t wired = res.report.wired - base.report.wired;
    const std::size_t opened = res.report.opened - base.report.opened;
    const std::size_t remapped = res.report.remapped - base.report.remapped;
    const auto* d = res.circuit.find_device("dut");
    tf::device_action got = tf::device_action::keep;
    if (!d) got = opened ? tf::device_action::open : tf::device_action::wire;
    else if (d->vt != r.vt) got = tf::device_action::remap_lvt;
    const bool counts_ok = wired == (got == tf::device_action::wire) && opened == (got == tf::device_action::open) &&
                           remapped == (got == tf::device_action::remap_lvt);
    if (got == r.expect && counts_ok) ++ok;
    else if (first.empty()) first = std::string(r.what) + ": got " + std::string(tf::to_string(got));
  }
  return {ok == rows.size(), std::to_string(ok) + "/" + std::to_string(rows.size()) + " rule rows reproduced" +
                                 (first.empty() ? "" : " (first failure: " + first + ")")};
}

// 3 ----------------------------------------------------------------------------

std::optional<std::vector<voltage_level>> outputs_at(const tf::compiled_circuit& c, const std::vector<voltage_level>& p) {
  try {
    const auto r = c.solve(p);
    std::vector<voltage_level> out;
    for (int o : c.outputs()) out.push_back(tf::to_level(r.levels[o]));
    return out;
  } catch (const tf::solver_error&) {
    return std::nullopt;
  } catch (const tf::domain_error&) {
    return std::nullopt;
  }
}

verdict simplification_soundness() {
  const auto seed = tf::testing::seed();
  std::mt19937_64 rng(seed);
  int run = 0, rail_merges = 0, reduced = 0;
  for (int i = 0; i < property_cases; ++i) {
    const auto n = tf::testing::random_netlist(rng);
    const auto& in = n.inputs[std::uniform_int_distribution<std::size_t>(0, n.inputs.size() - 1)(rng)];
    std::vector<voltage_level> levels;
    while (levels.empty()) {
      for (auto l : tf::domain_levels(in.domain)) {
        if (rng() & 1u) levels.push_back(l);
      }
    }
    const tf::assumption_domain a{in.net, levels};
    tf::pass_result r;
    try {
      r = tf::simplify_pipeline(n, a);
    } catch (const tf::simplify_error& e) {
      if (e.kind() != tf::simplify_error_kind::rail_merge) {
        return {false, "case " + std::to_string(i) + " (seed " + std::to_string(seed) + "): " + e.what()};
      }
      ++rail_merges;
      ++run;
      continue;
    }
    if (r.circuit.devices.size() > n.devices.size()) {
      return {false, "case " + std::to_string(i) + ": device count grew"};
    }
    reduced += r.circuit.devices.size() < n.devices.size();
    std::vector<std::vector<voltage_level>> domains;
    for (const auto& x : n.inputs) domains.push_back(x.net == a.net ? a.levels : tf::domain_levels(x.domain));
    const tf::compiled_circuit before(n), after(r.circuit);
    for (const auto& p : tf::product(domains)) {
      const auto ref = outputs_at(before, p);
      if (!ref) continue;
      if (outputs_at(after, p) != ref) {
        return {false, "case " + std::to_string(i) + " (seed " + std::to_string(seed) + "): counterexample\n" +
                           tf::serialize(n)};
      }
    }
    ++run;
  }
  return {run >= property_cases, std::to_string(run) + " random netlists (seed " + std::to_string(seed) + "), " +
                                     std::to_string(reduced) + " reduced, " + std::to_string(rail_merges) +
                                     " rejected as rail shorts, 0 counterexamples"};
}

// 4 ----------------------------------------------------------------------------

std::size_t carry_division_states(const tf::netlist& n) {
  const tf::compiled_circuit c(n);
  std::size_t k = 0;
  for (const auto& p : tf::product(tf::input_domain(n))) k += c.solve(p).divided(c.index("Carry"));
  return k;
}

verdict carry_reencoding() {
  std::size_t ok = 0, total = 0;
  std::string detail;
  for (const auto& v : variants(completeness::partial, encoding::full_vdd_high)) {
    ++total;
    const auto vdd = carry_division_states(tf::gen_tfa(v));
    auto sibling = v;
    sibling.carry = encoding::half_vdd_high;
    const auto half = carry_division_states(tf::gen_tfa(sibling));
    if (vdd == 0 && half > 0) ++ok;
    else detail += " " + tf::describe(v) + "(vdd " + std::to_string(vdd) + ", half " + std::to_string(half) + ")";
  }
  return {ok == total && total == 8, std::to_string(ok) + "/" + std::to_string(total) +
                                         " VDD-carry variants with 0 carry divisions over 18 states and a dividing "
                                         "HALF-carry sibling" + detail};
}

// 5 ----------------------------------------------------------------------------

verdict rca_correctness() {
  std::string detail;
  bool pass = true;
  for (auto s : tf::all_styles) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto n = tf::gen_rca(4, {s, completeness::partial, encoding::full_vdd_high, tf::cascade_mode::direct});
    const auto t = tf::truth_table(n);
    std::size_t bad = 0;
    for (const auto& row : t.rows) {
      long a = 0, b = 0, sum = 0, w = 1;
      for (int i = 0; i < 4; ++i, w *= 3) {
        a += w * tf::decode(row.inputs[i], encoding::standard).value();
        b += w * tf::decode(row.inputs[4 + i], encoding::standard).value();
        sum += w * tf::decode(row.outputs[i], encoding::standard).value();
      }
      sum += w * tf::decode(row.outputs[4], encoding::full_vdd_high).value();
      const long cin = tf::decode(row.inputs[8], encoding::full_vdd_high).value();
      bad += sum != a + b + cin;
    }
    const double secs = seconds_since(t0);
    pass = pass && bad == 0 && t.rows.size() == 13122 && secs < rca_time_limit_s;
    detail += (detail.empty() ? "" : ", ") + std::string(tf::to_string(s)) + " " + std::to_string(t.rows.size()) +
              " cases/" + std::to_string(bad) + " wrong/" + fmt(secs, 2) + " s";
  }
  return {pass, detail + " (limit " + fmt(rca_time_limit_s, 0) + " s each)"};
}

// 6 ----------------------------------------------------------------------------

verdict published_arithmetic() {
  const auto results = tf::load_results(tf::testing::read_file(tf::testing::data_path("results.csv")));
  std::vector<tf::result_record> in_scope;
  for (const auto& r : results) {
    if (r.table >= 6 && r.table <= 16) in_scope.push_back(r);
  }
  std::size_t pdp_rows = 0, pdp_bad = 0;
  std::string detail;
  for (const auto& row : tf::pdp_check(in_scope)) {
    if (!row.reported_fj) continue;
    ++pdp_rows;
    const bool ok = std::abs(row.recomputed_fj - *row.reported_fj) <= pdp_rel_tol * *row.reported_fj;
    if (!ok) {
      ++pdp_bad;
      detail += "; " + row.key + " PDP " + fmt(row.recomputed_fj, 4) + " fJ vs " + fmt(*row.reported_fj, 4) + " fJ";
    }
  }
  const auto imps = tf::load_improvements(tf::testing::read_file(tf::testing::data_path("improvements.csv")));
  std::size_t imp_rows = 0, imp_bad = 0;
  for (const auto& r : imps) {
    if (r.table < 6 || r.table > 15) continue;
    ++imp_rows;
    const double pct = tf::improvement_percent(r.old_value, r.new_value);
    if (std::abs(pct - r.reported_pct) > improvement_tol_pts) {
      ++imp_bad;
      detail += "; T" + std::to_string(r.table) + " " + r.metric + " improvement " + fmt(pct, 2) + "% vs " +
                fmt(r.reported_pct, 1) + "%";
    }
  }
  return {pdp_bad == 0 && imp_bad == 0 && pdp_rows > 0 && imp_rows > 0,
          std::to_string(pdp_rows - pdp_bad) + "/" + std::to_string(pdp_rows) + " PDP rows within 0.5%, " +
              std::to_string(imp_rows - imp_bad) + "/" + std::to_string(imp_rows) + " improvements within 0.2 pts" +
              detail};
}

// 7 ----------------------------------------------------------------------------

bool each_pair_once(const tf::pattern& p, std::size_t k) {
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  for (std::size_t i = 0; i + 1 < p.rows.size(); ++i) {
    if (p.rows[i] == p.rows[i + 1] || !seen.insert({p.rows[i], p.rows[i + 1]}).second) return false;
  }
  return seen.size() == k * (k - 1);
}

verdict pattern_completeness() {
  const auto p332 = tf::gen_pattern({"a", "b", "cin"}, {3, 3, 2}, tf::pattern_kind::complete_transitions);
  const auto p333 = tf::gen_pattern({"a", "b", "cin"}, {3, 3, 3}, tf::pattern_kind::complete_transitions);
  const bool ok = p332.transitions() == 306 && each_pair_once(p332, 18) && p333.transitions() == 702 &&
                  each_pair_once(p333, 27);
  return {ok, "(3,3,2): " + std::to_string(p332.transitions()) + " transitions, (3,3,3): " +
                  std::to_string(p333.transitions()) + ", every ordered state pair exactly once"};
}

// 8 ----------------------------------------------------------------------------

verdict power_model() {
  bool ok = true;
  std::string detail;
  // The static term has no load or frequency dependence.
  const tf::power_breakdown base{0.4, 2e-15, 1e8, 0.9, 3e-7};
  for (const auto& alt : {tf::power_breakdown{0.4, 9e-15, 1e8, 0.9, 3e-7}, tf::power_breakdown{0.4, 2e-15, 1e9, 0.9, 3e-7}}) {
    ok = ok && tf::power_static(alt) == tf::power_static(base);
  }
  const auto logical = tf::gen_pattern({"a", "b", "cin"}, {3, 3, 2}, tf::pattern_kind::static_states);
  for (auto s : tf::all_styles) {
    for (auto cas : {tf::cascade_mode::direct, tf::cascade_mode::two_tha}) {
      auto full = tf::gen_tfa({s, completeness::partial, encoding::full_vdd_high, cas});
      const auto half = tf::gen_tfa({s, completeness::partial, encoding::half_vdd_high, cas});
      const auto comp = tf::gen_tfa({s, completeness::complete, encoding::half_vdd_high, cas});
      const double mf = tf::static_division_mean(full, logical);
      const double mh = tf::static_division_mean(half, logical);
      const double mc = tf::static_division_mean(comp, logical);
      full.loads.push_back({"cl", "Sum", 8e-15});
      const bool load_invariant = tf::static_division_mean(full, logical) == mf;
      const bool ordered = mf <= mh && mh <= mc;
      ok = ok && load_invariant && ordered;
      detail += (detail.empty() ? "" : ", ") + std::string(tf::to_string(s)) +
                (cas == tf::cascade_mode::direct ? "" : "/two-tha") + " " + fmt(mf, 2) + "<=" + fmt(mh, 2) +
                "<=" + fmt(mc, 2) + (ordered ? "" : " VIOLATED") + (load_invariant ? "" : " LOAD-DEPENDENT");
    }
  }
  return {ok, "static term load/frequency invariant; mean divisions vdd<=half<=complete: " + detail};
}

// 9 ----------------------------------------------------------------------------

verdict not_reproducible() {
  return {true,
          "declared: absolute delays (ps) and powers (uW) need SPICE with a CNFET device model and are not "
          "reproduced; criteria 1-8 stand in with exhaustive equivalence, invariants and arithmetic checks"};
}

// 10 ---------------------------------------------------------------------------

verdict catalog() {
  const auto records = tf::load_catalog(tf::testing::read_file(tf::testing::data_path("table4.csv")));
  const auto agg = tf::aggregate(records, "completeness");
  const std::size_t partial = agg.count("partial") ? agg.at("partial").count : 0;
  double sum = 0;
  for (const auto& [k, s] : agg) sum += s.percent;
  const auto rows = tf::pdp_check(records);
  std::size_t consistent = 0, reported = 0;
  for (const auto& r : rows) {
    consistent += r.consistent;
    reported += r.reported_fj.has_value();
  }
  const bool ok = records.size() == 11 && partial == 5 && consistent == rows.size() &&
                  std::abs(sum - 100.0) <= percent_sum_tol;
  return {ok, std::to_string(records.size()) + " records, partial " + std::to_string(partial) + "/" +
                  std::to_string(records.size()) + " (" + fmt(agg.count("partial") ? agg.at("partial").percent : 0, 1) +
                  "%), pdp_check " + std::to_string(rows.size()) + " products computed, " + std::to_string(consistent) +
                  " consistent (" + std::to_string(reported) + " with a printed PDP to compare)"};
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, skip;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if ((arg == "--only" || arg == "--skip") && i + 1 < argc) {
      (arg == "--only" ? only : skip) = parse_list(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N,...] [--skip N,...]\n");
      return 2;
    }
  }
  const std::vector<std::pair<const char*, std::function<verdict()>>> criteria{
      {"truth fidelity", truth_fidelity},
      {"partial-adder rule suite", rule_suite},
      {"simplification soundness", simplification_soundness},
      {"carry re-encoding", carry_reencoding},
      {"ripple-carry adder", rca_correctness},
      {"published metrics arithmetic", published_arithmetic},
      {"pattern completeness", pattern_completeness},
      {"power-model properties", power_model},
      {"absolute ps/uW figures", not_reproducible},
      {"catalog", catalog},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if ((!only.empty() && !only.count(id)) || skip.count(id)) continue;
    verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s  %2d %s: %s\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
