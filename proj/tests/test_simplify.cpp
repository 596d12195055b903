// Copyright (c) 2026 The tritforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "tritforge/generate.hpp"
#include "tritforge/netlist_io.hpp"
#include "tritforge/simplify.hpp"

namespace tf = tritforge;
using tf::device_action;
using tf::encoding;
using tf::polarity;
using tf::threshold_class;
using tf::voltage_level;

namespace {

const std::vector<voltage_level> halfpair{voltage_level::gnd, voltage_level::half};
const std::vector<voltage_level> binary{voltage_level::gnd, voltage_level::vdd};

enum class driver { direct, sti, pti, nti };

/// One device under test gated by c (or an inverter of c), in series between a pull-up and
/// the output y; a second input a gives the output a defined level elsewhere.
tf::netlist unit(polarity type, threshold_class vt, driver via) {
  tf::netlist n;
  n.title = "rule";
  n.inputs = {{"a", encoding::standard}, {"c", encoding::standard}};
  n.outputs = {{"y", encoding::standard}};
  std::string gate = "c";
  switch (via) {
    case driver::direct: break;
    case driver::sti:
      tf::detail::add_sti(n, "inv", "c", "cb");
      gate = "cb";
      break;
    case driver::pti:
      n.devices.push_back({"inv_p", polarity::p, threshold_class::lvt, "c", "VDD", "cb", {}});
      n.devices.push_back({"inv_n", polarity::n, threshold_class::hvt, "c", "cb", "GND", {}});
      gate = "cb";
      break;
    case driver::nti:
      n.devices.push_back({"inv_p", polarity::p, threshold_class::hvt, "c", "VDD", "cb", {}});
      n.devices.push_back({"inv_n", polarity::n, threshold_class::lvt, "c", "cb", "GND", {}});
      gate = "cb";
      break;
  }
  n.devices.push_back({"pu", polarity::p, threshold_class::mvt, "a", "VDD", "w", {}});
  n.devices.push_back({"dut", type, vt, gate, "w", "y", {}});
  n.devices.push_back({"pd", polarity::n, threshold_class::mvt, "a", "y", "GND", {}});
  return n;
}

struct rule_row {
  const char* name;
  polarity type;
  threshold_class vt;
  driver via;
  std::vector<voltage_level> levels;
  device_action expected;
};

}  // namespace

TEST(Classify, Examples) {
  EXPECT_EQ(tf::classify_device(polarity::p, threshold_class::lvt, halfpair, false), device_action::wire);
  // STI(c) over c in {0,1} sees {VDD, HALF}
  EXPECT_EQ(tf::classify_device(polarity::p, threshold_class::hvt, {voltage_level::vdd, voltage_level::half}, false),
            device_action::open);
  EXPECT_EQ(tf::classify_device(polarity::p, threshold_class::hvt, binary, true), device_action::remap_lvt);
  EXPECT_EQ(tf::classify_device(polarity::p, threshold_class::hvt, halfpair, false), device_action::keep);
  EXPECT_EQ(tf::classify_device(polarity::n, threshold_class::lvt, binary, true), device_action::keep);
  EXPECT_EQ(tf::classify_device(polarity::n, threshold_class::mvt, binary, true), device_action::remap_lvt);
}

TEST(Classify, FullDomainNeverWiresOrOpens) {
  const std::vector<voltage_level> all{voltage_level::gnd, voltage_level::half, voltage_level::vdd};
  for (auto p : {polarity::n, polarity::p}) {
    for (auto vt : tf::all_threshold_classes) {
      EXPECT_EQ(tf::classify_device(p, vt, all, false), device_action::keep);
    }
  }
}

class RuleRows : public ::testing::TestWithParam<rule_row> {};

TEST_P(RuleRows, ApplyAssumption) {
  const auto& row = GetParam();
  const auto n = unit(row.type, row.vt, row.via);
  const auto r = tf::apply_assumption(n, {"c", row.levels});
  // The inverter stage is rewritten by the same rules; subtract its share using a run without the device under test.
  auto without = n;
  std::erase_if(without.devices, [](const tf::device& d) { return d.id == "dut"; });
  const auto base = tf::apply_assumption(without, {"c", row.levels});
  const std::size_t wired = r.report.wired - base.report.wired;
  const std::size_t opened = r.report.opened - base.report.opened;
  const std::size_t remapped = r.report.remapped - base.report.remapped;
  const auto* dut = r.circuit.find_device("dut");
  switch (row.expected) {
    case device_action::wire:
      EXPECT_EQ(dut, nullptr);
      EXPECT_EQ(wired, 1u);
      EXPECT_EQ(opened, 0u);
      break;
    case device_action::open:
      EXPECT_EQ(dut, nullptr);
      EXPECT_EQ(opened, 1u);
      EXPECT_EQ(wired, 0u);
      break;
    case device_action::remap_lvt:
      ASSERT_NE(dut, nullptr);
      EXPECT_EQ(dut->vt, threshold_class::lvt);
      EXPECT_EQ(remapped, 1u);
      break;
    case device_action::keep:
      ASSERT_NE(dut, nullptr);
      EXPECT_EQ(dut->vt, row.vt);
      EXPECT_EQ(wired + opened + remapped, 0u);
      break;
  }
  for (const auto& d : n.devices) {
    if (d.id.rfind("inv", 0) != 0) continue;
    const auto* got = r.circuit.find_device(d.id);
    const auto* want = base.circuit.find_device(d.id);
    ASSERT_EQ(got == nullptr, want == nullptr) << d.id;
    if (got) {
      EXPECT_EQ(got->vt, want->vt) << d.id;
    }
  }
  const auto points = tf::detail::assumed_points(n, {"c", row.levels});
  EXPECT_TRUE(tf::detail::outcomes_agree(tf::detail::evaluate(n, points, false),
                                         tf::detail::evaluate(r.circuit, points, false)));
}

INSTANTIATE_TEST_SUITE_P(
    PartialAdderRules, RuleRows,
    ::testing::Values(
        rule_row{"p_lvt_on_c_wire", polarity::p, threshold_class::lvt, driver::direct, halfpair, device_action::wire},
        rule_row{"p_hvt_on_c_kept", polarity::p, threshold_class::hvt, driver::direct, halfpair, device_action::keep},
        rule_row{"p_hvt_on_sti_open", polarity::p, threshold_class::hvt, driver::sti, halfpair, device_action::open},
        rule_row{"p_hvt_on_pti_open", polarity::p, threshold_class::hvt, driver::pti, halfpair, device_action::open},
        rule_row{"p_ulvt_on_c_wire", polarity::p, threshold_class::ulvt, driver::direct, halfpair, device_action::wire},
        rule_row{"n_hvt_on_c_open", polarity::n, threshold_class::hvt, driver::direct, halfpair, device_action::open},
        rule_row{"n_hvt_on_sti_kept", polarity::n, threshold_class::hvt, driver::sti, halfpair, device_action::keep},
        rule_row{"n_lvt_on_sti_wire", polarity::n, threshold_class::lvt, driver::sti, halfpair, device_action::wire},
        rule_row{"n_hvt_on_pti_wire", polarity::n, threshold_class::hvt, driver::pti, halfpair, device_action::wire},
        rule_row{"n_mvt_on_sti_wire", polarity::n, threshold_class::mvt, driver::sti, halfpair, device_action::wire},
        rule_row{"p_hvt_binary_c_remap", polarity::p, threshold_class::hvt, driver::direct, binary,
                 device_action::remap_lvt},
        rule_row{"n_hvt_binary_c_remap", polarity::n, threshold_class::hvt, driver::direct, binary,
                 device_action::remap_lvt},
        rule_row{"n_hvt_binary_nti_remap", polarity::n, threshold_class::hvt, driver::nti, binary,
                 device_action::remap_lvt}),
    [](const ::testing::TestParamInfo<rule_row>& info) { return std::string(info.param.name); });

TEST(ApplyAssumption, UpdatesDeclaredDomain) {
  const auto n = unit(polarity::p, threshold_class::hvt, driver::direct);
  EXPECT_EQ(tf::apply_assumption(n, {"c", halfpair}).circuit.find_input("c")->domain, encoding::half_vdd_high);
  EXPECT_EQ(tf::apply_assumption(n, {"c", binary}).circuit.find_input("c")->domain, encoding::full_vdd_high);
}

TEST(ApplyAssumption, Errors) {
  const auto n = unit(polarity::p, threshold_class::hvt, driver::direct);
  try {
    (void)tf::apply_assumption(n, {"nope", halfpair});
    FAIL();
  } catch (const tf::simplify_error& e) {
    EXPECT_EQ(e.kind(), tf::simplify_error_kind::unknown_net);
  }
  try {
    (void)tf::apply_assumption(n, {"w", halfpair});
    FAIL();
  } catch (const tf::simplify_error& e) {
    EXPECT_EQ(e.kind(), tf::simplify_error_kind::non_input_assumption);
  }
  auto narrow = n;
  narrow.inputs[1].domain = encoding::half_vdd_high;
  EXPECT_THROW((void)tf::apply_assumption(narrow, {"c", binary}), tf::domain_error);
}

TEST(ApplyAssumption, RailShortIsRejected) {
  const auto n = tf::parse(".input c ternary\n.output y\nM m1 p lvt G=c S=VDD D=GND\nM m2 n lvt G=c S=y D=GND\n");
  try {
    (void)tf::apply_assumption(n, {"c", halfpair});
    FAIL();
  } catch (const tf::simplify_error& e) {
    EXPECT_EQ(e.kind(), tf::simplify_error_kind::rail_merge);
  }
}

TEST(ApplyAssumption, TrivialAssumptionChangesNothing) {
  const auto n = tf::gen_tfa({tf::logic_style::ternary_cmos, tf::completeness::complete, encoding::half_vdd_high,
                              tf::cascade_mode::direct});
  const auto r = tf::simplify_pipeline(n, tf::make_assumption("cin", encoding::standard));
  EXPECT_EQ(r.report, tf::pass_report{});
  EXPECT_TRUE(tf::structurally_equal(r.circuit, n));
}

TEST(Prune, DanglingChainAfterOpen) {
  // m1 opens under c in {0,1}; the chain behind it then reaches no output.
  const auto n = tf::parse(".input a ternary\n.input c ternary\n.output y\n"
                           "M m0 p mvt G=a S=VDD D=y\nM m9 n mvt G=a S=y D=GND\n"
                           "M m1 n hvt G=c S=y D=k1\nM m2 n lvt G=a S=k1 D=k2\nM m3 n lvt G=a S=k2 D=GND\n");
  const auto opened = tf::apply_assumption(n, {"c", halfpair});
  EXPECT_EQ(opened.report.opened, 1u);
  const auto pruned = tf::prune_dead(opened.circuit);
  EXPECT_EQ(pruned.report.pruned, 2u);
  EXPECT_EQ(pruned.circuit.devices.size(), 2u);
}

TEST(Prune, GeneratedAdderIsFixpoint) {
  for (auto style : tf::all_styles) {
    const auto n = tf::gen_tfa({style, tf::completeness::complete, encoding::half_vdd_high, tf::cascade_mode::direct});
    const auto r = tf::prune_dead(n);
    EXPECT_EQ(r.report.pruned, 0u) << tf::to_string(style);
    EXPECT_TRUE(tf::structurally_equal(r.circuit, n));
  }
}

TEST(Prune, RemovesUnobservedLogicAndStaleDeclarations) {
  const auto n = tf::parse(".input a binary\n.output y\n.net spare\n"
                           "M m0 p mvt G=a S=VDD D=y\nM m1 n mvt G=a S=y D=GND\n"
                           "M m2 p mvt G=a S=VDD D=z\nM m3 n mvt G=a S=z D=GND\n"
                           "c cz z 1f\n");
  const auto r = tf::prune_dead(n);
  EXPECT_EQ(r.circuit.devices.size(), 2u);
  EXPECT_TRUE(r.circuit.nets.empty());
  EXPECT_TRUE(r.circuit.loads.empty());
  EXPECT_EQ(r.report.pruned, 4u);
  EXPECT_EQ(tf::prune_dead(r.circuit).report, tf::pass_report{});
}

TEST(Prune, KeepsGateFanIn) {
  const auto n = tf::parse(".input a binary\n.output y\n"
                           "M m0 p mvt G=b S=VDD D=y\nM m1 n mvt G=b S=y D=GND\n"
                           "M m2 p mvt G=a S=VDD D=b\nM m3 n mvt G=a S=b D=GND\n");
  EXPECT_EQ(tf::prune_dead(n).report.pruned, 0u);
}

TEST(Factor, ParallelDuplicates) {
  const auto n = tf::parse(".input a binary\n.output y\n"
                           "M m0 n lvt G=a S=y D=GND\nM m1 n lvt G=a S=y D=GND tag=x\nM m2 n lvt G=a S=GND D=y\n"
                           "M m3 p lvt G=a S=VDD D=y\n");
  const auto r = tf::factor_parallel(n);
  EXPECT_EQ(r.report.factored, 2u);
  ASSERT_EQ(r.circuit.devices.size(), 2u);
  EXPECT_EQ(r.circuit.devices[0].id, "m0");
  EXPECT_TRUE(r.circuit.devices[0].has_tag("x"));
}

TEST(Factor, NoDuplicatesUnchanged) {
  const auto n = tf::gen_gate(tf::gate_kind::sti);
  const auto r = tf::factor_parallel(n);
  EXPECT_EQ(r.report.factored, 0u);
  EXPECT_TRUE(tf::structurally_equal(r.circuit, n));
}

TEST(Factor, DifferentThresholdsAreDistinct) {
  const auto n = tf::parse(".input a binary\n.output y\nM m0 n lvt G=a S=y D=GND\nM m1 n hvt G=a S=y D=GND\n");
  EXPECT_EQ(tf::factor_parallel(n).report.factored, 0u);
}

TEST(Rebind, PartialAdderLosesCarryDivision) {
  for (auto style : tf::all_styles) {
    const auto half = tf::gen_tfa({style, tf::completeness::partial, encoding::half_vdd_high, tf::cascade_mode::direct});
    const auto r = tf::rebind_carry(half, "Carry");
    EXPECT_LT(r.circuit.devices.size(), half.devices.size()) << tf::to_string(style);
    EXPECT_EQ(r.circuit.find_output("Carry")->enc, encoding::full_vdd_high);
    EXPECT_EQ(r.circuit.find_input("cin")->domain, encoding::full_vdd_high);
    EXPECT_TRUE(tf::check_adder(r.circuit).empty()) << tf::to_string(style);
    const tf::compiled_circuit c(r.circuit);
    for (const auto& p : tf::product(tf::input_domain(r.circuit))) {
      EXPECT_FALSE(c.solve(p).divided(c.index("Carry"))) << tf::to_string(style);
    }
  }
}

TEST(Rebind, NoDividerFound) {
  const auto n = tf::gen_gate(tf::gate_kind::binary_inverter);
  try {
    (void)tf::rebind_carry(n, "y");
    FAIL();
  } catch (const tf::simplify_error& e) {
    EXPECT_EQ(e.kind(), tf::simplify_error_kind::no_divider_found);
  }
}

TEST(Rebind, CarryMustBeAnOutput) {
  const auto n = tf::gen_tfa({tf::logic_style::ntpt, tf::completeness::partial, encoding::half_vdd_high,
                              tf::cascade_mode::direct});
  try {
    (void)tf::rebind_carry(n, "Nope");
    FAIL();
  } catch (const tf::simplify_error& e) {
    EXPECT_EQ(e.kind(), tf::simplify_error_kind::unknown_net);
  }
  EXPECT_THROW((void)tf::rebind_carry(n, "cin"), tf::domain_error);
}

TEST(Rebind, AutoDetectsUntaggedDivider) {
  auto n = tf::gen_tfa({tf::logic_style::ternary_cmos, tf::completeness::partial, encoding::half_vdd_high,
                        tf::cascade_mode::direct});
  for (auto& d : n.devices) d.tags.clear();
  const auto r = tf::rebind_carry(n, "Carry");
  EXPECT_TRUE(tf::check_adder(r.circuit).empty());
  EXPECT_LT(r.circuit.devices.size(), n.devices.size());
}

TEST(Pipeline, CompleteToPartial) {
  for (auto style : tf::all_styles) {
    for (auto cas : {tf::cascade_mode::direct, tf::cascade_mode::two_tha}) {
      const auto n = tf::gen_tfa({style, tf::completeness::complete, encoding::half_vdd_high, cas});
      const auto r = tf::simplify_pipeline(n, tf::make_assumption("cin", encoding::half_vdd_high));
      EXPECT_LT(r.circuit.devices.size(), n.devices.size()) << tf::to_string(style);
      EXPECT_TRUE(tf::check_adder(r.circuit).empty()) << tf::to_string(style);
      EXPECT_EQ(r.circuit.find_input("cin")->domain, encoding::half_vdd_high);
    }
  }
}

TEST(Pipeline, CompleteToVddCarry) {
  for (auto style : tf::all_styles) {
    const auto n = tf::gen_tfa({style, tf::completeness::complete, encoding::half_vdd_high, tf::cascade_mode::direct});
    const auto half = tf::simplify_pipeline(n, tf::make_assumption("cin", encoding::half_vdd_high));
    const auto vdd = tf::simplify_pipeline(n, tf::make_assumption("cin", encoding::half_vdd_high), "Carry");
    EXPECT_LT(vdd.circuit.devices.size(), half.circuit.devices.size()) << tf::to_string(style);
    EXPECT_TRUE(tf::check_adder(vdd.circuit).empty()) << tf::to_string(style);
    // Counts only grow along the pipeline.
    EXPECT_GE(vdd.report.wired, half.report.wired);
    EXPECT_GE(vdd.report.opened, half.report.opened);
    EXPECT_GE(vdd.report.pruned, half.report.pruned);
  }
}

TEST(Pipeline, Idempotent) {
  for (auto style : tf::all_styles) {
    const auto n = tf::gen_tfa({style, tf::completeness::complete, encoding::half_vdd_high, tf::cascade_mode::direct});
    const auto a = tf::make_assumption("cin", encoding::half_vdd_high);
    const auto once = tf::simplify_pipeline(n, a);
    const auto twice = tf::simplify_pipeline(once.circuit, a);
    EXPECT_EQ(twice.report, tf::pass_report{}) << tf::to_string(style);
    EXPECT_TRUE(tf::structurally_equal(twice.circuit, once.circuit));
  }
}

TEST(Pipeline, ReportJson) {
  const nlohmann::json j = tf::pass_report{1, 2, 3, 4, 5};
  EXPECT_EQ(j.dump(), R"({"factored":5,"opened":2,"pruned":4,"remapped":3,"wired":1})");
}
