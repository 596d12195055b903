// tritforge/catalog.hpp: surveyed adder designs, published results, aggregate statistics
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

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "generate.hpp"

namespace tritforge {

/// Malformed catalog input; `row` is the 1-based line number.
class schema_error : public error {
 public:
  schema_error(std::size_t row, const std::string& what)
      : error("row " + std::to_string(row) + ": " + what), row_(row) {}
  [[nodiscard]] std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class unknown_field : public error {
 public:
  using error::error;
};

enum class cascade_class : std::uint8_t { direct, two_tha, both };

struct design_record {
  std::string key;
  std::optional<int> year;
  std::string style;
  std::string technology;
  std::optional<double> lg_nm;
  completeness comp = completeness::complete;
  std::optional<encoding> carry;  // absent for complete designs
  cascade_class cascade = cascade_class::direct;
  std::optional<double> delay_ps;
  std::optional<double> power_uw;
  std::optional<double> pdp_fj;
  std::optional<int> transistors;
};

inline constexpr std::string_view catalog_header =
    "key,year,style,technology,lg_nm,completeness,carry_encoding,cascade,delay_ps,power_uw,pdp_fj,transistors";

namespace detail {

/// Comma-separated fields with double-quote escaping.
inline std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

inline std::vector<std::pair<std::size_t, std::vector<std::string>>> csv_rows(std::string_view text,
                                                                              std::string_view header) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  const std::size_t width = split_csv(header).size();
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != header) throw schema_error(line_no, "expected header '" + std::string(header) + "'");
      seen_header = true;
      continue;
    }
    auto fields = split_csv(line);
    if (fields.size() != width) {
      throw schema_error(line_no, "expected " + std::to_string(width) + " fields, got " + std::to_string(fields.size()));
    }
    rows.emplace_back(line_no, std::move(fields));
  }
  if (!seen_header) throw schema_error(1, "missing header");
  return rows;
}

inline std::optional<double> opt_number(std::size_t row, const std::string& field, const std::string& text) {
  if (text.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw schema_error(row, field + ": not a number '" + text + "'");
  }
  if (v < 0) throw schema_error(row, field + " must be non-negative");
  return v;
}

inline std::optional<int> opt_int(std::size_t row, const std::string& field, const std::string& text) {
  auto v = opt_number(row, field, text);
  if (!v) return std::nullopt;
  if (*v != std::floor(*v)) throw schema_error(row, field + " must be an integer");
  return static_cast<int>(*v);
}

}  // namespace detail

[[nodiscard]] inline std::vector<design_record> load_catalog(std::string_view csv) {
  std::vector<design_record> out;
  for (auto& [row, f] : detail::csv_rows(csv, catalog_header)) {
    design_record r;
    r.key = f[0];
    if (r.key.empty()) throw schema_error(row, "empty key");
    r.year = detail::opt_int(row, "year", f[1]);
    r.style = f[2];
    r.technology = f[3];
    r.lg_nm = detail::opt_number(row, "lg_nm", f[4]);
    if (f[5] == "complete") r.comp = completeness::complete;
    else if (f[5] == "partial") r.comp = completeness::partial;
    else throw schema_error(row, "completeness must be complete or partial");
    if (f[6] == "half") r.carry = encoding::half_vdd_high;
    else if (f[6] == "vdd") r.carry = encoding::full_vdd_high;
    else if (!f[6].empty()) throw schema_error(row, "carry_encoding must be half, vdd or empty");
    if (r.comp == completeness::complete && r.carry == encoding::full_vdd_high) {
      throw schema_error(row, "a complete design cannot carry logical 1 at VDD");
    }
    if (f[7] == "direct") r.cascade = cascade_class::direct;
    else if (f[7] == "two-tha") r.cascade = cascade_class::two_tha;
    else if (f[7] == "both") r.cascade = cascade_class::both;
    else throw schema_error(row, "cascade must be direct, two-tha or both");
    r.delay_ps = detail::opt_number(row, "delay_ps", f[8]);
    r.power_uw = detail::opt_number(row, "power_uw", f[9]);
    r.pdp_fj = detail::opt_number(row, "pdp_fj", f[10]);
    r.transistors = detail::opt_int(row, "transistors", f[11]);
    out.push_back(std::move(r));
  }
  return out;
}

struct category_stat {
  std::size_t count = 0;
  double percent = 0.0;

  bool operator==(const category_stat&) const = default;
};

/// Count and share per category; missing values fall under "n/a".
[[nodiscard]] inline std::map<std::string, category_stat> aggregate(const std::vector<design_record>& records,
                                                                    std::string_view field) {
  std::function<std::string(const design_record&)> get;
  if (field == "completeness") {
    get = [](const design_record& r) { return std::string(r.comp == completeness::complete ? "complete" : "partial"); };
  } else if (field == "carry_encoding") {
    get = [](const design_record& r) {
      return r.carry ? std::string(output_encoding_name(*r.carry)) : std::string("n/a");
    };
  } else if (field == "cascade") {
    get = [](const design_record& r) {
      switch (r.cascade) {
        case cascade_class::direct: return std::string("direct");
        case cascade_class::two_tha: return std::string("two-tha");
        case cascade_class::both: return std::string("both");
      }
      return std::string("?");
    };
  } else if (field == "style") {
    get = [](const design_record& r) { return r.style; };
  } else if (field == "technology") {
    get = [](const design_record& r) { return r.technology; };
  } else if (field == "year") {
    get = [](const design_record& r) { return r.year ? std::to_string(*r.year) : std::string("n/a"); };
  } else {
    throw unknown_field("unknown or non-categorical field '" + std::string(field) + "'");
  }
  std::map<std::string, category_stat> out;
  for (const auto& r : records) ++out[get(r)].count;
  for (auto& [k, s] : out) s.percent = 100.0 * static_cast<double>(s.count) / static_cast<double>(records.size());
  return out;
}

/// Relative tolerance used when comparing recomputed and reported power-delay products.
inline constexpr double pdp_tolerance = 0.005;

struct pdp_row {
  std::string key;
  double recomputed_fj = 0.0;
  std::optional<double> reported_fj;
  bool consistent = true;
};

/// fJ from ps and uW.
[[nodiscard]] inline double pdp_fj(double delay_ps, double power_uw) {
  return pdp(delay_ps * 1e-12, power_uw * 1e-6) * 1e15;
}

[[nodiscard]] inline pdp_row check_pdp(std::string key, double delay_ps, double power_uw,
                                       std::optional<double> reported_fj) {
  pdp_row r{std::move(key), pdp_fj(delay_ps, power_uw), reported_fj, true};
  if (reported_fj) r.consistent = std::abs(r.recomputed_fj - *reported_fj) <= pdp_tolerance * *reported_fj;
  return r;
}

/// Records lacking delay or power are skipped.
[[nodiscard]] inline std::vector<pdp_row> pdp_check(const std::vector<design_record>& records) {
  std::vector<pdp_row> out;
  for (const auto& r : records) {
    if (!r.delay_ps || !r.power_uw) continue;
    out.push_back(check_pdp(r.key, *r.delay_ps, *r.power_uw, r.pdp_fj));
  }
  return out;
}

// --- published comparison tables -----------------------------------------------

/// One row of a results table (single adder cells or ripple-carry adders).
struct result_record {
  int table = 0;
  std::string label;  // as printed, e.g. "Partial [95]"
  std::string ref;    // design key, e.g. "[101]"
  std::string role;   // original | intermediate | simplified | unchanged
  std::optional<double> delay_ps;
  std::optional<double> power_uw;
  std::optional<double> pdp_fj;
  std::optional<int> transistors;
};

inline constexpr std::string_view results_header = "table,label,ref,role,delay_ps,power_uw,pdp_fj,transistors";

[[nodiscard]] inline std::vector<result_record> load_results(std::string_view csv) {
  std::vector<result_record> out;
  for (auto& [row, f] : detail::csv_rows(csv, results_header)) {
    result_record r;
    const auto t = detail::opt_int(row, "table", f[0]);
    if (!t) throw schema_error(row, "table is required");
    r.table = *t;
    r.label = f[1];
    r.ref = f[2];
    r.role = f[3];
    if (r.role != "original" && r.role != "intermediate" && r.role != "simplified" && r.role != "unchanged") {
      throw schema_error(row, "unknown role '" + r.role + "'");
    }
    r.delay_ps = detail::opt_number(row, "delay_ps", f[4]);
    r.power_uw = detail::opt_number(row, "power_uw", f[5]);
    r.pdp_fj = detail::opt_number(row, "pdp_fj", f[6]);
    r.transistors = detail::opt_int(row, "transistors", f[7]);
    out.push_back(std::move(r));
  }
  return out;
}

[[nodiscard]] inline std::vector<pdp_row> pdp_check(const std::vector<result_record>& records) {
  std::vector<pdp_row> out;
  for (const auto& r : records) {
    if (!r.delay_ps || !r.power_uw) continue;
    out.push_back(check_pdp("T" + std::to_string(r.table) + " " + r.label, *r.delay_ps, *r.power_uw, r.pdp_fj));
  }
  return out;
}

/// A printed "Improvement" cell with the two values it compares.
struct improvement_record {
  int table = 0;
  std::string metric;  // delay | power | pdp | transistors
  double old_value = 0.0;
  double new_value = 0.0;
  double reported_pct = 0.0;
};

inline constexpr std::string_view improvements_header = "table,metric,old,new,reported_pct";

/// Tolerance, in percentage points, for recomputed improvements.
inline constexpr double improvement_tolerance_pts = 0.2;

[[nodiscard]] inline std::vector<improvement_record> load_improvements(std::string_view csv) {
  std::vector<improvement_record> out;
  for (auto& [row, f] : detail::csv_rows(csv, improvements_header)) {
    improvement_record r;
    const auto t = detail::opt_int(row, "table", f[0]);
    const auto o = detail::opt_number(row, "old", f[2]);
    const auto nv = detail::opt_number(row, "new", f[3]);
    const auto p = detail::opt_number(row, "reported_pct", f[4]);
    if (!t || !o || !nv || !p) throw schema_error(row, "all improvement fields are required");
    r.table = *t;
    r.metric = f[1];
    r.old_value = *o;
    r.new_value = *nv;
    r.reported_pct = *p;
    out.push_back(std::move(r));
  }
  return out;
}

struct improvement_row {
  improvement_record record;
  double recomputed_pct = 0.0;
  bool consistent = true;
};

[[nodiscard]] inline std::vector<improvement_row> improvement_check(const std::vector<improvement_record>& records) {
  std::vector<improvement_row> out;
  for (const auto& r : records) {
    const double pct = improvement_percent(r.old_value, r.new_value);
    out.push_back({r, pct, std::abs(pct - r.reported_pct) <= improvement_tolerance_pts});
  }
  return out;
}

}  // namespace tritforge
