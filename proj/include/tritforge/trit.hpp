// tritforge/trit.hpp: unbalanced trits, voltage encodings, reference truth tables
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

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tritforge {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value lies outside the domain an operation or encoding accepts.
class domain_error : public error {
 public:
  using error::error;
};

/// Unbalanced ternary digit in {0, 1, 2}.
class trit {
 public:
  constexpr trit() noexcept = default;
  constexpr explicit trit(int v) : value_(checked(v)) {}

  [[nodiscard]] constexpr int value() const noexcept { return value_; }
  constexpr auto operator<=>(const trit&) const noexcept = default;

 private:
  static constexpr std::uint8_t checked(int v) {
    if (v < 0 || v > 2) {
      throw domain_error("trit out of range {0,1,2}: " + std::to_string(v));
    }
    return static_cast<std::uint8_t>(v);
  }

  std::uint8_t value_{0};
};

inline constexpr double default_vdd = 0.9;

enum class voltage_level : std::uint8_t { gnd = 0, half = 1, vdd = 2 };

/// Numeric volts of a level; HALF is exactly vdd / 2.
[[nodiscard]] constexpr double volts(voltage_level l, double vdd = default_vdd) noexcept {
  switch (l) {
    case voltage_level::gnd: return 0.0;
    case voltage_level::half: return vdd / 2.0;
    case voltage_level::vdd: return vdd;
  }
  return 0.0;
}

[[nodiscard]] constexpr int half_units(voltage_level l) noexcept { return static_cast<int>(l); }

[[nodiscard]] inline std::string_view to_string(voltage_level l) noexcept {
  switch (l) {
    case voltage_level::gnd: return "GND";
    case voltage_level::half: return "HALF";
    case voltage_level::vdd: return "VDD";
  }
  return "?";
}

/// Mapping between logical trits and levels.
///
/// `standard` is {0,1,2} -> {GND, HALF, VDD}. The two carry encodings only
/// carry {0,1}: `half_vdd_high` puts logical 1 on HALF, `full_vdd_high` on VDD.
enum class encoding : std::uint8_t { standard, half_vdd_high, full_vdd_high };

using carry_encoding = encoding;

[[nodiscard]] inline voltage_level encode(trit t, encoding enc) {
  switch (enc) {
    case encoding::standard:
      return static_cast<voltage_level>(t.value());
    case encoding::half_vdd_high:
      if (t.value() == 2) throw domain_error("trit 2 not representable under HalfVddHigh");
      return t.value() == 0 ? voltage_level::gnd : voltage_level::half;
    case encoding::full_vdd_high:
      if (t.value() == 2) throw domain_error("trit 2 not representable under FullVddHigh");
      return t.value() == 0 ? voltage_level::gnd : voltage_level::vdd;
  }
  throw domain_error("unknown encoding");
}

[[nodiscard]] inline trit decode(voltage_level v, encoding enc) {
  switch (enc) {
    case encoding::standard:
      return trit{static_cast<int>(v)};
    case encoding::half_vdd_high:
      if (v == voltage_level::vdd) throw domain_error("VDD is not a level of HalfVddHigh");
      return trit{static_cast<int>(v)};
    case encoding::full_vdd_high:
      if (v == voltage_level::half) throw domain_error("HALF is not a level of FullVddHigh");
      return trit{v == voltage_level::vdd ? 1 : 0};
  }
  throw domain_error("unknown encoding");
}

/// Number of logical values an encoding carries (3 or 2).
[[nodiscard]] constexpr int arity(encoding enc) noexcept { return enc == encoding::standard ? 3 : 2; }

enum class inverter_kind : std::uint8_t { nti, pti, sti };

[[nodiscard]] constexpr trit ternary_inverter(inverter_kind kind, trit t) {
  switch (kind) {
    case inverter_kind::nti: return trit{t.value() == 0 ? 2 : 0};
    case inverter_kind::pti: return trit{t.value() == 2 ? 0 : 2};
    case inverter_kind::sti: return trit{2 - t.value()};
  }
  return t;
}

struct adder_output {
  trit carry;
  trit sum;

  constexpr bool operator==(const adder_output&) const noexcept = default;
};

[[nodiscard]] constexpr adder_output full_add_complete(trit a, trit b, trit c) {
  const int total = a.value() + b.value() + c.value();
  return {trit{total / 3}, trit{total % 3}};
}

/// Full adder on the carry-in domain {0, 1}; the carry out never exceeds 1.
[[nodiscard]] constexpr adder_output full_add_partial(trit a, trit b, trit cin) {
  if (cin.value() == 2) throw domain_error("partial full adder: carry-in must be 0 or 1");
  return full_add_complete(a, b, cin);
}

[[nodiscard]] constexpr adder_output half_add(trit a, trit b) {
  return full_add_complete(a, b, trit{0});
}

/// Power-delay product in joules from delay in seconds and average power in watts.
[[nodiscard]] inline double pdp(double delay_s, double power_w) {
  if (delay_s < 0.0 || power_w < 0.0) throw domain_error("pdp: negative delay or power");
  return delay_s * power_w;
}

struct power_breakdown {
  double activity = 0.0;        // toggles per cycle
  double load_f = 0.0;          // farads
  double frequency_hz = 0.0;
  double supply_v = default_vdd;
  double static_current_a = 0.0;
};

[[nodiscard]] inline double power_dynamic(const power_breakdown& p) {
  return p.activity * p.load_f * p.frequency_hz * p.supply_v * p.supply_v;
}

[[nodiscard]] inline double power_static(const power_breakdown& p) {
  return p.static_current_a * p.supply_v;
}

/// a*C*f*V^2 + I_static*V
[[nodiscard]] inline double power_total(const power_breakdown& p) {
  if (p.activity < 0 || p.load_f < 0 || p.frequency_hz < 0 || p.supply_v < 0 || p.static_current_a < 0) {
    throw domain_error("power_total: negative component");
  }
  return power_dynamic(p) + power_static(p);
}

/// Relative improvement (old - new) / old in percent.
[[nodiscard]] inline double improvement_percent(double old_value, double new_value) {
  if (old_value == 0.0) throw domain_error("improvement_percent: zero baseline");
  return (old_value - new_value) / old_value * 100.0;
}

}  // namespace tritforge
