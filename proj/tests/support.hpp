// Copyright (c) 2026 The tritforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "tritforge/netlist.hpp"

namespace tritforge::testing {

/// Seed from TRITFORGE_SEED, else a fixed default.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("TRITFORGE_SEED")) return std::strtoull(s, nullptr, 10);
  return 20260415u;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string data_path(const std::string& name) { return std::string(TRITFORGE_DATA_DIR) + "/" + name; }

struct random_netlist_options {
  int max_devices = 20;
  int max_inputs = 3;
  int max_internal = 5;
  int max_outputs = 2;
};

/// Small random netlist; no device connects two rails by its channel.
inline netlist random_netlist(std::mt19937_64& rng, const random_netlist_options& o = {}) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  netlist n;
  n.title = "random";
  const int inputs = pick(1, o.max_inputs);
  for (int i = 0; i < inputs; ++i) {
    const int d = pick(0, 2);
    n.inputs.push_back({"i" + std::to_string(i),
                        d == 0 ? encoding::standard : d == 1 ? encoding::half_vdd_high : encoding::full_vdd_high});
  }
  const int internal = pick(1, o.max_internal);
  std::vector<std::string> nets{std::string(rail_vdd), std::string(rail_gnd)};
  for (const auto& in : n.inputs) nets.push_back(in.net);
  const int outputs = pick(1, o.max_outputs);
  for (int i = 0; i < outputs; ++i) {
    n.outputs.push_back({"o" + std::to_string(i), encoding::standard});
    nets.push_back("o" + std::to_string(i));
  }
  for (int i = 0; i < internal; ++i) nets.push_back("w" + std::to_string(i));
  const int devices = pick(1, o.max_devices);
  for (int k = 0; k < devices; ++k) {
    device d;
    d.id = "m" + std::to_string(k);
    d.type = pick(0, 1) ? polarity::p : polarity::n;
    d.vt = all_threshold_classes[static_cast<std::size_t>(pick(0, 3))];
    d.gate = nets[static_cast<std::size_t>(pick(0, static_cast<int>(nets.size()) - 1))];
    do {
      d.source = nets[static_cast<std::size_t>(pick(0, static_cast<int>(nets.size()) - 1))];
      d.drain = nets[static_cast<std::size_t>(pick(0, static_cast<int>(nets.size()) - 1))];
    } while (d.source == d.drain || (is_rail(d.source) && is_rail(d.drain)));
    if (pick(0, 7) == 0) d.add_tag("divider");
    n.devices.push_back(std::move(d));
  }
  if (pick(0, 3) == 0) n.loads.push_back({"c0", n.outputs[0].net, 1e-15 * pick(1, 9)});
  return n;
}

}  // namespace tritforge::testing
