/*
 * Copyright 2026 The sspsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ssp/error.hpp"
#include "ssp/report.hpp"
#include "ssp/scenario.hpp"
#include "ssp/scenario_file.hpp"

namespace {

using namespace ssp;

constexpr int kExitOk = 0;
constexpr int kExitInvalidSpec = 1;
constexpr int kExitIoFailure = 2;

report::Format format_or_throw(const std::string& text) {
  auto f = report::parse_format(text);
  if (!f) throw Error(ErrorCode::InvalidSpec, "unknown format " + text);
  return *f;
}

scenario::ScenarioSpec demo_spec(const std::string& model, bool attack) {
  using pairing::IoCapability;
  scenario::ScenarioSpec s;
  s.device_a.address = BdAddr(0x0000000000A1ULL);
  s.device_b.address = BdAddr(0x0000000000B2ULL);
  s.seed = 1;
  if (model == "just-works") {
    s.device_a.io = IoCapability::NoInputNoOutput;
    s.device_b.io = IoCapability::DisplayYesNo;
  } else if (model == "numeric") {
    s.device_a.io = IoCapability::DisplayYesNo;
    s.device_b.io = IoCapability::DisplayYesNo;
  } else if (model == "passkey") {
    s.device_a.io = IoCapability::DisplayOnly;
    s.device_b.io = IoCapability::KeyboardOnly;
  } else if (model == "oob") {
    s.device_a.oob_available = true;
    s.device_b.oob_available = true;
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown demo model " + model);
  }
  if (attack) s.attacker = attack::AttackerConfig::full();
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"Secure Simple Pairing simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;
  auto* pair = app.add_subcommand("pair", "Run one scenario file");
  pair->add_option("--scenario", scenario_path, "Scenario file")->required();
  auto* seed_opt = pair->add_option("--seed", seed, "Override the scenario seed");
  pair->add_option("--format", format, "text, json or csv");
  pair->add_option("--out", out, "Output path (default stdout)");

  std::size_t seeds = 100;
  std::string attacker = "all";
  std::uint64_t base_seed = 0;
  auto* matrix = app.add_subcommand("matrix", "Attack feasibility over IO pairs");
  matrix->add_option("--seeds", seeds, "Runs per cell (at least 10)");
  matrix->add_option("--attacker", attacker, "full, downgrade, jam-only, none or all");
  matrix->add_option("--base-seed", base_seed, "First seed");
  matrix->add_option("--format", format, "text, json or csv");
  matrix->add_option("--out", out, "Output path (default stdout)");

  std::string model;
  bool attack = false;
  auto* demo = app.add_subcommand("demo", "Canned scenario with annotated transcript");
  demo->add_option("--model", model, "just-works, numeric, passkey or oob")->required();
  demo->add_flag("--attack", attack, "Add the full attacker");
  demo->add_option("--format", format, "text, json or csv");
  demo->add_option("--out", out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidSpec;
  }

  try {
    const auto fmt_kind = format_or_throw(format);
    if (*pair) {
      auto spec = scenario::load_scenario_file(scenario_path);
      if (seed_opt->count() > 0) spec.seed = seed;
      report::emit_report(scenario::run_scenario(spec), fmt_kind, out);
    } else if (*matrix) {
      std::vector<scenario::AttackerVariant> variants;
      if (attacker == "all") {
        variants.assign(scenario::kAllAttackerVariants.begin(), scenario::kAllAttackerVariants.end());
      } else if (auto v = scenario::parse_attacker_variant(attacker)) {
        variants.push_back(*v);
      } else {
        throw Error(ErrorCode::InvalidSpec, "unknown attacker " + attacker);
      }
      auto m = scenario::feasibility_matrix(scenario::seed_range(base_seed, seeds), variants);
      report::emit_report(m, fmt_kind, out);
    } else if (*demo) {
      report::emit_report(scenario::run_scenario(demo_spec(model, attack)), fmt_kind, out);
    }
  } catch (const Error& e) {
    std::cerr << "sspsim: " << e.what() << "\n";
    return e.code() == ErrorCode::IoFailure ? kExitIoFailure : kExitInvalidSpec;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
