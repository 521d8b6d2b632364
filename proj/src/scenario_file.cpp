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

#include "ssp/scenario_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ssp/error.hpp"

namespace ssp::scenario {

namespace {

namespace pt = boost::property_tree;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidSpec, what); }

class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  void allow(std::initializer_list<const char*> keys) const {
    if (!tree_) return;
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, _] : *tree_) {
      if (!allowed.contains(key)) invalid("unknown key [" + name_ + "] " + key);
    }
  }

  std::optional<std::string> text(const char* key) const {
    if (!tree_) return std::nullopt;
    auto v = tree_->get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return *v;
  }

  std::optional<bool> flag(const char* key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    invalid(where(key) + " is not a boolean: " + *v);
  }

  std::optional<std::uint64_t> number(const char* key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    try {
      std::size_t used = 0;
      auto n = std::stoull(*v, &used, 0);
      if (used == v->size() && !v->starts_with('-')) return n;
    } catch (const std::exception&) {
    }
    invalid(where(key) + " is not a non-negative integer: " + *v);
  }

  std::optional<pairing::IoCapability> io(const char* key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    auto io = pairing::parse_io_capability(*v);
    if (!io) invalid(where(key) + " is not an IO capability: " + *v);
    return io;
  }

  std::optional<BdAddr> address(const char* key) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    try {
      return BdAddr::parse(*v);
    } catch (const std::exception&) {
      invalid(where(key) + " is not a device address: " + *v);
    }
  }

  bool present() const { return tree_ != nullptr; }

 private:
  std::string where(const char* key) const { return "[" + name_ + "] " + key; }

  const pt::ptree* tree_;
  std::string name_;
};

Section section(const pt::ptree& root, const std::string& name) {
  auto child = root.get_child_optional(pt::ptree::path_type(name, '/'));
  return Section(child ? &*child : nullptr, name);
}

void read_device(const Section& s, pairing::DeviceConfig& d, UserAgentPolicy& user) {
  s.allow({"address", "io", "oob", "allow_just_works", "require_oob", "require_mitm_protection",
           "expected_peer_io", "passkey", "user"});
  if (auto v = s.address("address")) d.address = *v;
  if (auto v = s.io("io")) d.io = *v;
  if (auto v = s.flag("oob")) d.oob_available = *v;
  if (auto v = s.flag("allow_just_works")) d.policy.allow_just_works = *v;
  if (auto v = s.flag("require_oob")) d.policy.require_oob = *v;
  if (auto v = s.flag("require_mitm_protection")) d.policy.require_mitm_protection = *v;
  if (auto v = s.io("expected_peer_io")) d.policy.expected_peer_io = *v;
  if (auto v = s.number("passkey")) {
    if (*v > 999'999) invalid("passkey must have at most six digits");
    d.passkey = static_cast<std::uint32_t>(*v);
  }
  if (auto v = s.text("user")) {
    auto u = parse_user_agent(*v);
    if (!u) invalid("unknown user agent: " + *v);
    user = *u;
  }
}

void read_attacker(const Section& s, ScenarioSpec& spec) {
  s.allow({"enabled", "preset", "can_jam", "can_impersonate", "can_relay", "knows_hop_seed",
           "spoofed_io", "address", "known_oob_freqs", "tamper", "oob_read", "oob_modify"});
  if (!s.present() || !s.flag("enabled").value_or(true)) return;

  auto preset = s.text("preset").value_or("full");
  auto variant = parse_attacker_variant(preset);
  if (!variant || *variant == AttackerVariant::None) invalid("unknown attacker preset: " + preset);
  auto a = *attacker_for(*variant);

  if (auto v = s.flag("can_jam")) a.can_jam = *v;
  if (auto v = s.flag("can_impersonate")) a.can_impersonate = *v;
  if (auto v = s.flag("can_relay")) a.can_relay = *v;
  if (auto v = s.flag("knows_hop_seed")) a.knows_hop_seed = *v;
  if (auto v = s.io("spoofed_io")) a.spoofed_io = *v;
  if (auto v = s.address("address")) a.address = *v;
  if (auto v = s.text("known_oob_freqs")) {
    std::stringstream ss(*v);
    for (std::string item; std::getline(ss, item, ',');) {
      try {
        std::size_t used = 0;
        auto f = std::stoul(item, &used, 0);
        if (used != item.size() || f > 0xFFFF) throw std::out_of_range("freq");
        a.known_oob_freqs.insert(static_cast<std::uint16_t>(f));
      } catch (const std::exception&) {
        invalid("bad frequency id in known_oob_freqs: " + item);
      }
    }
  }
  if (auto v = s.text("tamper")) {
    try {
      a.tamper = from_hex(*v);
    } catch (const std::exception&) {
      invalid("tamper must be hex: " + *v);
    }
  }
  const auto read = s.flag("oob_read");
  const auto modify = s.flag("oob_modify");
  if (read || modify) {
    oob::OobChannelConfig access;
    access.attacker_can_read = read.value_or(false);
    access.attacker_can_modify = modify.value_or(false);
    a.oob_access = access;
  }
  spec.attacker = a;
}

void read_oob(const Section& s, oob::OobChannelConfig& cfg) {
  s.allow({"attacker_can_read", "attacker_can_modify", "schedule", "freq", "seed"});
  if (auto v = s.flag("attacker_can_read")) cfg.attacker_can_read = *v;
  if (auto v = s.flag("attacker_can_modify")) cfg.attacker_can_modify = *v;
  const auto mode = s.text("schedule").value_or("fixed");
  if (mode == "fixed") {
    const auto freq = s.number("freq").value_or(0);
    if (freq > 0xFFFF) invalid("freq must fit in 16 bits");
    cfg.frequency_schedule = oob::FrequencySchedule::fixed(static_cast<std::uint16_t>(freq));
  } else if (mode == "varying") {
    cfg.frequency_schedule = oob::FrequencySchedule::varying(s.number("seed").value_or(0));
  } else {
    invalid("unknown OOB schedule: " + mode);
  }
}

}  // namespace

ScenarioSpec parse_scenario(const std::string& text) {
  pt::ptree root;
  try {
    std::istringstream in(text);
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    invalid(std::string("malformed scenario: ") + e.what());
  }
  const std::set<std::string> known = {"device.a", "device.b", "attacker", "oob", "run"};
  for (const auto& [name, _] : root) {
    if (!known.contains(name)) invalid("unknown section [" + name + "]");
  }

  ScenarioSpec spec;
  spec.device_a.address = BdAddr(0x0A);
  spec.device_b.address = BdAddr(0x0B);
  read_device(section(root, "device.a"), spec.device_a, spec.user_agent_a);
  read_device(section(root, "device.b"), spec.device_b, spec.user_agent_b);
  read_attacker(section(root, "attacker"), spec);
  read_oob(section(root, "oob"), spec.oob_config);

  const auto run = section(root, "run");
  run.allow({"seed", "max_slots"});
  if (auto v = run.number("seed")) spec.seed = *v;
  if (auto v = run.number("max_slots")) spec.max_slots = *v;
  return spec;
}

ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace ssp::scenario
