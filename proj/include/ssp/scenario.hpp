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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssp/attacker.hpp"
#include "ssp/oob.hpp"
#include "ssp/pairing.hpp"

namespace ssp::scenario {

inline constexpr std::uint64_t kDefaultMaxSlots = 10'000;
// Slots a user waits for the other device's number before giving up.
inline constexpr std::uint64_t kUserPatience = 200;
// Slots the devices wait before re-pairing after a lost link.
inline constexpr std::uint64_t kReconnectBackoff = 64;
// Slots allowed for the encrypted application round trip.
inline constexpr std::uint64_t kAppTimeout = 500;

struct UserAgentPolicy {
  enum class Kind : std::uint8_t {
    HonestComparing,
    AlwaysAccept,
    AlwaysReject,
    HonestPasskeyTransfer,
    Inattentive,
  };

  Kind kind = Kind::HonestComparing;
  double accept_probability = 0.0;  // Inattentive only

  static UserAgentPolicy honest() { return {}; }
  static UserAgentPolicy always_accept() { return {Kind::AlwaysAccept, 0.0}; }
  static UserAgentPolicy always_reject() { return {Kind::AlwaysReject, 0.0}; }
  static UserAgentPolicy inattentive(double p) { return {Kind::Inattentive, p}; }
};

std::string to_string(const UserAgentPolicy& policy);
// "honest", "accept", "reject", "passkey-transfer", "inattentive:<p>".
std::optional<UserAgentPolicy> parse_user_agent(std::string_view text);

struct ScenarioSpec {
  pairing::DeviceConfig device_a;
  pairing::DeviceConfig device_b;
  std::optional<attack::AttackerConfig> attacker;
  UserAgentPolicy user_agent_a;
  UserAgentPolicy user_agent_b;
  oob::OobChannelConfig oob_config;
  std::uint64_t seed = 0;
  std::uint64_t max_slots = kDefaultMaxSlots;
};

enum class Outcome : std::uint8_t {
  SecurePaired,
  AttackSucceeded,
  AttackDetected,
  PolicyBlocked,
  Inconclusive,
};

std::string_view to_string(Outcome outcome);

// Facts gathered from a finished run; the outcome is a pure function of it.
struct Evidence {
  bool attacker_present = false;
  pairing::SessionState state_a = pairing::SessionState::Idle;
  pairing::SessionState state_b = pairing::SessionState::Idle;
  // Own abort reason, or the reason the peer sent when it aborted first.
  pairing::AbortReason reason_a = pairing::AbortReason::None;
  pairing::AbortReason reason_b = pairing::AbortReason::None;
  std::optional<crypto::LinkKey> key_a;
  std::optional<crypto::LinkKey> key_b;
  std::size_t captured_keys = 0;
  bool captured_keys_verified = false;  // each equals the victim's own key
  bool relay_verified = false;
  bool attacker_pairing_frame_delivered = false;
  bool max_slots_reached = false;
};

struct ScenarioResult {
  Outcome outcome = Outcome::Inconclusive;
  pairing::AbortReason abort_reason = pairing::AbortReason::None;
  bool link_keys_match = false;
  std::optional<pairing::AssociationModel> model_a;
  std::optional<pairing::AssociationModel> model_b;
  Evidence evidence;
  std::vector<std::string> transcript;
  std::vector<std::string> delivery_log;
  std::vector<attack::InterceptRecord> intercepts;
  std::optional<Bytes> received_by_a;
  std::optional<Bytes> received_by_b;
  std::uint64_t slots_used = 0;

  // Transcript lines joined with '\n'.
  std::string serialize_transcript() const;
};

// Precedence PolicyBlocked > AttackDetected > AttackSucceeded > SecurePaired
// > Inconclusive.
Outcome classify_outcome(const Evidence& evidence);

// Throws Error(InvalidSpec) for duplicate addresses or max_slots == 0.
ScenarioResult run_scenario(const ScenarioSpec& spec);

enum class AttackerVariant : std::uint8_t { Full, Downgrade, JamOnly, None };

std::string_view to_string(AttackerVariant variant);
std::optional<AttackerVariant> parse_attacker_variant(std::string_view text);
std::optional<attack::AttackerConfig> attacker_for(AttackerVariant variant);

inline constexpr std::array<AttackerVariant, 4> kAllAttackerVariants = {
    AttackerVariant::Full, AttackerVariant::Downgrade, AttackerVariant::JamOnly,
    AttackerVariant::None};

struct MatrixCell {
  pairing::IoCapability io_a;
  pairing::IoCapability io_b;
  bool oob = false;
  AttackerVariant attacker = AttackerVariant::Full;
  std::size_t successes = 0;
  std::size_t runs = 0;

  double success_rate() const { return runs == 0 ? 0.0 : double(successes) / double(runs); }
};

struct FeasibilityMatrix {
  std::vector<MatrixCell> cells;  // row-major: IO pair, OOB flag, attacker
};

// Base scenario for one matrix cell: devices 00:00:00:00:00:0A and
// 00:00:00:00:00:0B, honest users, default OOB channel.
ScenarioSpec matrix_cell_spec(pairing::IoCapability io_a, pairing::IoCapability io_b, bool oob,
                              AttackerVariant variant, std::uint64_t seed);

// Rows are the 15 unordered IO pairs times OOB off/on. Run j of the cell
// with index k uses seed seeds[j] + k. Throws Error(InvalidSpec) for fewer
// than 10 seeds.
FeasibilityMatrix feasibility_matrix(const std::vector<std::uint64_t>& seeds,
                                     const std::vector<AttackerVariant>& variants);

// Seeds base, base+1, ... for the CLI.
std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count);

}  // namespace ssp::scenario
