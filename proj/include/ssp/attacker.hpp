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
#include <set>
#include <string>
#include <vector>

#include "ssp/oob.hpp"
#include "ssp/pairing.hpp"
#include "ssp/world.hpp"

namespace ssp::attack {

struct AttackerConfig {
  bool can_jam = true;
  bool can_impersonate = true;
  bool can_relay = true;
  bool knows_hop_seed = true;
  // IO capability claimed to both victims. Unset: each victim is shown the
  // IO capability of the device being impersonated.
  std::optional<pairing::IoCapability> spoofed_io;
  // Replaces the scenario's attacker read/modify flags on the OOB channel.
  std::optional<oob::OobChannelConfig> oob_access;
  // OOB frequency ids the attacker can listen on. A Fixed schedule's id is
  // always known.
  std::set<std::uint16_t> known_oob_freqs;
  // When set, relayed A-to-B plaintext is replaced by these bytes.
  std::optional<Bytes> tamper;
  BdAddr address{0x0A'11'CE'0B'AD'00ULL};

  static AttackerConfig full() { return {}; }
  static AttackerConfig downgrade() {
    AttackerConfig c;
    c.spoofed_io = pairing::IoCapability::NoInputNoOutput;
    return c;
  }
  static AttackerConfig jam_only() {
    AttackerConfig c;
    c.can_impersonate = false;
    c.can_relay = false;
    return c;
  }
};

enum class AttackerOutcome : std::uint8_t { BothKeysCaptured, PartialFailure, Failed };

std::string_view to_string(AttackerOutcome outcome);

enum class Direction : std::uint8_t { AToB, BToA };

struct InterceptRecord {
  std::uint64_t slot = 0;
  Direction direction = Direction::AToB;
  Bytes plaintext;
  bool modified = false;
};

struct AttackerState {
  AttackerConfig config;
  Rng rng{0};
  // Endpoints of the attacker's inner sessions: toward A it plays B, toward
  // B it plays A.
  std::optional<sim::EndpointId> session_with_a;
  std::optional<sim::EndpointId> session_with_b;
  std::optional<crypto::LinkKey> key_with_a;
  std::optional<crypto::LinkKey> key_with_b;
  std::vector<InterceptRecord> intercept_log;
  std::optional<std::size_t> jammer;

  std::size_t captured_key_count() const {
    return (key_with_a ? 1 : 0) + (key_with_b ? 1 : 0);
  }
};

// Jams `victim_link` until both of its sessions are terminal or `deadline`
// is reached, then stops. Without knows_hop_seed the jammer follows a
// guessed sequence. Throws Error(CapabilityMissing) without can_jam.
void jam_phase(AttackerState& state, sim::World& world, std::size_t victim_link,
               std::uint64_t deadline);

// Opens a link to `target` on which the attacker claims `mimic`'s address
// and starts both the target's and the attacker's sessions. The attacker
// uses its own key pair. Throws Error(CapabilityMissing) without
// can_impersonate.
sim::EndpointId impersonate(AttackerState& state, sim::World& world,
                            const pairing::DeviceConfig& target,
                            const pairing::DeviceConfig& mimic, pairing::Role attacker_role,
                            sim::Party target_party);

// Forgery used on an OOB channel the attacker can modify: each victim gets
// a payload that binds the attacker's key on that victim's link.
oob::OobForgery forge_oob(const AttackerState& state, const sim::World& world,
                          const pairing::DeviceConfig& a, const pairing::DeviceConfig& b,
                          std::uint16_t freq_id);

// Hands the attacker's inner sessions the victims' payloads it observed.
void absorb_oob_view(const AttackerState& state, sim::World& world, const oob::AttackerView& view);

// Drives both inner sessions to a terminal state and captures link keys.
AttackerOutcome run_inner_pairings(AttackerState& state, sim::World& world,
                                   std::uint64_t deadline);

// Answers the attacker's own prompts: confirms everything and guesses
// passkeys.
pairing::UserDecision decide(AttackerState& state, const sim::PendingPrompt& prompt);

// Unseals with the sending victim's key, logs, optionally tampers and
// reseals for the other victim. Throws Error(UnsealFailure) when the keys
// are not both captured or the frame does not authenticate.
Bytes relay(AttackerState& state, Direction direction, ByteSpan sealed, std::uint64_t slot);

// One line per record: "slot,direction,plaintext-hex,modified".
std::string export_intercept_log(const AttackerState& state);

}  // namespace ssp::attack
