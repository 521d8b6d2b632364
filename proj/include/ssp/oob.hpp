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
#include <functional>
#include <optional>
#include <set>

#include "ssp/crypto.hpp"
#include "ssp/oob_payload.hpp"
#include "ssp/pairing.hpp"

// Simulated NFC side channel. The exchange is atomic and loss-free and runs
// outside the slot clock; attacker access is an explicit experimental knob.
namespace ssp::oob {

struct FrequencySchedule {
  enum class Mode : std::uint8_t { Fixed, Varying };

  Mode mode = Mode::Fixed;
  std::uint16_t fixed_id = 0;
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;  // session counter, owned by the harness

  static FrequencySchedule fixed(std::uint16_t id) { return {Mode::Fixed, id, 0, 0}; }
  static FrequencySchedule varying(std::uint64_t seed) { return {Mode::Varying, 0, seed, 0}; }
};

struct OobChannelConfig {
  bool attacker_can_read = false;
  bool attacker_can_modify = false;
  FrequencySchedule frequency_schedule;
};

// Fixed mode returns the constant. Varying mode returns a keyed 16-bit
// permutation of the counter, so ids never repeat within 65536 sessions
// and the sequence is reshuffled for each further block of counters.
std::uint16_t next_oob_frequency(const FrequencySchedule& sched, std::uint64_t counter);

// True iff the attacker can read the channel and the session's frequency
// (from cfg.frequency_schedule at its counter) is one it knows.
bool attacker_oob_intercept_possible(const OobChannelConfig& cfg,
                                     const std::set<std::uint16_t>& attacker_known_freqs);

// One side of the exchange: the device plus the in-band key and randomizer
// of its current pairing session.
struct OobEndpoint {
  pairing::DeviceConfig config;
  crypto::PublicPoint public_key;
  crypto::RandomizerR r;
};

struct AttackerView {
  OobPayload from_a;
  OobPayload from_b;
  std::uint16_t freq_id = 0;
};

struct OobForgery {
  std::optional<OobPayload> for_a;  // replaces what A receives
  std::optional<OobPayload> for_b;
};

// Called with what the attacker saw (if anything) when it may modify.
using Forger = std::function<OobForgery(const std::optional<AttackerView>&, std::uint16_t freq_id)>;

struct OobExchange {
  OobPayload payload_for_a;  // B's payload as delivered to A
  OobPayload payload_for_b;
  std::optional<AttackerView> attacker_view;
  bool forged_a = false;
  bool forged_b = false;
};

// Throws Error(OobUnavailable) if either device lacks OOB. Attacker read
// and modify access both require attacker_oob_intercept_possible(); the
// schedule's counter is taken from `counter`.
OobExchange exchange_oob(const OobEndpoint& a, const OobEndpoint& b, OobChannelConfig cfg,
                         std::uint64_t counter,
                         const std::set<std::uint16_t>& attacker_known_freqs = {},
                         const Forger& forger = {});

}  // namespace ssp::oob
