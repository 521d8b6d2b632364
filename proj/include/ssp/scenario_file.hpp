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

#include <string>

#include "ssp/scenario.hpp"

// INI-style scenario files:
//
//   [device.a]   address, io, oob, allow_just_works, require_oob,
//                require_mitm_protection, expected_peer_io, passkey, user
//   [device.b]   same keys
//   [attacker]   enabled, preset (full|downgrade|jam-only), can_jam,
//                can_impersonate, can_relay, knows_hop_seed, spoofed_io,
//                address, known_oob_freqs (comma list), tamper (hex),
//                oob_read, oob_modify
//   [oob]        attacker_can_read, attacker_can_modify,
//                schedule (fixed|varying), freq, seed
//   [run]        seed, max_slots
//
// Unknown sections or keys and malformed values raise Error(InvalidSpec).
namespace ssp::scenario {

ScenarioSpec parse_scenario(const std::string& text);

// Throws Error(IoFailure) when the file cannot be read.
ScenarioSpec load_scenario_file(const std::string& path);

}  // namespace ssp::scenario
