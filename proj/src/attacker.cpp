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

#include "ssp/attacker.hpp"

#include <fmt/format.h>

#include "ssp/error.hpp"

namespace ssp::attack {

using pairing::DeviceConfig;
using pairing::SessionState;

std::string_view to_string(AttackerOutcome outcome) {
  switch (outcome) {
    case AttackerOutcome::BothKeysCaptured: return "BothKeysCaptured";
    case AttackerOutcome::PartialFailure: return "PartialFailure";
    case AttackerOutcome::Failed: return "Failed";
  }
  return "?";
}

void jam_phase(AttackerState& state, sim::World& world, std::size_t victim_link,
               std::uint64_t deadline) {
  if (!state.config.can_jam) throw Error(ErrorCode::CapabilityMissing, "attacker cannot jam");
  auto seq = world.link(victim_link).seq;
  if (!state.config.knows_hop_seed) seq.seed = mix64(seq.seed, state.rng.next_u64());
  state.jammer = world.add_jammer("M", state.config.address, seq);

  auto terminal = [&](int side) {
    const auto& e = world.link(victim_link).ends[side];
    return !e.session || e.session->terminal();
  };
  world.run_until([&] { return terminal(0) && terminal(1); }, deadline);
  world.stop_jammer(*state.jammer);
}

sim::EndpointId impersonate(AttackerState& state, sim::World& world, const DeviceConfig& target,
                            const DeviceConfig& mimic, pairing::Role attacker_role,
                            sim::Party target_party) {
  if (!state.config.can_impersonate) {
    throw Error(ErrorCode::CapabilityMissing, "attacker cannot impersonate");
  }
  const bool toward_a = target_party == sim::Party::A;
  const sim::EndpointSpec victim{toward_a ? "A" : "B", target_party, target.address,
                                 target.address};
  const sim::EndpointSpec self{toward_a ? "M@A" : "M@B", sim::Party::Attacker,
                               state.config.address, mimic.address};

  const bool attacker_master = attacker_role == pairing::Role::Initiator;
  const auto master_addr = attacker_master ? mimic.address : target.address;
  const auto seq = radio::HopSequence::for_link(
      master_addr, static_cast<std::uint32_t>(state.rng.next_u64()));
  const auto link = attacker_master ? world.open_link(self, victim, seq)
                                    : world.open_link(victim, self, seq);
  const sim::EndpointId own{link, attacker_master ? sim::Side::Master : sim::Side::Slave};

  DeviceConfig claim;
  claim.address = mimic.address;
  claim.io = state.config.spoofed_io.value_or(mimic.io);
  claim.oob_available = mimic.oob_available;

  // The target accepts the inbound connection first, so its session is
  // started before the attacker's.
  world.start_session(sim::peer_of(own), target, mimic.address);
  world.start_session(own, claim, target.address, pairing::SessionOptions{false});

  (toward_a ? state.session_with_a : state.session_with_b) = own;
  return own;
}

oob::OobForgery forge_oob(const AttackerState& state, const sim::World& world,
                          const DeviceConfig& a, const DeviceConfig& b, std::uint16_t freq_id) {
  oob::OobForgery forgery;
  if (state.session_with_a) {
    const auto& s = *world.endpoint(*state.session_with_a).session;
    forgery.for_a =
        oob::make_payload(b.address, s.own_keys().public_point, s.oob_randomizer(), freq_id);
  }
  if (state.session_with_b) {
    const auto& s = *world.endpoint(*state.session_with_b).session;
    forgery.for_b =
        oob::make_payload(a.address, s.own_keys().public_point, s.oob_randomizer(), freq_id);
  }
  return forgery;
}

void absorb_oob_view(const AttackerState& state, sim::World& world, const oob::AttackerView& view) {
  if (state.session_with_a) world.set_peer_oob(*state.session_with_a, view.from_a);
  if (state.session_with_b) world.set_peer_oob(*state.session_with_b, view.from_b);
}

AttackerOutcome run_inner_pairings(AttackerState& state, sim::World& world,
                                   std::uint64_t deadline) {
  std::vector<sim::EndpointId> ends;
  for (const auto& id : {state.session_with_a, state.session_with_b}) {
    if (id) {
      ends.push_back(*id);
      ends.push_back(sim::peer_of(*id));
    }
  }
  world.run_until(
      [&] {
        for (const auto& id : ends) {
          const auto& e = world.endpoint(id);
          if (e.session && !e.session->terminal()) return false;
        }
        return true;
      },
      deadline);

  auto capture = [&](const std::optional<sim::EndpointId>& id) -> std::optional<crypto::LinkKey> {
    if (!id) return std::nullopt;
    const auto& s = *world.endpoint(*id).session;
    if (s.state() != SessionState::Encrypted && s.state() != SessionState::LinkKeyReady) {
      return std::nullopt;
    }
    return s.link_key();
  };
  state.key_with_a = capture(state.session_with_a);
  state.key_with_b = capture(state.session_with_b);
  world.note(fmt::format("M captured {} link key(s)", state.captured_key_count()));

  switch (state.captured_key_count()) {
    case 2: return AttackerOutcome::BothKeysCaptured;
    case 1: return AttackerOutcome::PartialFailure;
    default: return AttackerOutcome::Failed;
  }
}

pairing::UserDecision decide(AttackerState& state, const sim::PendingPrompt& prompt) {
  using Kind = pairing::UserPromptRequest::Kind;
  if (prompt.request.kind == Kind::EnterPasskey) {
    return pairing::PasskeyInput{static_cast<std::uint32_t>(state.rng.uniform(1'000'000))};
  }
  return pairing::Confirm{true};
}

Bytes relay(AttackerState& state, Direction direction, ByteSpan sealed, std::uint64_t slot) {
  if (!state.key_with_a || !state.key_with_b) {
    throw Error(ErrorCode::UnsealFailure, "relay needs both captured link keys");
  }
  const bool a_to_b = direction == Direction::AToB;
  const auto& from_key = a_to_b ? *state.key_with_a : *state.key_with_b;
  const auto& to_key = a_to_b ? *state.key_with_b : *state.key_with_a;

  InterceptRecord rec;
  rec.slot = slot;
  rec.direction = direction;
  rec.plaintext = crypto::unseal(from_key, sealed);

  Bytes forward = rec.plaintext;
  if (a_to_b && state.config.tamper) {
    forward = *state.config.tamper;
    rec.modified = true;
  }
  state.intercept_log.push_back(rec);

  ByteReader rd(sealed);
  const auto counter = rd.u64();
  return crypto::seal(to_key, counter, forward);
}

std::string export_intercept_log(const AttackerState& state) {
  std::string out;
  for (const auto& r : state.intercept_log) {
    out += fmt::format("{},{},{},{}\n", r.slot, r.direction == Direction::AToB ? "A->B" : "B->A",
                       to_hex(r.plaintext), r.modified ? 1 : 0);
  }
  return out;
}

}  // namespace ssp::attack
