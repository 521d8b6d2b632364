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

#include <gtest/gtest.h>

#include "ssp/attacker.hpp"
#include "ssp/error.hpp"
#include "ssp/scenario.hpp"
#include "ssp/world.hpp"

namespace ssp::attack {
namespace {

using pairing::AbortReason;
using pairing::AssociationModel;
using pairing::DeviceConfig;
using pairing::IoCapability;
using pairing::SessionState;

DeviceConfig device(std::uint64_t addr, IoCapability io) {
  DeviceConfig d;
  d.address = BdAddr(addr);
  d.io = io;
  return d;
}

struct Arena {
  sim::World world{77};
  AttackerState state;
  DeviceConfig a = device(0xA1, IoCapability::DisplayYesNo);
  DeviceConfig b = device(0xB2, IoCapability::DisplayYesNo);

  explicit Arena(AttackerConfig cfg = AttackerConfig::full()) {
    state.config = cfg;
    state.rng = Rng(5);
    world.set_decider([this](sim::World&, sim::EndpointId id, const sim::PendingPrompt& p) {
      if (world.endpoint(id).party == sim::Party::Attacker) return decide(state, p);
      return pairing::UserDecision{pairing::Confirm{true}};
    });
  }

  const pairing::PairingSession& session(sim::EndpointId id) {
    return *world.endpoint(id).session;
  }
};

TEST(Attacker, JamRequiresCapability) {
  Arena arena(AttackerConfig::full());
  arena.state.config.can_jam = false;
  try {
    jam_phase(arena.state, arena.world, 0, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapabilityMissing);
  }
}

TEST(Attacker, ImpersonateRequiresCapability) {
  Arena arena(AttackerConfig::jam_only());
  EXPECT_THROW(impersonate(arena.state, arena.world, arena.a, arena.b, pairing::Role::Responder,
                           sim::Party::A),
               Error);
}

TEST(Attacker, JammingDropsVictimLink) {
  Arena arena;
  const auto link = arena.world.open_link({"A", sim::Party::A, arena.a.address, arena.a.address},
                                          {"B", sim::Party::B, arena.b.address, arena.b.address},
                                          radio::HopSequence{99});
  arena.world.start_session({link, sim::Side::Master}, arena.a, arena.b.address);
  arena.world.start_session({link, sim::Side::Slave}, arena.b, arena.a.address);
  jam_phase(arena.state, arena.world, link, 1000);
  EXPECT_TRUE(arena.world.link(link).lost);
  EXPECT_EQ(arena.session({link, sim::Side::Master}).abort_reason(), AbortReason::LinkLoss);
  EXPECT_EQ(arena.session({link, sim::Side::Slave}).abort_reason(), AbortReason::LinkLoss);
  int delivered = 0;
  for (const auto& e : arena.world.net().delivery_log()) {
    if (e.outcome == radio::DeliveryOutcome::Delivered) ++delivered;
  }
  EXPECT_EQ(delivered, 0);
}

TEST(Attacker, DowngradeForcesJustWorksAndCapturesKeys) {
  Arena arena(AttackerConfig::downgrade());
  auto to_a = impersonate(arena.state, arena.world, arena.a, arena.b, pairing::Role::Responder,
                          sim::Party::A);
  auto to_b = impersonate(arena.state, arena.world, arena.b, arena.a, pairing::Role::Initiator,
                          sim::Party::B);
  EXPECT_EQ(run_inner_pairings(arena.state, arena.world, 5000), AttackerOutcome::BothKeysCaptured);
  EXPECT_EQ(arena.session(sim::peer_of(to_a)).model(), AssociationModel::JustWorks);
  EXPECT_EQ(arena.session(sim::peer_of(to_b)).model(), AssociationModel::JustWorks);
  EXPECT_EQ(*arena.state.key_with_a, *arena.session(sim::peer_of(to_a)).link_key());
  EXPECT_EQ(*arena.state.key_with_b, *arena.session(sim::peer_of(to_b)).link_key());
  EXPECT_NE(*arena.state.key_with_a, *arena.state.key_with_b);
  // The attacker claims the mimicked address on air.
  EXPECT_EQ(arena.world.endpoint(to_a).claimed, arena.b.address);
  EXPECT_NE(arena.world.endpoint(to_a).address, arena.b.address);
}

TEST(Attacker, RequireOobTargetRejectsImpersonator) {
  Arena arena;
  arena.a.policy.require_oob = true;
  auto to_a = impersonate(arena.state, arena.world, arena.a, arena.b, pairing::Role::Responder,
                          sim::Party::A);
  run_inner_pairings(arena.state, arena.world, 5000);
  EXPECT_EQ(arena.session(sim::peer_of(to_a)).abort_reason(), AbortReason::PolicyReject);
  EXPECT_EQ(arena.state.captured_key_count(), 0u);
}

TEST(Attacker, RelayNeedsBothKeys) {
  AttackerState state;
  state.key_with_a = crypto::LinkKey{};
  try {
    relay(state, Direction::AToB, Bytes(30, 0), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsealFailure);
  }
}

TEST(Attacker, RelayReencryptsAndLogs) {
  AttackerState state;
  crypto::LinkKey ka, kb;
  ka.bytes.fill(1);
  kb.bytes.fill(2);
  state.key_with_a = ka;
  state.key_with_b = kb;
  const Bytes hello{'h', 'e', 'l', 'l', 'o'};
  auto out = relay(state, Direction::AToB, crypto::seal(ka, 4, hello), 10);
  EXPECT_EQ(crypto::unseal(kb, out), hello);
  EXPECT_THROW(crypto::unseal(ka, out), Error);
  ASSERT_EQ(state.intercept_log.size(), 1u);
  EXPECT_EQ(export_intercept_log(state), "10,A->B,68656c6c6f,0\n");

  state.config.tamper = Bytes{'b', 'y', 'e'};
  out = relay(state, Direction::AToB, crypto::seal(ka, 5, hello), 11);
  EXPECT_EQ(crypto::unseal(kb, out), (Bytes{'b', 'y', 'e'}));
  EXPECT_TRUE(state.intercept_log.back().modified);
  EXPECT_EQ(state.intercept_log.back().plaintext, hello);

  // Frames sealed under a key the attacker lacks do not open.
  crypto::LinkKey other;
  other.bytes.fill(3);
  EXPECT_THROW(relay(state, Direction::BToA, crypto::seal(other, 1, hello), 12), Error);
}

TEST(Attacker, CapturedKeysNeverEqualHonestKey) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto spec = scenario::matrix_cell_spec(IoCapability::NoInputNoOutput,
                                           IoCapability::DisplayYesNo, false,
                                           scenario::AttackerVariant::None, seed);
    const auto honest = scenario::run_scenario(spec);
    ASSERT_EQ(honest.outcome, scenario::Outcome::SecurePaired);
    spec.attacker = AttackerConfig::full();
    const auto attacked = scenario::run_scenario(spec);
    ASSERT_EQ(attacked.outcome, scenario::Outcome::AttackSucceeded);
    EXPECT_NE(*attacked.evidence.key_a, *honest.evidence.key_a);
    EXPECT_NE(*attacked.evidence.key_b, *honest.evidence.key_a);
  }
}

}  // namespace
}  // namespace ssp::attack
