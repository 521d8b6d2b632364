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

#include "ssp/world.hpp"

namespace ssp::sim {
namespace {

using pairing::AbortReason;
using pairing::DeviceConfig;
using pairing::IoCapability;
using pairing::SessionState;

DeviceConfig device(std::uint64_t addr, IoCapability io) {
  DeviceConfig d;
  d.address = BdAddr(addr);
  d.io = io;
  return d;
}

struct Pair {
  World world{3};
  DeviceConfig a;
  DeviceConfig b;
  std::size_t link = 0;
  EndpointId master{0, Side::Master};
  EndpointId slave{0, Side::Slave};

  explicit Pair(IoCapability io = IoCapability::NoInputNoOutput)
      : a(device(0xA, io)), b(device(0xB, io)) {
    link = world.open_link({"A", Party::A, a.address, a.address},
                           {"B", Party::B, b.address, b.address}, radio::HopSequence{1234});
    master = {link, Side::Master};
    slave = {link, Side::Slave};
    world.start_session(master, a, b.address);
    world.start_session(slave, b, a.address);
  }

  bool both_terminal() {
    return world.endpoint(master).session->terminal() && world.endpoint(slave).session->terminal();
  }
};

TEST(World, JustWorksCompletesAndEncrypts) {
  Pair p;
  p.world.set_decider([](World&, EndpointId, const PendingPrompt&) {
    return pairing::UserDecision{pairing::Confirm{true}};
  });
  ASSERT_TRUE(p.world.run_until([&] { return p.both_terminal(); }, 1000));
  EXPECT_EQ(p.world.endpoint(p.master).session->state(), SessionState::Encrypted);
  EXPECT_EQ(*p.world.endpoint(p.master).session->link_key(),
            *p.world.endpoint(p.slave).session->link_key());
  EXPECT_TRUE(p.world.endpoint(p.master).pairing_frame_delivered);
}

TEST(World, SlotsAlternateBetweenMasterAndSlave) {
  Pair p;
  p.world.run_until([&] { return p.both_terminal(); }, 1000);
  for (const auto& e : p.world.net().delivery_log()) {
    const bool master_turn = e.frame.slot.index % 2 == 0;
    EXPECT_EQ(e.frame.sender, master_turn ? p.a.address : p.b.address);
  }
}

TEST(World, ShortJammingIsRecoveredByRetransmission) {
  Pair p;
  const auto j = p.world.add_jammer("J", BdAddr(0xEE), p.world.link(p.link).seq);
  p.world.run_until([] { return false; }, 10);
  p.world.stop_jammer(j);
  ASSERT_TRUE(p.world.run_until([&] { return p.both_terminal(); }, 1000));
  EXPECT_FALSE(p.world.link(p.link).lost);
  EXPECT_EQ(p.world.endpoint(p.master).session->state(), SessionState::Encrypted);
}

TEST(World, SustainedJammingDropsLink) {
  Pair p;
  p.world.add_jammer("J", BdAddr(0xEE), p.world.link(p.link).seq);
  ASSERT_TRUE(p.world.run_until([&] { return p.both_terminal(); }, 1000));
  EXPECT_TRUE(p.world.link(p.link).lost);
  EXPECT_EQ(p.world.endpoint(p.master).session->abort_reason(), AbortReason::LinkLoss);
  EXPECT_EQ(p.world.endpoint(p.slave).session->abort_reason(), AbortReason::LinkLoss);
  // The initiator transmits first, so it hits the limit first.
  EXPECT_LE(p.world.slot(), 2u * kLinkLossThreshold + 2u);
}

TEST(World, UnansweredPromptTriggersSupervisionTimeout) {
  Pair p(IoCapability::DisplayYesNo);
  ASSERT_TRUE(p.world.run_until([&] { return p.both_terminal(); }, 5000));
  EXPECT_TRUE(p.world.link(p.link).lost);
  EXPECT_EQ(p.world.endpoint(p.master).session->abort_reason(), AbortReason::LinkLoss);
  EXPECT_GE(p.world.slot(), kSupervisionTimeout);
  bool noted = false;
  for (const auto& line : p.world.transcript()) {
    noted = noted || line.find("supervision timeout") != std::string::npos;
  }
  EXPECT_TRUE(noted);
}

TEST(World, DataFramesReachPeerInbox) {
  Pair p;
  p.world.run_until([&] { return p.both_terminal(); }, 1000);
  p.world.queue_data(p.master, Bytes{1, 2, 3});
  p.world.run_until([&] { return !p.world.endpoint(p.slave).inbox.empty(); }, p.world.slot() + 10);
  ASSERT_EQ(p.world.endpoint(p.slave).inbox.size(), 1u);
  EXPECT_EQ(p.world.endpoint(p.slave).inbox.front(), (Bytes{1, 2, 3}));
}

TEST(World, SameSeedSameTranscript) {
  Pair x, y;
  x.world.run_until([&] { return x.both_terminal(); }, 1000);
  y.world.run_until([&] { return y.both_terminal(); }, 1000);
  EXPECT_EQ(x.world.transcript(), y.world.transcript());
}

}  // namespace
}  // namespace ssp::sim
