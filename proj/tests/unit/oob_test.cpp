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

#include <set>

#include <gtest/gtest.h>

#include "ssp/error.hpp"
#include "ssp/oob.hpp"

namespace ssp::oob {
namespace {

OobEndpoint endpoint(BdAddr addr, Rng& rng, bool oob = true) {
  OobEndpoint e;
  e.config.address = addr;
  e.config.oob_available = oob;
  e.public_key = crypto::generate_keypair(rng).public_point;
  e.r = crypto::random_randomizer(rng);
  return e;
}

TEST(OobPayload, WireRoundTrip) {
  Rng rng(1);
  auto e = endpoint(BdAddr(0x112233445566ULL), rng);
  auto p = make_payload(e.config.address, e.public_key, e.r, 0xBEEF);
  auto wire = p.encode();
  ASSERT_EQ(wire.size(), OobPayload::kWireSize);
  EXPECT_EQ(to_hex(ByteSpan(wire).first(6)), "112233445566");
  EXPECT_EQ(to_hex(ByteSpan(wire).last(2)), "beef");
  EXPECT_EQ(OobPayload::decode(wire), p);
  wire.pop_back();
  EXPECT_THROW(OobPayload::decode(wire), Error);
}

TEST(OobPayload, CommitmentBindsKey) {
  Rng rng(2);
  auto e = endpoint(BdAddr(1), rng);
  auto p = make_payload(e.config.address, e.public_key, e.r, 0);
  EXPECT_EQ(p.c, crypto::f1_commit(e.public_key, e.public_key, crypto::Nonce{}, e.r));
  EXPECT_TRUE(payload_binds(p, e.public_key));
  EXPECT_FALSE(payload_binds(p, crypto::generate_keypair(rng).public_point));
}

TEST(Frequency, FixedIsConstant) {
  auto s = FrequencySchedule::fixed(7);
  for (std::uint64_t c : {0ULL, 1ULL, 99999ULL}) EXPECT_EQ(next_oob_frequency(s, c), 7);
}

TEST(Frequency, VaryingIsDistinctAndDeterministic) {
  auto s = FrequencySchedule::varying(42);
  std::set<std::uint16_t> ids;
  for (std::uint64_t c = 0; c < 1000; ++c) {
    ids.insert(next_oob_frequency(s, c));
    EXPECT_EQ(next_oob_frequency(s, c), next_oob_frequency(s, c));
  }
  EXPECT_GE(ids.size(), 990u);
  EXPECT_NE(next_oob_frequency(s, 5), next_oob_frequency(FrequencySchedule::varying(43), 5));
}

TEST(Frequency, InterceptNeedsReadAndKnownFreq) {
  OobChannelConfig cfg;
  cfg.frequency_schedule = FrequencySchedule::fixed(7);
  EXPECT_FALSE(attacker_oob_intercept_possible(cfg, {7}));
  cfg.attacker_can_read = true;
  EXPECT_TRUE(attacker_oob_intercept_possible(cfg, {7}));
  EXPECT_FALSE(attacker_oob_intercept_possible(cfg, {8}));
}

TEST(Frequency, VaryingInterceptIsRare) {
  OobChannelConfig cfg;
  cfg.attacker_can_read = true;
  cfg.frequency_schedule = FrequencySchedule::varying(9);
  int hits = 0;
  for (std::uint64_t c = 0; c < 10'000; ++c) {
    cfg.frequency_schedule.counter = c;
    hits += attacker_oob_intercept_possible(cfg, {123}) ? 1 : 0;
  }
  EXPECT_LE(hits, 1);  // a permutation visits each id at most once per 65536
}

TEST(Exchange, DefaultConfigIsPrivateAndAuthentic) {
  Rng rng(3);
  auto a = endpoint(BdAddr(0xA), rng);
  auto b = endpoint(BdAddr(0xB), rng);
  bool forger_called = false;
  auto ex = exchange_oob(a, b, {}, 0, {0}, [&](const auto&, std::uint16_t) {
    forger_called = true;
    return OobForgery{};
  });
  EXPECT_FALSE(ex.attacker_view);
  EXPECT_FALSE(forger_called);
  EXPECT_FALSE(ex.payload_for_a.exposed);
  EXPECT_TRUE(payload_binds(ex.payload_for_a, b.public_key));
  EXPECT_TRUE(payload_binds(ex.payload_for_b, a.public_key));
  EXPECT_EQ(ex.payload_for_a.sender_address, BdAddr(0xB));
}

TEST(Exchange, ReadExposesPayloads) {
  Rng rng(4);
  auto a = endpoint(BdAddr(0xA), rng);
  auto b = endpoint(BdAddr(0xB), rng);
  OobChannelConfig cfg;
  cfg.attacker_can_read = true;
  auto ex = exchange_oob(a, b, cfg, 0, {0});
  ASSERT_TRUE(ex.attacker_view);
  EXPECT_EQ(ex.attacker_view->from_a.r, a.r);
  EXPECT_TRUE(ex.payload_for_b.exposed);
}

TEST(Exchange, ModifyReplacesPayload) {
  Rng rng(5);
  auto a = endpoint(BdAddr(0xA), rng);
  auto b = endpoint(BdAddr(0xB), rng);
  auto m = endpoint(BdAddr(0xE), rng);
  OobChannelConfig cfg;
  cfg.attacker_can_modify = true;
  auto ex = exchange_oob(a, b, cfg, 0, {0}, [&](const auto& view, std::uint16_t f) {
    EXPECT_FALSE(view);  // modify without read sees nothing
    OobForgery forgery;
    forgery.for_a = make_payload(BdAddr(0xB), m.public_key, m.r, f);
    return forgery;
  });
  EXPECT_TRUE(ex.forged_a);
  EXPECT_FALSE(ex.forged_b);
  EXPECT_TRUE(payload_binds(ex.payload_for_a, m.public_key));
  EXPECT_FALSE(payload_binds(ex.payload_for_a, b.public_key));
}

TEST(Exchange, UnknownFrequencyBlocksAttacker) {
  Rng rng(6);
  auto a = endpoint(BdAddr(0xA), rng);
  auto b = endpoint(BdAddr(0xB), rng);
  OobChannelConfig cfg;
  cfg.attacker_can_read = cfg.attacker_can_modify = true;
  cfg.frequency_schedule = FrequencySchedule::fixed(9);
  auto ex = exchange_oob(a, b, cfg, 0, {1, 2}, [](const auto&, std::uint16_t) {
    ADD_FAILURE() << "forger must not run";
    return OobForgery{};
  });
  EXPECT_FALSE(ex.attacker_view);
  EXPECT_EQ(ex.payload_for_a.freq_id, 9);
}

TEST(Exchange, RequiresOobOnBothSides) {
  Rng rng(7);
  auto a = endpoint(BdAddr(0xA), rng);
  auto b = endpoint(BdAddr(0xB), rng, false);
  try {
    exchange_oob(a, b, {}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OobUnavailable);
  }
}

}  // namespace
}  // namespace ssp::oob
