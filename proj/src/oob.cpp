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

#include "ssp/oob.hpp"

#include "ssp/error.hpp"
#include "ssp/rng.hpp"

namespace ssp::oob {

Bytes OobPayload::encode() const {
  return ByteWriter().addr(sender_address).raw(r.span()).raw(c.span()).u16(freq_id).bytes();
}

OobPayload OobPayload::decode(ByteSpan wire) {
  if (wire.size() != kWireSize) throw Error(ErrorCode::MalformedMessage, "OOB payload size");
  ByteReader rd(wire);
  OobPayload p;
  p.sender_address = rd.addr();
  p.r.bytes = rd.array<16>();
  p.c.bytes = rd.array<16>();
  p.freq_id = rd.u16();
  return p;
}

OobPayload make_payload(BdAddr sender, const crypto::PublicPoint& public_key,
                        const crypto::RandomizerR& r, std::uint16_t freq_id) {
  OobPayload p;
  p.sender_address = sender;
  p.r = r;
  p.c = crypto::f1_commit(public_key, public_key, crypto::Nonce{}, r);
  p.freq_id = freq_id;
  return p;
}

bool payload_binds(const OobPayload& payload, const crypto::PublicPoint& public_key) {
  return crypto::f1_commit(public_key, public_key, crypto::Nonce{}, payload.r) == payload.c;
}

namespace {

// Four-round Feistel network over 16 bits.
std::uint16_t permute16(std::uint64_t key, std::uint16_t value) {
  std::uint8_t left = static_cast<std::uint8_t>(value >> 8);
  std::uint8_t right = static_cast<std::uint8_t>(value);
  for (std::uint64_t round = 0; round < 4; ++round) {
    auto f = static_cast<std::uint8_t>(mix64(key ^ (round << 56), right));
    std::uint8_t next = left ^ f;
    left = right;
    right = next;
  }
  return static_cast<std::uint16_t>((left << 8) | right);
}

}  // namespace

std::uint16_t next_oob_frequency(const FrequencySchedule& sched, std::uint64_t counter) {
  if (sched.mode == FrequencySchedule::Mode::Fixed) return sched.fixed_id;
  const std::uint64_t block_key = mix64(sched.seed, counter >> 16);
  return permute16(block_key, static_cast<std::uint16_t>(counter & 0xFFFF));
}

bool attacker_oob_intercept_possible(const OobChannelConfig& cfg,
                                     const std::set<std::uint16_t>& attacker_known_freqs) {
  if (!cfg.attacker_can_read) return false;
  const auto freq = next_oob_frequency(cfg.frequency_schedule, cfg.frequency_schedule.counter);
  return attacker_known_freqs.contains(freq);
}

OobExchange exchange_oob(const OobEndpoint& a, const OobEndpoint& b, OobChannelConfig cfg,
                         std::uint64_t counter, const std::set<std::uint16_t>& attacker_known_freqs,
                         const Forger& forger) {
  if (!a.config.oob_available || !b.config.oob_available) {
    throw Error(ErrorCode::OobUnavailable, "both devices need an out-of-band channel");
  }
  cfg.frequency_schedule.counter = counter;
  const auto freq = next_oob_frequency(cfg.frequency_schedule, counter);

  OobExchange ex;
  auto from_a = make_payload(a.config.address, a.public_key, a.r, freq);
  auto from_b = make_payload(b.config.address, b.public_key, b.r, freq);

  // An attacker cannot touch a channel it cannot find.
  const bool on_known_freq = attacker_known_freqs.contains(freq);
  const bool can_read = attacker_oob_intercept_possible(cfg, attacker_known_freqs);
  const bool can_modify = cfg.attacker_can_modify && on_known_freq;

  if (can_read) {
    from_a.exposed = true;
    from_b.exposed = true;
    ex.attacker_view = AttackerView{from_a, from_b, freq};
  }

  ex.payload_for_a = from_b;
  ex.payload_for_b = from_a;
  if (can_modify && forger) {
    auto forgery = forger(ex.attacker_view, freq);
    if (forgery.for_a) {
      ex.payload_for_a = *forgery.for_a;
      ex.forged_a = true;
    }
    if (forgery.for_b) {
      ex.payload_for_b = *forgery.for_b;
      ex.forged_b = true;
    }
  }
  return ex;
}

}  // namespace ssp::oob
