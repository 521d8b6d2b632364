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

#include "ssp/bytes.hpp"
#include "ssp/crypto.hpp"

namespace ssp::oob {

// What one device hands its peer over the out-of-band channel. The
// commitment is f1(PK, PK, 0, r) over the sender's in-band public key.
struct OobPayload {
  static constexpr std::size_t kWireSize = 6 + 16 + 16 + 2;

  BdAddr sender_address;
  crypto::RandomizerR r;
  crypto::Commitment c;
  std::uint16_t freq_id = 0;

  // Taint: set when an attacker observed this payload. Not serialized.
  bool exposed = false;

  // address(6) || r(16) || c(16) || freq_id(2), big-endian.
  Bytes encode() const;
  // Throws Error(MalformedMessage) on a wrong length.
  static OobPayload decode(ByteSpan wire);

  friend bool operator==(const OobPayload& a, const OobPayload& b) {
    return a.sender_address == b.sender_address && a.r == b.r && a.c == b.c &&
           a.freq_id == b.freq_id;
  }
};

// Builds the payload binding `public_key` under randomizer `r`.
OobPayload make_payload(BdAddr sender, const crypto::PublicPoint& public_key,
                        const crypto::RandomizerR& r, std::uint16_t freq_id);

// True when the payload's commitment binds `public_key`.
bool payload_binds(const OobPayload& payload, const crypto::PublicPoint& public_key);

}  // namespace ssp::oob
