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

#include <array>
#include <cstdint>
#include <optional>

#include "ssp/bytes.hpp"
#include "ssp/rng.hpp"

// Cryptographic primitives of Secure Simple Pairing over NIST P-256.
//
// The commitment, verification, link-key and check-value functions are
// simulator-local keyed-hash constructions, not the bit layouts of the
// Bluetooth Core standard:
//
//   f1(PKa, PKb, N, r)              = HMAC-SHA256(N,  x(PKa) || x(PKb) || r)[0..16)
//   g(PKa, PKb, Na, Nb)             = u32be(SHA256(x(PKa) || x(PKb) || Na || Nb)[28..32)) mod 10^6
//   f2(DH, Na, Nb, A, B)            = HMAC-SHA256(DH, "btlk" || Na || Nb || A || B)[0..16)
//   f3(DH, Na, Nb, r, IO, A, B)     = HMAC-SHA256(DH, "btck" || Na || Nb || r || IO || A || B)[0..16)
//
// All integers are big-endian; device addresses are 6 bytes.
namespace ssp::crypto {

using Scalar = std::array<std::uint8_t, 32>;
using FieldElement = std::array<std::uint8_t, 32>;

struct PublicPoint {
  FieldElement x{};
  FieldElement y{};

  Bytes encode() const;  // x || y, 64 bytes
  friend bool operator==(const PublicPoint&, const PublicPoint&) = default;
};

struct KeyPair {
  Scalar private_scalar{};
  PublicPoint public_point;
};

using DhKey = Block<struct DhKeyTag, 32>;
using Nonce = Block<struct NonceTag, 16>;
using RandomizerR = Block<struct RandomizerTag, 16>;
using Commitment = Block<struct CommitmentTag, 16>;
using LinkKey = Block<struct LinkKeyTag, 16>;
using CheckValue = Block<struct CheckValueTag, 16>;

// P-256 base point.
const PublicPoint& base_point();

// Draws scalars from `rng` until one lands in [1, n-1].
KeyPair generate_keypair(Rng& rng);

// Throws Error(InvalidScalar) unless 1 <= scalar <= n-1.
KeyPair keypair_from_scalar(const Scalar& scalar);

bool is_on_curve(const PublicPoint& point);

// x-coordinate of private_scalar * peer. Throws Error(InvalidPoint) when the
// peer point is not on the curve.
DhKey derive_dh_key(const Scalar& private_scalar, const PublicPoint& peer);

Nonce random_nonce(Rng& rng);
RandomizerR random_randomizer(Rng& rng);

// Passkey as a randomizer: the value big-endian in the low four bytes.
RandomizerR randomizer_from_passkey(std::uint32_t passkey);

Commitment f1_commit(const PublicPoint& pk_a, const PublicPoint& pk_b, const Nonce& n,
                     const RandomizerR& r);

// Six-digit value shown to the user in Numeric Comparison, in [0, 999999].
std::uint32_t g_verify_value(const PublicPoint& pk_a, const PublicPoint& pk_b, const Nonce& n_a,
                             const Nonce& n_b);

LinkKey f2_link_key(const DhKey& dh, const Nonce& n_a, const Nonce& n_b, BdAddr addr_a,
                    BdAddr addr_b);

CheckValue f3_check_value(const DhKey& dh, const Nonce& n_a, const Nonce& n_b,
                          const RandomizerR& r, std::uint8_t io_caps, BdAddr addr_a,
                          BdAddr addr_b);

// Authenticated-encryption stub for link traffic: AES-128-GCM keyed by the
// link key, 96-bit nonce = 0x00000000 || counter. Sealed layout is
// counter(8) || ciphertext || tag(16).
Bytes seal(const LinkKey& key, std::uint64_t counter, ByteSpan plaintext);

// Throws Error(UnsealFailure) if the frame is malformed or fails authentication.
Bytes unseal(const LinkKey& key, ByteSpan sealed);

}  // namespace ssp::crypto
