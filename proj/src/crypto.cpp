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

#include "ssp/crypto.hpp"

#include <memory>

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/obj_mac.h>
#include <openssl/sha.h>

#include "ssp/error.hpp"

namespace ssp::crypto {
namespace {

struct BnFree {
  void operator()(BIGNUM* p) const { BN_free(p); }
};
struct BnCtxFree {
  void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
struct PointFree {
  void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};
struct CipherCtxFree {
  void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};

using BnPtr = std::unique_ptr<BIGNUM, BnFree>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxFree>;
using PointPtr = std::unique_ptr<EC_POINT, PointFree>;

const EC_GROUP* group() {
  static const EC_GROUP* g = EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1);
  return g;
}

BnPtr to_bn(std::span<const std::uint8_t> be) {
  return BnPtr(BN_bin2bn(be.data(), static_cast<int>(be.size()), nullptr));
}

FieldElement from_bn(const BIGNUM* bn) {
  FieldElement out{};
  BN_bn2binpad(bn, out.data(), static_cast<int>(out.size()));
  return out;
}

PublicPoint to_public(const EC_POINT* p, BN_CTX* ctx) {
  BnPtr x(BN_new()), y(BN_new());
  EC_POINT_get_affine_coordinates(group(), p, x.get(), y.get(), ctx);
  return PublicPoint{from_bn(x.get()), from_bn(y.get())};
}

// nullptr when the coordinates do not describe a finite curve point.
PointPtr to_point(const PublicPoint& pub, BN_CTX* ctx) {
  auto x = to_bn(pub.x);
  auto y = to_bn(pub.y);
  PointPtr p(EC_POINT_new(group()));
  if (EC_POINT_set_affine_coordinates(group(), p.get(), x.get(), y.get(), ctx) != 1) return {};
  if (EC_POINT_is_on_curve(group(), p.get(), ctx) != 1) return {};
  if (EC_POINT_is_at_infinity(group(), p.get())) return {};
  return p;
}

bool scalar_in_range(const Scalar& s) {
  auto k = to_bn(s);
  return !BN_is_zero(k.get()) && BN_cmp(k.get(), EC_GROUP_get0_order(group())) < 0;
}

std::array<std::uint8_t, 32> hmac_sha256(ByteSpan key, ByteSpan msg) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), msg.data(), msg.size(), out.data(),
       &len);
  return out;
}

template <class B>
B truncate128(const std::array<std::uint8_t, 32>& mac) {
  B out;
  std::copy_n(mac.begin(), B::kSize, out.bytes.begin());
  return out;
}

}  // namespace

Bytes PublicPoint::encode() const {
  Bytes out(x.begin(), x.end());
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

const PublicPoint& base_point() {
  static const PublicPoint g = [] {
    BnCtxPtr ctx(BN_CTX_new());
    return to_public(EC_GROUP_get0_generator(group()), ctx.get());
  }();
  return g;
}

KeyPair keypair_from_scalar(const Scalar& scalar) {
  if (!scalar_in_range(scalar)) throw Error(ErrorCode::InvalidScalar, "scalar outside [1, n-1]");
  BnCtxPtr ctx(BN_CTX_new());
  auto k = to_bn(scalar);
  PointPtr p(EC_POINT_new(group()));
  EC_POINT_mul(group(), p.get(), k.get(), nullptr, nullptr, ctx.get());
  return KeyPair{scalar, to_public(p.get(), ctx.get())};
}

KeyPair generate_keypair(Rng& rng) {
  Scalar s{};
  do {
    rng.fill(s);
  } while (!scalar_in_range(s));
  return keypair_from_scalar(s);
}

bool is_on_curve(const PublicPoint& point) {
  BnCtxPtr ctx(BN_CTX_new());
  return to_point(point, ctx.get()) != nullptr;
}

DhKey derive_dh_key(const Scalar& private_scalar, const PublicPoint& peer) {
  BnCtxPtr ctx(BN_CTX_new());
  auto q = to_point(peer, ctx.get());
  if (!q) throw Error(ErrorCode::InvalidPoint, "peer public key is not on P-256");
  if (!scalar_in_range(private_scalar)) {
    throw Error(ErrorCode::InvalidScalar, "private scalar outside [1, n-1]");
  }
  auto k = to_bn(private_scalar);
  PointPtr shared(EC_POINT_new(group()));
  EC_POINT_mul(group(), shared.get(), nullptr, q.get(), k.get(), ctx.get());
  DhKey out;
  out.bytes = to_public(shared.get(), ctx.get()).x;
  return out;
}

Nonce random_nonce(Rng& rng) {
  Nonce n;
  rng.fill(n.bytes);
  return n;
}

RandomizerR random_randomizer(Rng& rng) {
  RandomizerR r;
  rng.fill(r.bytes);
  return r;
}

RandomizerR randomizer_from_passkey(std::uint32_t passkey) {
  RandomizerR r;
  for (int i = 0; i < 4; ++i) r.bytes[12 + i] = static_cast<std::uint8_t>(passkey >> (24 - 8 * i));
  return r;
}

Commitment f1_commit(const PublicPoint& pk_a, const PublicPoint& pk_b, const Nonce& n,
                     const RandomizerR& r) {
  auto msg = ByteWriter().raw(pk_a.x).raw(pk_b.x).raw(r.span()).bytes();
  return truncate128<Commitment>(hmac_sha256(n.span(), msg));
}

std::uint32_t g_verify_value(const PublicPoint& pk_a, const PublicPoint& pk_b, const Nonce& n_a,
                             const Nonce& n_b) {
  auto msg = ByteWriter().raw(pk_a.x).raw(pk_b.x).raw(n_a.span()).raw(n_b.span()).bytes();
  std::array<std::uint8_t, SHA256_DIGEST_LENGTH> digest{};
  SHA256(msg.data(), msg.size(), digest.data());
  std::uint32_t low = 0;
  for (int i = 28; i < 32; ++i) low = (low << 8) | digest[i];
  return low % 1'000'000;
}

LinkKey f2_link_key(const DhKey& dh, const Nonce& n_a, const Nonce& n_b, BdAddr addr_a,
                    BdAddr addr_b) {
  static constexpr std::uint8_t kTag[] = {'b', 't', 'l', 'k'};
  auto msg = ByteWriter()
                 .raw(kTag)
                 .raw(n_a.span())
                 .raw(n_b.span())
                 .addr(addr_a)
                 .addr(addr_b)
                 .bytes();
  return truncate128<LinkKey>(hmac_sha256(dh.span(), msg));
}

CheckValue f3_check_value(const DhKey& dh, const Nonce& n_a, const Nonce& n_b,
                          const RandomizerR& r, std::uint8_t io_caps, BdAddr addr_a,
                          BdAddr addr_b) {
  static constexpr std::uint8_t kTag[] = {'b', 't', 'c', 'k'};
  auto msg = ByteWriter()
                 .raw(kTag)
                 .raw(n_a.span())
                 .raw(n_b.span())
                 .raw(r.span())
                 .u8(io_caps)
                 .addr(addr_a)
                 .addr(addr_b)
                 .bytes();
  return truncate128<CheckValue>(hmac_sha256(dh.span(), msg));
}

namespace {
constexpr std::size_t kTagLen = 16;
constexpr std::size_t kCounterLen = 8;

std::array<std::uint8_t, 12> gcm_iv(std::uint64_t counter) {
  std::array<std::uint8_t, 12> iv{};
  for (int i = 0; i < 8; ++i) iv[4 + i] = static_cast<std::uint8_t>(counter >> (56 - 8 * i));
  return iv;
}
}  // namespace

Bytes seal(const LinkKey& key, std::uint64_t counter, ByteSpan plaintext) {
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxFree> ctx(EVP_CIPHER_CTX_new());
  auto iv = gcm_iv(counter);
  EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_gcm(), nullptr, key.bytes.data(), iv.data());

  Bytes out = ByteWriter().u64(counter).bytes();
  out.resize(kCounterLen + plaintext.size() + kTagLen);
  int len = 0;
  if (!plaintext.empty()) {
    EVP_EncryptUpdate(ctx.get(), out.data() + kCounterLen, &len, plaintext.data(),
                      static_cast<int>(plaintext.size()));
  }
  EVP_EncryptFinal_ex(ctx.get(), out.data() + kCounterLen + len, &len);
  EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagLen,
                      out.data() + kCounterLen + plaintext.size());
  return out;
}

Bytes unseal(const LinkKey& key, ByteSpan sealed) {
  if (sealed.size() < kCounterLen + kTagLen) {
    throw Error(ErrorCode::UnsealFailure, "sealed frame too short");
  }
  ByteReader reader(sealed);
  auto iv = gcm_iv(reader.u64());
  auto body = sealed.subspan(kCounterLen, sealed.size() - kCounterLen - kTagLen);
  Bytes tag(sealed.end() - kTagLen, sealed.end());

  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxFree> ctx(EVP_CIPHER_CTX_new());
  EVP_DecryptInit_ex(ctx.get(), EVP_aes_128_gcm(), nullptr, key.bytes.data(), iv.data());
  Bytes plain(body.size());
  int len = 0;
  if (!body.empty()) {
    EVP_DecryptUpdate(ctx.get(), plain.data(), &len, body.data(), static_cast<int>(body.size()));
  }
  EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagLen, tag.data());
  if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + len, &len) != 1) {
    throw Error(ErrorCode::UnsealFailure, "authentication tag mismatch");
  }
  return plain;
}

}  // namespace ssp::crypto
