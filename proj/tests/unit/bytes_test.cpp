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

#include "ssp/bytes.hpp"
#include "ssp/rng.hpp"

namespace ssp {
namespace {

TEST(Bytes, HexRoundTrip) {
  Bytes b{0x00, 0x7f, 0x80, 0xff};
  EXPECT_EQ(to_hex(b), "007f80ff");
  EXPECT_EQ(from_hex("007F80ff"), b);
  EXPECT_THROW(from_hex("abc"), std::invalid_argument);
  EXPECT_THROW(from_hex("zz"), std::invalid_argument);
}

TEST(Bytes, AddressFormatting) {
  BdAddr a = BdAddr::parse("01:23:45:67:89:ab");
  EXPECT_EQ(a.value, 0x0123456789ABULL);
  EXPECT_EQ(a.to_string(), "01:23:45:67:89:AB");
  EXPECT_EQ(BdAddr::parse("0123456789ab"), a);
  EXPECT_THROW(BdAddr::parse("01:23"), std::invalid_argument);
  EXPECT_EQ(BdAddr(0xFFFF'0000'0000'0001ULL).value, 1u);
}

TEST(Bytes, WriterReaderBigEndian) {
  auto w = ByteWriter().u8(1).u16(0x0203).u32(0x04050607).u64(0x08090A0B0C0D0E0FULL).bytes();
  EXPECT_EQ(to_hex(w), "0102030405060708090a0b0c0d0e0f");
  ByteReader r(w);
  EXPECT_EQ(r.u8(), 1);
  EXPECT_EQ(r.u16(), 0x0203);
  EXPECT_EQ(r.u32(), 0x04050607u);
  EXPECT_EQ(r.u64(), 0x08090A0B0C0D0E0FULL);
  EXPECT_EQ(r.remaining(), 0u);
  EXPECT_THROW(r.u8(), std::out_of_range);
}

TEST(Rng, SeededAndForkIndependent) {
  Rng a(5), b(5);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  Rng parent(9);
  Rng copy(9);
  auto child = parent.fork(1);
  EXPECT_EQ(parent.next_u64(), copy.next_u64());
  EXPECT_NE(child.next_u64(), parent.fork(2).next_u64());
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(a.uniform(7), 7u);
    const double u = a.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace ssp
