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

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ssp {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

// Fixed-size byte value with a phantom tag so that nonces, commitments and
// keys of equal width cannot be swapped by accident.
template <class Tag, std::size_t N>
struct Block {
  static constexpr std::size_t kSize = N;
  std::array<std::uint8_t, N> bytes{};

  ByteSpan span() const { return bytes; }
  bool is_zero() const {
    for (auto b : bytes)
      if (b != 0) return false;
    return true;
  }
  friend bool operator==(const Block&, const Block&) = default;
  friend auto operator<=>(const Block&, const Block&) = default;
};

// 48-bit Bluetooth device address.
struct BdAddr {
  std::uint64_t value = 0;

  constexpr BdAddr() = default;
  constexpr explicit BdAddr(std::uint64_t v) : value(v & 0xFFFF'FFFF'FFFFULL) {}

  std::array<std::uint8_t, 6> to_bytes() const;  // big-endian
  std::string to_string() const;                 // "AA:BB:CC:DD:EE:FF"
  static BdAddr parse(std::string_view text);    // throws std::invalid_argument

  friend bool operator==(BdAddr, BdAddr) = default;
  friend auto operator<=>(BdAddr, BdAddr) = default;
};

std::string to_hex(ByteSpan data);
Bytes from_hex(std::string_view hex);  // throws std::invalid_argument

template <std::size_t N>
std::array<std::uint8_t, N> array_from_hex(std::string_view hex) {
  auto raw = from_hex(hex);
  if (raw.size() != N) throw std::invalid_argument("hex length mismatch");
  std::array<std::uint8_t, N> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

class ByteWriter {
 public:
  ByteWriter& u8(std::uint8_t v);
  ByteWriter& u16(std::uint16_t v);
  ByteWriter& u32(std::uint32_t v);
  ByteWriter& u64(std::uint64_t v);
  ByteWriter& addr(BdAddr a);
  ByteWriter& raw(ByteSpan data);

  const Bytes& bytes() const& { return out_; }
  Bytes bytes() && { return std::move(out_); }

 private:
  Bytes out_;
};

// Bounds-checked big-endian reader; throws std::out_of_range on underrun.
class ByteReader {
 public:
  explicit ByteReader(ByteSpan data) : data_(data) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  BdAddr addr();
  ByteSpan take(std::size_t n);
  template <std::size_t N>
  std::array<std::uint8_t, N> array() {
    auto s = take(N);
    std::array<std::uint8_t, N> out{};
    std::copy(s.begin(), s.end(), out.begin());
    return out;
  }

  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  ByteSpan data_;
  std::size_t pos_ = 0;
};

}  // namespace ssp
