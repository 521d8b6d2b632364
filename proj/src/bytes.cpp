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

#include "ssp/bytes.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace ssp {

std::array<std::uint8_t, 6> BdAddr::to_bytes() const {
  std::array<std::uint8_t, 6> out{};
  for (int i = 0; i < 6; ++i) out[i] = static_cast<std::uint8_t>(value >> (8 * (5 - i)));
  return out;
}

std::string BdAddr::to_string() const {
  auto b = to_bytes();
  return fmt::format("{:02X}:{:02X}:{:02X}:{:02X}:{:02X}:{:02X}", b[0], b[1], b[2], b[3], b[4], b[5]);
}

BdAddr BdAddr::parse(std::string_view text) {
  std::string digits;
  for (char c : text) {
    if (c == ':' || c == '-') continue;
    digits.push_back(c);
  }
  if (digits.size() != 12) throw std::invalid_argument("bad device address: " + std::string(text));
  auto raw = from_hex(digits);
  std::uint64_t v = 0;
  for (auto b : raw) v = (v << 8) | b;
  return BdAddr(v);
}

std::string to_hex(ByteSpan data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

namespace {
int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("non-hex character");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

ByteWriter& ByteWriter::u8(std::uint8_t v) {
  out_.push_back(v);
  return *this;
}

ByteWriter& ByteWriter::u16(std::uint16_t v) {
  out_.push_back(static_cast<std::uint8_t>(v >> 8));
  out_.push_back(static_cast<std::uint8_t>(v));
  return *this;
}

ByteWriter& ByteWriter::u32(std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  return *this;
}

ByteWriter& ByteWriter::u64(std::uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  return *this;
}

ByteWriter& ByteWriter::addr(BdAddr a) {
  auto b = a.to_bytes();
  out_.insert(out_.end(), b.begin(), b.end());
  return *this;
}

ByteWriter& ByteWriter::raw(ByteSpan data) {
  out_.insert(out_.end(), data.begin(), data.end());
  return *this;
}

ByteSpan ByteReader::take(std::size_t n) {
  if (remaining() < n) throw std::out_of_range("byte reader underrun");
  auto s = data_.subspan(pos_, n);
  pos_ += n;
  return s;
}

std::uint8_t ByteReader::u8() { return take(1)[0]; }

std::uint16_t ByteReader::u16() {
  auto s = take(2);
  return static_cast<std::uint16_t>((s[0] << 8) | s[1]);
}

std::uint32_t ByteReader::u32() {
  std::uint32_t v = 0;
  for (auto b : take(4)) v = (v << 8) | b;
  return v;
}

std::uint64_t ByteReader::u64() {
  std::uint64_t v = 0;
  for (auto b : take(8)) v = (v << 8) | b;
  return v;
}

BdAddr ByteReader::addr() {
  std::uint64_t v = 0;
  for (auto b : take(6)) v = (v << 8) | b;
  return BdAddr(v);
}

}  // namespace ssp
