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
#include <random>
#include <span>

namespace ssp {

// SplitMix64 finalizer. Used as the keyed mixing function wherever a
// stateless pseudo-random function of integers is needed.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(a ^ mix64(b)); }

// Seeded source for every random draw in a simulation. mt19937_64's output
// sequence is fixed by the standard, and only raw output words are consumed
// here, so runs are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t uniform(std::uint64_t bound);

  // Uniform double in [0, 1) from the top 53 bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  void fill(std::span<std::uint8_t> out);

  // Independent child stream; does not advance this generator.
  Rng fork(std::uint64_t stream) const { return Rng(mix64(seed_material(), stream)); }

 private:
  std::uint64_t seed_material() const;

  std::mt19937_64 engine_;
};

}  // namespace ssp
