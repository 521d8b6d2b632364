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
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "ssp/bytes.hpp"
#include "ssp/pairing.hpp"

// Lock-step frequency-hopping medium. Slots are abstract 625 us units;
// there is no propagation delay, no capture effect and no partial damage.
namespace ssp::radio {

inline constexpr int kChannelCount = 79;

struct TimeSlot {
  std::uint64_t index = 0;
  friend auto operator<=>(TimeSlot, TimeSlot) = default;
};

struct HopSequence {
  std::uint64_t seed = 0;

  // Seed derived from the link master's address and clock offset.
  static HopSequence for_link(BdAddr master, std::uint32_t clock_offset);
  friend bool operator==(HopSequence, HopSequence) = default;
};

// Keyed pseudo-random channel in [0, 78]. Not the Bluetooth hop kernel.
int hop_channel(const HopSequence& seq, TimeSlot slot);

struct SealedData {
  Bytes bytes;
};

using Payload = std::variant<std::monostate, pairing::PairingMessage, SealedData>;

using RadioId = std::uint32_t;

struct RadioFrame {
  RadioId transmitter = 0;
  BdAddr sender;          // real address of the transmitting device
  BdAddr claimed_sender;  // address written into the frame; spoofable
  TimeSlot slot;
  int channel = 0;
  // Link access code; a radio accepts only frames carrying its own.
  std::uint64_t access_code = 0;
  Payload payload;
  bool is_noise = false;
};

// Short label for the payload: message name, "data" or "noise".
std::string payload_tag(const RadioFrame& frame);

enum class DeliveryOutcome : std::uint8_t { Delivered, Collided, Jammed, Unheard };

std::string_view to_string(DeliveryOutcome outcome);

struct DeliveryEvent {
  TimeSlot slot;
  int channel = 0;
  RadioId transmitter = 0;
  BdAddr sender;
  BdAddr claimed_sender;
  DeliveryOutcome outcome = DeliveryOutcome::Unheard;
  std::string tag;
  std::vector<RadioId> receivers;
  RadioFrame frame;
};

// "slot,channel,sender,claimed_sender,OUTCOME,tag"
std::string format_delivery_line(const DeliveryEvent& e);

// Shared medium for every radio in a simulation world. A frame reaches a
// radio iff the radio is tuned to the frame's access code, hops to the
// frame's channel in this slot, and no other frame (noise included) shares
// that (channel, slot).
class Piconet {
 public:
  using Tap = std::function<void(const RadioFrame&, DeliveryOutcome)>;

  RadioId attach(BdAddr address);
  // Listen on `seq`; frames must carry access code seq.seed.
  void tune(RadioId radio, const HopSequence& seq);
  void detune(RadioId radio);

  // Taps see every frame of every slot, destroyed or not.
  void add_tap(Tap tap);

  TimeSlot current_slot() const { return current_; }

  // Throws Error(WrongSlot) unless frame.slot == current_slot().
  void transmit(RadioFrame frame);

  // Resolves the current slot, appends to the delivery log and advances
  // the clock. Events are ordered by (channel, sender address, radio id).
  std::vector<DeliveryEvent> resolve_slot();

  const std::vector<DeliveryEvent>& delivery_log() const { return log_; }
  void set_logging(bool on) { logging_ = on; }

 private:
  struct Member {
    BdAddr address;
    bool listening = false;
    HopSequence seq;
  };

  std::vector<Member> members_;
  std::vector<RadioFrame> pending_;
  std::vector<Tap> taps_;
  std::vector<DeliveryEvent> log_;
  TimeSlot current_;
  bool logging_ = true;
};

}  // namespace ssp::radio
