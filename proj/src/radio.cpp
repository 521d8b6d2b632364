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

#include "ssp/radio.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "ssp/error.hpp"
#include "ssp/rng.hpp"

namespace ssp::radio {

HopSequence HopSequence::for_link(BdAddr master, std::uint32_t clock_offset) {
  return HopSequence{mix64(master.value, clock_offset)};
}

int hop_channel(const HopSequence& seq, TimeSlot slot) {
  return static_cast<int>(mix64(seq.seed, slot.index) % kChannelCount);
}

std::string payload_tag(const RadioFrame& frame) {
  if (frame.is_noise) return "noise";
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, pairing::PairingMessage>) {
          return std::string(pairing::to_string(pairing::tag_of(p)));
        } else if constexpr (std::is_same_v<T, SealedData>) {
          return "data";
        } else {
          return "empty";
        }
      },
      frame.payload);
}

std::string_view to_string(DeliveryOutcome outcome) {
  switch (outcome) {
    case DeliveryOutcome::Delivered: return "DELIVERED";
    case DeliveryOutcome::Collided: return "COLLIDED";
    case DeliveryOutcome::Jammed: return "JAMMED";
    case DeliveryOutcome::Unheard: return "UNHEARD";
  }
  return "?";
}

std::string format_delivery_line(const DeliveryEvent& e) {
  return fmt::format("{},{},{},{},{},{}", e.slot.index, e.channel, e.sender.to_string(),
                     e.claimed_sender.to_string(), to_string(e.outcome), e.tag);
}

RadioId Piconet::attach(BdAddr address) {
  members_.push_back(Member{address, false, {}});
  return static_cast<RadioId>(members_.size() - 1);
}

void Piconet::tune(RadioId radio, const HopSequence& seq) {
  members_.at(radio).listening = true;
  members_.at(radio).seq = seq;
}

void Piconet::detune(RadioId radio) { members_.at(radio).listening = false; }

void Piconet::add_tap(Tap tap) { taps_.push_back(std::move(tap)); }

void Piconet::transmit(RadioFrame frame) {
  if (frame.slot != current_) {
    throw Error(ErrorCode::WrongSlot, fmt::format("frame for slot {} queued in slot {}",
                                                  frame.slot.index, current_.index));
  }
  pending_.push_back(std::move(frame));
}

std::vector<DeliveryEvent> Piconet::resolve_slot() {
  std::map<int, int> occupancy;
  std::map<int, bool> noisy;
  for (const auto& f : pending_) {
    ++occupancy[f.channel];
    if (f.is_noise) noisy[f.channel] = true;
  }

  std::stable_sort(pending_.begin(), pending_.end(), [](const RadioFrame& a, const RadioFrame& b) {
    if (a.channel != b.channel) return a.channel < b.channel;
    if (a.sender != b.sender) return a.sender < b.sender;
    return a.transmitter < b.transmitter;
  });

  std::vector<DeliveryEvent> events;
  events.reserve(pending_.size());
  for (auto& f : pending_) {
    DeliveryEvent e;
    e.slot = current_;
    e.channel = f.channel;
    e.transmitter = f.transmitter;
    e.sender = f.sender;
    e.claimed_sender = f.claimed_sender;
    e.tag = payload_tag(f);

    if (f.is_noise) {
      e.outcome = DeliveryOutcome::Jammed;
    } else if (occupancy[f.channel] > 1) {
      e.outcome = noisy[f.channel] ? DeliveryOutcome::Jammed : DeliveryOutcome::Collided;
    } else {
      for (RadioId id = 0; id < members_.size(); ++id) {
        const auto& m = members_[id];
        if (id == f.transmitter || !m.listening || m.seq.seed != f.access_code) continue;
        if (hop_channel(m.seq, current_) == f.channel) e.receivers.push_back(id);
      }
      e.outcome = e.receivers.empty() ? DeliveryOutcome::Unheard : DeliveryOutcome::Delivered;
    }
    for (const auto& tap : taps_) tap(f, e.outcome);
    e.frame = std::move(f);
    events.push_back(std::move(e));
  }
  pending_.clear();
  if (logging_) log_.insert(log_.end(), events.begin(), events.end());
  ++current_.index;
  return events;
}

}  // namespace ssp::radio
