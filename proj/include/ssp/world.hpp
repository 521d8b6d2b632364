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
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssp/oob_payload.hpp"
#include "ssp/pairing.hpp"
#include "ssp/radio.hpp"
#include "ssp/rng.hpp"

// Slot-driven simulation world: point-to-point links over one shared
// Piconet, each end running a PairingSession. The link master sends in even
// slots and the slave in odd slots. Frames are retransmitted until delivered
// (implicit acknowledgement); a run of failures drops the link.
namespace ssp::sim {

inline constexpr int kLinkLossThreshold = 16;
inline constexpr std::uint64_t kSupervisionTimeout = 800;

enum class Party : std::uint8_t { A, B, Attacker };

enum class Side : std::uint8_t { Master = 0, Slave = 1 };

struct EndpointId {
  std::size_t link = 0;
  Side side = Side::Master;
  friend bool operator==(EndpointId, EndpointId) = default;
};

inline EndpointId peer_of(EndpointId id) {
  return {id.link, id.side == Side::Master ? Side::Slave : Side::Master};
}

struct PendingPrompt {
  pairing::UserPromptRequest request;
  std::uint64_t since_slot = 0;
};

struct EndpointSpec {
  std::string label;  // transcript name
  Party party = Party::A;
  BdAddr address;  // real transmitter address
  BdAddr claimed;  // address written into frames
};

struct Endpoint {
  std::string label;
  Party party = Party::A;
  BdAddr address;
  BdAddr claimed;
  radio::RadioId radio = 0;
  std::optional<pairing::PairingSession> session;
  std::optional<oob::OobPayload> peer_oob;
  std::deque<radio::Payload> queue;
  int consecutive_failures = 0;
  std::optional<PendingPrompt> prompt;
  std::deque<Bytes> inbox;  // sealed application frames not yet consumed
  std::uint64_t seal_counter = 0;
  bool pairing_frame_delivered = false;
};

struct Link {
  radio::HopSequence seq;
  std::array<Endpoint, 2> ends;
  bool lost = false;
  std::uint64_t last_delivery_slot = 0;
};

struct Jammer {
  std::string label;
  BdAddr address;
  radio::RadioId radio = 0;
  radio::HopSequence seq;
  bool active = true;
};

class World {
 public:
  using Decider = std::function<pairing::UserDecision(World&, EndpointId, const PendingPrompt&)>;

  explicit World(std::uint64_t seed);

  Rng& rng() { return rng_; }
  radio::Piconet& net() { return net_; }
  std::uint64_t slot() const { return net_.current_slot().index; }

  std::size_t open_link(const EndpointSpec& master, const EndpointSpec& slave,
                        const radio::HopSequence& seq);
  Link& link(std::size_t index) { return links_.at(index); }
  const Link& link(std::size_t index) const { return links_.at(index); }
  std::size_t link_count() const { return links_.size(); }
  Endpoint& endpoint(EndpointId id) { return links_.at(id.link).ends[static_cast<int>(id.side)]; }
  const Endpoint& endpoint(EndpointId id) const {
    return links_.at(id.link).ends[static_cast<int>(id.side)];
  }

  // The master end is the pairing initiator.
  void start_session(EndpointId id, const pairing::DeviceConfig& config, BdAddr peer,
                     const pairing::SessionOptions& options = {});
  void set_peer_oob(EndpointId id, const oob::OobPayload& payload);

  void queue_data(EndpointId id, Bytes sealed);

  std::size_t add_jammer(const std::string& label, BdAddr address, const radio::HopSequence& seq);
  void stop_jammer(std::size_t index);

  void set_decider(Decider decider) { decider_ = std::move(decider); }

  // Runs one slot: transmissions, delivery, session steps, user decisions,
  // link supervision.
  void tick();

  // Ticks until `done` holds or the slot clock reaches `deadline`. Returns
  // whether `done` held.
  bool run_until(const std::function<bool()>& done, std::uint64_t deadline);

  void note(const std::string& text);
  const std::vector<std::string>& transcript() const { return transcript_; }

 private:
  void feed(EndpointId id, const std::optional<pairing::PairingMessage>& inbound,
            const pairing::UserDecision& decision);
  void absorb(EndpointId id, pairing::StepResult result);
  void drop_link(std::size_t index, const char* why);
  std::optional<EndpointId> owner_of(radio::RadioId radio) const;

  Rng rng_;
  radio::Piconet net_;
  std::vector<Link> links_;
  std::vector<Jammer> jammers_;
  std::vector<std::optional<EndpointId>> radio_owner_;
  Decider decider_;
  std::vector<std::string> transcript_;
};

}  // namespace ssp::sim
