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

#include "ssp/world.hpp"

#include <fmt/format.h>

namespace ssp::sim {

using pairing::PairingMessage;
using pairing::SessionState;

namespace {

std::string describe(const pairing::UserDecision& d) {
  if (const auto* c = std::get_if<pairing::Confirm>(&d)) return c->yes ? "confirm yes" : "confirm no";
  if (const auto* p = std::get_if<pairing::PasskeyInput>(&d)) {
    return fmt::format("passkey {:06}", p->value);
  }
  return "none";
}

}  // namespace

World::World(std::uint64_t seed) : rng_(seed) {}

std::size_t World::open_link(const EndpointSpec& master, const EndpointSpec& slave,
                             const radio::HopSequence& seq) {
  Link l;
  l.seq = seq;
  l.last_delivery_slot = slot();
  const std::size_t index = links_.size();
  const EndpointSpec* specs[2] = {&master, &slave};
  for (int i = 0; i < 2; ++i) {
    auto& e = l.ends[i];
    e.label = specs[i]->label;
    e.party = specs[i]->party;
    e.address = specs[i]->address;
    e.claimed = specs[i]->claimed;
    e.radio = net_.attach(e.address);
    net_.tune(e.radio, seq);
    if (radio_owner_.size() <= e.radio) radio_owner_.resize(e.radio + 1);
    radio_owner_[e.radio] = EndpointId{index, static_cast<Side>(i)};
  }
  links_.push_back(std::move(l));
  note(fmt::format("link {} open {} <-> {} seed={:016x}", index, master.label, slave.label,
                   seq.seed));
  return index;
}

void World::start_session(EndpointId id, const pairing::DeviceConfig& config, BdAddr peer,
                          const pairing::SessionOptions& options) {
  auto& e = endpoint(id);
  const auto role =
      id.side == Side::Master ? pairing::Role::Initiator : pairing::Role::Responder;
  auto started = pairing::start_pairing(config, peer, role, rng_, options);
  e.session.emplace(std::move(started.session));
  e.prompt.reset();
  note(fmt::format("{} start {} io={} oob={} peer={}", e.label, pairing::to_string(role),
                   pairing::to_string(config.io), config.oob_available ? 1 : 0,
                   peer.to_string()));
  for (auto& m : started.outbound) e.queue.emplace_back(std::move(m));
}

void World::set_peer_oob(EndpointId id, const oob::OobPayload& payload) {
  endpoint(id).peer_oob = payload;
}

void World::queue_data(EndpointId id, Bytes sealed) {
  endpoint(id).queue.emplace_back(radio::SealedData{std::move(sealed)});
}

std::size_t World::add_jammer(const std::string& label, BdAddr address,
                              const radio::HopSequence& seq) {
  Jammer j{label, address, net_.attach(address), seq, true};
  if (radio_owner_.size() <= j.radio) radio_owner_.resize(j.radio + 1);
  jammers_.push_back(j);
  note(fmt::format("{} jamming seed={:016x}", label, seq.seed));
  return jammers_.size() - 1;
}

void World::stop_jammer(std::size_t index) {
  if (jammers_.at(index).active) {
    jammers_[index].active = false;
    note(fmt::format("{} stops jamming", jammers_[index].label));
  }
}

void World::note(const std::string& text) {
  transcript_.push_back(fmt::format("{} {}", slot(), text));
}

std::optional<EndpointId> World::owner_of(radio::RadioId radio) const {
  if (radio < radio_owner_.size()) return radio_owner_[radio];
  return std::nullopt;
}

void World::absorb(EndpointId id, pairing::StepResult result) {
  auto& e = endpoint(id);
  for (auto& m : result.outbound) e.queue.emplace_back(std::move(m));
  for (const auto& p : result.prompts) {
    note(fmt::format("{} prompt {} {:06}", e.label, pairing::to_string(p.kind), p.value));
    // Display-only prompts need no answer; the value stays on the session.
    if (p.kind != pairing::UserPromptRequest::Kind::DisplayPasskey) {
      e.prompt = PendingPrompt{p, slot()};
    }
  }
  auto& s = *e.session;
  if (s.state() == SessionState::LinkKeyReady) {
    s.enable_encryption();
    note(fmt::format("{} encrypted", e.label));
  }
  if (s.state() == SessionState::Aborted && e.prompt) e.prompt.reset();
}

void World::feed(EndpointId id, const std::optional<PairingMessage>& inbound,
                 const pairing::UserDecision& decision) {
  auto& e = endpoint(id);
  if (!e.session) return;
  const auto before = e.session->state();
  const auto* oob = e.peer_oob ? &*e.peer_oob : nullptr;
  absorb(id, e.session->step(inbound, decision, oob));
  const auto& s = *e.session;
  if (s.state() == SessionState::Aborted && before != SessionState::Aborted) {
    note(fmt::format("{} aborted {}", e.label, pairing::to_string(s.abort_reason())));
  }
}

void World::drop_link(std::size_t index, const char* why) {
  auto& l = links_.at(index);
  if (l.lost) return;
  l.lost = true;
  for (auto& e : l.ends) {
    e.queue.clear();
    e.prompt.reset();
    net_.detune(e.radio);
    if (e.session && !e.session->terminal()) {
      e.session->abort_silently(pairing::AbortReason::LinkLoss);
      note(fmt::format("{} aborted LinkLoss", e.label));
    }
  }
  note(fmt::format("link {} lost ({})", index, why));
}

void World::tick() {
  const radio::TimeSlot now = net_.current_slot();
  const Side turn = now.index % 2 == 0 ? Side::Master : Side::Slave;

  for (std::size_t i = 0; i < links_.size(); ++i) {
    auto& l = links_[i];
    if (l.lost) continue;
    auto& e = l.ends[static_cast<int>(turn)];
    if (e.queue.empty()) continue;
    radio::RadioFrame f;
    f.transmitter = e.radio;
    f.sender = e.address;
    f.claimed_sender = e.claimed;
    f.slot = now;
    f.channel = radio::hop_channel(l.seq, now);
    f.access_code = l.seq.seed;
    f.payload = e.queue.front();
    net_.transmit(std::move(f));
  }
  for (const auto& j : jammers_) {
    if (!j.active) continue;
    radio::RadioFrame f;
    f.transmitter = j.radio;
    f.sender = j.address;
    f.claimed_sender = j.address;
    f.slot = now;
    f.channel = radio::hop_channel(j.seq, now);
    f.access_code = j.seq.seed;
    f.is_noise = true;
    net_.transmit(std::move(f));
  }

  auto events = net_.resolve_slot();

  std::vector<std::pair<EndpointId, radio::Payload>> arrivals;
  for (auto& ev : events) {
    if (ev.frame.is_noise) continue;
    const auto from = owner_of(ev.transmitter);
    if (!from) continue;
    auto& sender = endpoint(*from);
    auto& l = links_[from->link];
    if (ev.outcome != radio::DeliveryOutcome::Delivered) {
      transcript_.push_back(fmt::format("{} tx {}", now.index, radio::format_delivery_line(ev)));
      if (++sender.consecutive_failures >= kLinkLossThreshold) {
        drop_link(from->link, "retransmission limit");
      }
      continue;
    }
    sender.consecutive_failures = 0;
    sender.queue.pop_front();
    l.last_delivery_slot = now.index;
    for (auto r : ev.receivers) {
      const auto to = owner_of(r);
      if (!to || to->link != from->link) continue;
      arrivals.emplace_back(*to, ev.frame.payload);
    }
    std::string body;
    if (const auto* m = std::get_if<PairingMessage>(&ev.frame.payload)) {
      sender.pairing_frame_delivered = true;
      body = to_hex(pairing::encode(*m));
    } else if (const auto* d = std::get_if<radio::SealedData>(&ev.frame.payload)) {
      body = to_hex(d->bytes);
    }
    transcript_.push_back(
        fmt::format("{} tx {} {}", now.index, radio::format_delivery_line(ev), body));
  }

  for (auto& [to, payload] : arrivals) {
    if (links_[to.link].lost) continue;
    if (auto* m = std::get_if<PairingMessage>(&payload)) {
      feed(to, *m, pairing::NoInteraction{});
    } else if (auto* d = std::get_if<radio::SealedData>(&payload)) {
      endpoint(to).inbox.push_back(std::move(d->bytes));
    }
  }

  for (std::size_t i = 0; i < links_.size(); ++i) {
    for (int side = 0; side < 2; ++side) {
      const EndpointId id{i, static_cast<Side>(side)};
      auto& e = endpoint(id);
      if (links_[i].lost || !e.prompt || !e.session || !decider_) continue;
      const auto prompt = *e.prompt;
      auto decision = decider_(*this, id, prompt);
      if (std::holds_alternative<pairing::NoInteraction>(decision)) continue;
      e.prompt.reset();
      note(fmt::format("{} decision {}", e.label, describe(decision)));
      feed(id, std::nullopt, decision);
    }
  }

  for (std::size_t i = 0; i < links_.size(); ++i) {
    auto& l = links_[i];
    if (l.lost) continue;
    const bool pending = (l.ends[0].session && !l.ends[0].session->terminal()) ||
                         (l.ends[1].session && !l.ends[1].session->terminal());
    if (pending && now.index - l.last_delivery_slot >= kSupervisionTimeout) {
      drop_link(i, "supervision timeout");
    }
  }
}

bool World::run_until(const std::function<bool()>& done, std::uint64_t deadline) {
  while (!done()) {
    if (slot() >= deadline) return false;
    tick();
  }
  return true;
}

}  // namespace ssp::sim
