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

#include "ssp/scenario.hpp"

#include <charconv>
#include <map>

#include <fmt/format.h>

#include "ssp/error.hpp"
#include "ssp/world.hpp"

namespace ssp::scenario {

using pairing::AbortReason;
using pairing::DeviceConfig;
using pairing::SessionState;
using sim::EndpointId;
using sim::Party;

std::string to_string(const UserAgentPolicy& policy) {
  using K = UserAgentPolicy::Kind;
  switch (policy.kind) {
    case K::HonestComparing: return "honest";
    case K::AlwaysAccept: return "accept";
    case K::AlwaysReject: return "reject";
    case K::HonestPasskeyTransfer: return "passkey-transfer";
    case K::Inattentive: return fmt::format("inattentive:{}", policy.accept_probability);
  }
  return "?";
}

std::optional<UserAgentPolicy> parse_user_agent(std::string_view text) {
  using K = UserAgentPolicy::Kind;
  if (text == "honest") return UserAgentPolicy{K::HonestComparing, 0.0};
  if (text == "accept") return UserAgentPolicy{K::AlwaysAccept, 0.0};
  if (text == "reject") return UserAgentPolicy{K::AlwaysReject, 0.0};
  if (text == "passkey-transfer") return UserAgentPolicy{K::HonestPasskeyTransfer, 0.0};
  constexpr std::string_view prefix = "inattentive:";
  if (text.starts_with(prefix)) {
    const std::string rest(text.substr(prefix.size()));
    try {
      std::size_t used = 0;
      const double p = std::stod(rest, &used);
      if (used == rest.size() && p >= 0.0 && p <= 1.0) return UserAgentPolicy{K::Inattentive, p};
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::SecurePaired: return "SecurePaired";
    case Outcome::AttackSucceeded: return "AttackSucceeded";
    case Outcome::AttackDetected: return "AttackDetected";
    case Outcome::PolicyBlocked: return "PolicyBlocked";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string ScenarioResult::serialize_transcript() const {
  std::string out;
  for (const auto& line : transcript) {
    out += line;
    out += '\n';
  }
  return out;
}

namespace {

bool is_detection(AbortReason r) {
  switch (r) {
    case AbortReason::CommitmentMismatch:
    case AbortReason::CheckValueMismatch:
    case AbortReason::UserRejected:
    case AbortReason::InvalidPublicKey:
    case AbortReason::MissingOob:
    case AbortReason::ProtocolViolation:
      return true;
    default:
      return false;
  }
}

bool has_link_key(SessionState s) {
  return s == SessionState::LinkKeyReady || s == SessionState::Encrypted;
}

AbortReason root_reason(const pairing::PairingSession& s) {
  if (s.abort_reason() == AbortReason::PeerAborted) return s.peer_abort_reason();
  return s.abort_reason();
}

}  // namespace

Outcome classify_outcome(const Evidence& e) {
  if (e.reason_a == AbortReason::PolicyReject || e.reason_b == AbortReason::PolicyReject) {
    return Outcome::PolicyBlocked;
  }
  if (is_detection(e.reason_a) || is_detection(e.reason_b)) return Outcome::AttackDetected;
  if (e.attacker_present && e.captured_keys == 2 && e.captured_keys_verified && e.relay_verified) {
    return Outcome::AttackSucceeded;
  }
  if (e.state_a == SessionState::Encrypted && e.state_b == SessionState::Encrypted && e.key_a &&
      e.key_b && *e.key_a == *e.key_b && !e.attacker_pairing_frame_delivered) {
    return Outcome::SecurePaired;
  }
  return Outcome::Inconclusive;
}

namespace {

void validate(const ScenarioSpec& spec) {
  if (spec.max_slots == 0) throw Error(ErrorCode::InvalidSpec, "max_slots must be positive");
  if (spec.device_a.address == spec.device_b.address) {
    throw Error(ErrorCode::InvalidSpec, "devices share address " + spec.device_a.address.to_string());
  }
  if (spec.attacker && (spec.attacker->address == spec.device_a.address ||
                        spec.attacker->address == spec.device_b.address)) {
    throw Error(ErrorCode::InvalidSpec, "attacker shares a victim's address");
  }
  for (const auto* u : {&spec.user_agent_a, &spec.user_agent_b}) {
    if (u->accept_probability < 0.0 || u->accept_probability > 1.0) {
      throw Error(ErrorCode::InvalidSpec, "accept probability outside [0, 1]");
    }
  }
}

// One simulated run. Owns the world and all mutable run state.
class Runner {
 public:
  explicit Runner(const ScenarioSpec& spec)
      : spec_(spec), world_(spec.seed), user_rng_(world_.rng().fork(1)) {
    if (spec_.attacker) {
      attacker_.emplace();
      attacker_->config = *spec_.attacker;
      attacker_->rng = world_.rng().fork(2);
    }
    oob_cfg_ = spec_.oob_config;
    if (!attacker_) {
      oob_cfg_.attacker_can_read = false;
      oob_cfg_.attacker_can_modify = false;
    } else {
      if (attacker_->config.oob_access) {
        oob_cfg_.attacker_can_read = attacker_->config.oob_access->attacker_can_read;
        oob_cfg_.attacker_can_modify = attacker_->config.oob_access->attacker_can_modify;
      }
      known_freqs_ = attacker_->config.known_oob_freqs;
      if (oob_cfg_.frequency_schedule.mode == oob::FrequencySchedule::Mode::Fixed) {
        known_freqs_.insert(oob_cfg_.frequency_schedule.fixed_id);
      }
    }
    world_.set_decider([this](sim::World& w, EndpointId id, const sim::PendingPrompt& p) {
      return decide(w, id, p);
    });
  }

  ScenarioResult run();

 private:
  const pairing::PairingSession* session_of(const std::optional<EndpointId>& id) const {
    if (!id) return nullptr;
    const auto& e = world_.endpoint(*id);
    return e.session ? &*e.session : nullptr;
  }

  bool victims_terminal() const {
    const auto* a = session_of(cur_a_);
    const auto* b = session_of(cur_b_);
    return (!a || a->terminal()) && (!b || b->terminal());
  }

  bool victims_lost_link() const {
    const auto* a = session_of(cur_a_);
    const auto* b = session_of(cur_b_);
    return a && b && a->abort_reason() == AbortReason::LinkLoss &&
           b->abort_reason() == AbortReason::LinkLoss;
  }

  void open_direct();
  void exchange_oob(bool attacker_links);
  void run_app_exchange();
  void service_inboxes();
  pairing::UserDecision decide(sim::World& w, EndpointId id, const sim::PendingPrompt& p);
  ScenarioResult collect();

  const ScenarioSpec& spec_;
  sim::World world_;
  Rng user_rng_;
  std::optional<attack::AttackerState> attacker_;
  oob::OobChannelConfig oob_cfg_;
  std::set<std::uint16_t> known_freqs_;
  std::uint64_t oob_counter_ = 0;
  std::optional<EndpointId> cur_a_;
  std::optional<EndpointId> cur_b_;
  std::map<std::pair<std::string, std::uint64_t>, bool> inattentive_draws_;
  std::optional<Bytes> sent_by_a_;
  std::optional<Bytes> received_by_a_;
  std::optional<Bytes> received_by_b_;
};

void Runner::open_direct() {
  const auto& a = spec_.device_a;
  const auto& b = spec_.device_b;
  const auto seq = radio::HopSequence::for_link(
      a.address, static_cast<std::uint32_t>(world_.rng().next_u64()));
  const auto link = world_.open_link(sim::EndpointSpec{"A", Party::A, a.address, a.address},
                                     sim::EndpointSpec{"B", Party::B, b.address, b.address}, seq);
  cur_a_ = EndpointId{link, sim::Side::Master};
  cur_b_ = EndpointId{link, sim::Side::Slave};
  world_.start_session(*cur_a_, a, b.address);
  world_.start_session(*cur_b_, b, a.address);
  exchange_oob(false);
}

void Runner::exchange_oob(bool attacker_links) {
  const auto& a = spec_.device_a;
  const auto& b = spec_.device_b;
  if (!a.oob_available || !b.oob_available) return;
  const auto& sa = *session_of(cur_a_);
  const auto& sb = *session_of(cur_b_);
  oob::OobEndpoint ea{a, sa.own_keys().public_point, sa.oob_randomizer()};
  oob::OobEndpoint eb{b, sb.own_keys().public_point, sb.oob_randomizer()};

  oob::Forger forger;
  if (attacker_links) {
    forger = [&](const std::optional<oob::AttackerView>&, std::uint16_t freq) {
      return attack::forge_oob(*attacker_, world_, a, b, freq);
    };
  }
  const auto counter = oob_counter_++;
  auto ex = oob::exchange_oob(ea, eb, oob_cfg_, counter, known_freqs_, forger);
  world_.set_peer_oob(*cur_a_, ex.payload_for_a);
  world_.set_peer_oob(*cur_b_, ex.payload_for_b);
  world_.note(fmt::format("oob exchange counter={} freq={} observed={} forged={}{}", counter,
                          ex.payload_for_a.freq_id, ex.attacker_view ? 1 : 0, ex.forged_a ? 1 : 0,
                          ex.forged_b ? 1 : 0));
  if (attacker_links && ex.attacker_view) attack::absorb_oob_view(*attacker_, world_, *ex.attacker_view);
}

pairing::UserDecision Runner::decide(sim::World& w, EndpointId id, const sim::PendingPrompt& p) {
  using Kind = pairing::UserPromptRequest::Kind;
  using UK = UserAgentPolicy::Kind;
  const auto& e = w.endpoint(id);
  if (e.party == Party::Attacker) return attack::decide(*attacker_, p);

  const auto& policy = e.party == Party::A ? spec_.user_agent_a : spec_.user_agent_b;
  const auto* other = session_of(e.party == Party::A ? cur_b_ : cur_a_);
  const bool patience_left = w.slot() - p.since_slot < kUserPatience;
  auto other_shows = [&](pairing::AssociationModel model) -> std::optional<std::uint32_t> {
    if (!other || other->model() != model) return std::nullopt;
    return other->displayed_value();
  };

  if (p.request.kind == Kind::EnterPasskey) {
    if (policy.kind == UK::AlwaysReject) return pairing::Confirm{false};
    if (auto shown = other_shows(pairing::AssociationModel::PasskeyEntry)) {
      return pairing::PasskeyInput{*shown};
    }
    return patience_left ? pairing::UserDecision{} : pairing::Confirm{false};
  }

  switch (policy.kind) {
    case UK::AlwaysAccept: return pairing::Confirm{true};
    case UK::AlwaysReject: return pairing::Confirm{false};
    case UK::Inattentive: {
      auto key = std::make_pair(e.label, p.since_slot);
      auto it = inattentive_draws_.find(key);
      if (it == inattentive_draws_.end()) {
        it = inattentive_draws_.emplace(key, user_rng_.unit() < policy.accept_probability).first;
      }
      if (it->second) return pairing::Confirm{true};
      break;
    }
    default:
      break;
  }
  if (auto shown = other_shows(pairing::AssociationModel::NumericComparison)) {
    return pairing::Confirm{*shown == p.request.value};
  }
  return patience_left ? pairing::UserDecision{} : pairing::Confirm{false};
}

void Runner::service_inboxes() {
  for (std::size_t i = 0; i < world_.link_count(); ++i) {
    for (auto side : {sim::Side::Master, sim::Side::Slave}) {
      const EndpointId id{i, side};
      auto& e = world_.endpoint(id);
      while (!e.inbox.empty()) {
        Bytes sealed = std::move(e.inbox.front());
        e.inbox.pop_front();
        if (e.party == Party::Attacker) {
          if (!attacker_->config.can_relay) continue;
          const bool from_a = attacker_->session_with_a && id == *attacker_->session_with_a;
          const auto dir = from_a ? attack::Direction::AToB : attack::Direction::BToA;
          const auto out = from_a ? attacker_->session_with_b : attacker_->session_with_a;
          try {
            auto resealed = attack::relay(*attacker_, dir, sealed, world_.slot());
            world_.note(fmt::format("M relays {} byte(s) {}", attacker_->intercept_log.back().plaintext.size(),
                                    from_a ? "A->B" : "B->A"));
            if (out) world_.queue_data(*out, std::move(resealed));
          } catch (const Error& err) {
            world_.note(fmt::format("M relay failed: {}", err.what()));
          }
          continue;
        }
        const auto& key = e.session ? e.session->link_key() : std::nullopt;
        if (!key) continue;
        Bytes plain;
        try {
          plain = crypto::unseal(*key, sealed);
        } catch (const Error&) {
          world_.note(fmt::format("{} rejects unauthenticated data", e.label));
          continue;
        }
        world_.note(fmt::format("{} received data {}", e.label, to_hex(plain)));
        if (e.party == Party::B && !received_by_b_) {
          received_by_b_ = plain;
          Bytes reply{'a', 'c', 'k', ':'};
          reply.insert(reply.end(), plain.begin(), plain.end());
          world_.queue_data(id, crypto::seal(*key, ++e.seal_counter, reply));
        } else if (e.party == Party::A && !received_by_a_) {
          received_by_a_ = plain;
        }
      }
    }
  }
}

void Runner::run_app_exchange() {
  auto& ea = world_.endpoint(*cur_a_);
  const auto* sa = session_of(cur_a_);
  const auto* sb = session_of(cur_b_);
  if (!sa || !sb || sa->state() != SessionState::Encrypted ||
      sb->state() != SessionState::Encrypted) {
    return;
  }
  sent_by_a_ = Bytes{'h', 'e', 'l', 'l', 'o'};
  world_.queue_data(*cur_a_, crypto::seal(*sa->link_key(), ++ea.seal_counter, *sent_by_a_));
  world_.note("A sends data 68656c6c6f");
  const auto deadline = std::min(spec_.max_slots, world_.slot() + kAppTimeout);
  while (!received_by_a_ && world_.slot() < deadline) {
    world_.tick();
    service_inboxes();
  }
}

ScenarioResult Runner::run() {
  open_direct();

  bool jammed = false;
  if (attacker_ && attacker_->config.can_jam) {
    attack::jam_phase(*attacker_, world_, cur_a_->link, spec_.max_slots);
    jammed = true;
  } else {
    world_.run_until([&] { return victims_terminal(); }, spec_.max_slots);
  }

  if (jammed && victims_lost_link() && world_.slot() < spec_.max_slots) {
    if (attacker_->config.can_impersonate) {
      const auto to_a = attack::impersonate(*attacker_, world_, spec_.device_a, spec_.device_b,
                                            pairing::Role::Responder, Party::A);
      const auto to_b = attack::impersonate(*attacker_, world_, spec_.device_b, spec_.device_a,
                                            pairing::Role::Initiator, Party::B);
      cur_a_ = sim::peer_of(to_a);
      cur_b_ = sim::peer_of(to_b);
      exchange_oob(true);
      attack::run_inner_pairings(*attacker_, world_, spec_.max_slots);
    } else {
      const auto resume = std::min(spec_.max_slots, world_.slot() + kReconnectBackoff);
      world_.run_until([] { return false; }, resume);
      if (world_.slot() < spec_.max_slots) {
        open_direct();
        world_.run_until([&] { return victims_terminal(); }, spec_.max_slots);
      }
    }
  }

  run_app_exchange();
  return collect();
}

ScenarioResult Runner::collect() {
  ScenarioResult r;
  auto& ev = r.evidence;
  ev.attacker_present = attacker_.has_value();
  const auto* sa = session_of(cur_a_);
  const auto* sb = session_of(cur_b_);
  if (sa) {
    ev.state_a = sa->state();
    ev.reason_a = root_reason(*sa);
    if (has_link_key(sa->state())) ev.key_a = sa->link_key();
    r.model_a = sa->model();
  }
  if (sb) {
    ev.state_b = sb->state();
    ev.reason_b = root_reason(*sb);
    if (has_link_key(sb->state())) ev.key_b = sb->link_key();
    r.model_b = sb->model();
  }
  if (attacker_) {
    ev.captured_keys = attacker_->captured_key_count();
    ev.captured_keys_verified = ev.captured_keys == 2 && ev.key_a && ev.key_b &&
                                *attacker_->key_with_a == *ev.key_a &&
                                *attacker_->key_with_b == *ev.key_b;
    bool saw_a_to_b = false;
    bool saw_b_to_a = false;
    for (const auto& rec : attacker_->intercept_log) {
      if (rec.direction == attack::Direction::AToB && sent_by_a_ && rec.plaintext == *sent_by_a_) {
        saw_a_to_b = true;
      }
      if (rec.direction == attack::Direction::BToA && received_by_a_ &&
          rec.plaintext == *received_by_a_) {
        saw_b_to_a = true;
      }
    }
    ev.relay_verified = saw_a_to_b && saw_b_to_a && received_by_b_.has_value();
    for (std::size_t i = 0; i < world_.link_count(); ++i) {
      for (const auto& e : world_.link(i).ends) {
        if (e.party == Party::Attacker && e.pairing_frame_delivered) {
          ev.attacker_pairing_frame_delivered = true;
        }
      }
    }
    r.intercepts = attacker_->intercept_log;
  }
  ev.max_slots_reached = world_.slot() >= spec_.max_slots;

  r.outcome = classify_outcome(ev);
  r.abort_reason = ev.reason_a != AbortReason::None ? ev.reason_a : ev.reason_b;
  r.link_keys_match = ev.key_a && ev.key_b && *ev.key_a == *ev.key_b;
  r.received_by_a = received_by_a_;
  r.received_by_b = received_by_b_;
  r.slots_used = world_.slot();

  world_.note(fmt::format("outcome {} reason {}", to_string(r.outcome),
                          pairing::to_string(r.abort_reason)));
  r.transcript = world_.transcript();
  for (const auto& d : world_.net().delivery_log()) {
    r.delivery_log.push_back(radio::format_delivery_line(d));
  }
  return r;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioSpec& spec) {
  validate(spec);
  Runner runner(spec);
  return runner.run();
}

std::string_view to_string(AttackerVariant variant) {
  switch (variant) {
    case AttackerVariant::Full: return "full";
    case AttackerVariant::Downgrade: return "downgrade";
    case AttackerVariant::JamOnly: return "jam-only";
    case AttackerVariant::None: return "none";
  }
  return "?";
}

std::optional<AttackerVariant> parse_attacker_variant(std::string_view text) {
  for (auto v : kAllAttackerVariants) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

std::optional<attack::AttackerConfig> attacker_for(AttackerVariant variant) {
  switch (variant) {
    case AttackerVariant::Full: return attack::AttackerConfig::full();
    case AttackerVariant::Downgrade: return attack::AttackerConfig::downgrade();
    case AttackerVariant::JamOnly: return attack::AttackerConfig::jam_only();
    case AttackerVariant::None: return std::nullopt;
  }
  return std::nullopt;
}

ScenarioSpec matrix_cell_spec(pairing::IoCapability io_a, pairing::IoCapability io_b, bool oob,
                              AttackerVariant variant, std::uint64_t seed) {
  ScenarioSpec s;
  s.device_a.address = BdAddr(0x0A);
  s.device_a.io = io_a;
  s.device_a.oob_available = oob;
  s.device_b.address = BdAddr(0x0B);
  s.device_b.io = io_b;
  s.device_b.oob_available = oob;
  s.attacker = attacker_for(variant);
  s.seed = seed;
  return s;
}

FeasibilityMatrix feasibility_matrix(const std::vector<std::uint64_t>& seeds,
                                     const std::vector<AttackerVariant>& variants) {
  if (seeds.size() < 10) throw Error(ErrorCode::InvalidSpec, "the matrix needs at least 10 seeds");
  FeasibilityMatrix m;
  std::uint64_t cell_index = 0;
  const auto& caps = pairing::kAllIoCapabilities;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    for (std::size_t j = i; j < caps.size(); ++j) {
      for (bool oob : {false, true}) {
        for (auto variant : variants) {
          MatrixCell cell{caps[i], caps[j], oob, variant, 0, 0};
          for (auto seed : seeds) {
            auto result = run_scenario(matrix_cell_spec(caps[i], caps[j], oob, variant, seed + cell_index));
            ++cell.runs;
            if (result.outcome == Outcome::AttackSucceeded) ++cell.successes;
          }
          m.cells.push_back(cell);
          ++cell_index;
        }
      }
    }
  }
  return m;
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  for (std::size_t j = 0; j < count; ++j) out[j] = base + j;
  return out;
}

}  // namespace ssp::scenario
