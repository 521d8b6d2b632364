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

#include "ssp/pairing.hpp"

#include "ssp/error.hpp"

namespace ssp::pairing {

ModelSelection select_association_model(IoCapability io_a, IoCapability io_b, bool oob_a,
                                        bool oob_b, const SecurityPolicy& policy) {
  if (oob_a && oob_b) return AssociationModel::OutOfBand;
  if (policy.require_oob) return PolicyReject{"out-of-band pairing required but unavailable"};
  if (can_confirm(io_a) && can_confirm(io_b)) return AssociationModel::NumericComparison;
  if ((has_keyboard(io_a) && has_display(io_b)) || (has_keyboard(io_b) && has_display(io_a))) {
    return AssociationModel::PasskeyEntry;
  }
  if (!policy.allow_just_works) return PolicyReject{"Just Works disabled by policy"};
  if (policy.require_mitm_protection) {
    return PolicyReject{"Just Works offers no MITM protection"};
  }
  return AssociationModel::JustWorks;
}

bool passkey_input_side(IoCapability own, IoCapability peer) {
  return has_keyboard(own) && (!has_keyboard(peer) || !has_display(own));
}

StartResult start_pairing(const DeviceConfig& config, BdAddr peer_address, Role role, Rng& rng,
                          const SessionOptions& options) {
  auto keys = crypto::generate_keypair(rng);
  return start_pairing_with_keys(config, peer_address, role, keys, rng, options);
}

StartResult start_pairing_with_keys(const DeviceConfig& config, BdAddr peer_address, Role role,
                                    const crypto::KeyPair& keys, Rng& rng,
                                    const SessionOptions& options) {
  PairingSession s;
  s.config_ = config;
  s.options_ = options;
  s.peer_address_ = peer_address;
  s.role_ = role;
  s.own_keys_ = keys;
  // Every draw happens here, in a fixed order, whatever model is chosen later.
  s.n_own_ = crypto::random_nonce(rng);
  s.oob_r_ = crypto::random_randomizer(rng);
  s.drawn_passkey_ = static_cast<std::uint32_t>(rng.uniform(1'000'000));

  StepResult out;
  s.send(msg::IoCapabilityExchange{config.io, config.oob_available}, out);
  if (role == Role::Initiator) {
    s.send(msg::PublicKeyX{keys.public_point}, out);
    s.state_ = SessionState::PublicKeySent;
  }
  return StartResult{std::move(s), std::move(out.outbound)};
}

void PairingSession::send(PairingMessage m, StepResult& out) {
  transcript_.push_back(TranscriptEntry{false, encode(m)});
  out.outbound.push_back(std::move(m));
}

void PairingSession::abort(AbortReason reason, StepResult& out) {
  if (state_ == SessionState::Aborted) return;
  state_ = SessionState::Aborted;
  abort_reason_ = reason;
  link_key_.reset();
  awaiting_.reset();
  if (reason != AbortReason::LinkLoss && reason != AbortReason::PeerAborted) {
    send(msg::Abort{reason}, out);
  }
}

void PairingSession::abort_silently(AbortReason reason) {
  if (state_ == SessionState::Aborted) return;
  state_ = SessionState::Aborted;
  abort_reason_ = reason;
  link_key_.reset();
  awaiting_.reset();
}

const crypto::PublicPoint& PairingSession::initiator_key() const {
  return role_ == Role::Initiator ? own_keys_.public_point : *peer_public_;
}
const crypto::PublicPoint& PairingSession::responder_key() const {
  return role_ == Role::Responder ? own_keys_.public_point : *peer_public_;
}
const crypto::Nonce& PairingSession::initiator_nonce() const {
  return role_ == Role::Initiator ? n_own_ : *n_peer_;
}
const crypto::Nonce& PairingSession::responder_nonce() const {
  return role_ == Role::Responder ? n_own_ : *n_peer_;
}

crypto::CheckValue PairingSession::own_check() const {
  return crypto::f3_check_value(*dh_, n_own_, *n_peer_, r_peer_,
                                encode_io_caps(config_.io, config_.oob_available), config_.address,
                                peer_address_);
}

crypto::CheckValue PairingSession::expected_peer_check() const {
  return crypto::f3_check_value(*dh_, *n_peer_, n_own_, r_own_,
                                encode_io_caps(*peer_io_, peer_oob_flag_), peer_address_,
                                config_.address);
}

StepResult PairingSession::step(const std::optional<PairingMessage>& inbound,
                                const UserDecision& decision, const oob::OobPayload* peer_oob) {
  StepResult out;
  if (peer_oob && !peer_oob_payload_) peer_oob_payload_ = *peer_oob;
  if (state_ == SessionState::Aborted) return out;
  if (inbound) {
    transcript_.push_back(TranscriptEntry{true, encode(*inbound)});
    handle_message(*inbound, out);
  }
  if (state_ != SessionState::Aborted) handle_decision(decision, out);
  advance(out);
  return out;
}

void PairingSession::handle_message(const PairingMessage& m, StepResult& out) {
  const bool have_peer_key = peer_public_.has_value();
  const bool in_stage1 = state_ == SessionState::Stage1InProgress;
  const bool comparison_flow = model_ == AssociationModel::NumericComparison ||
                               model_ == AssociationModel::JustWorks;

  if (const auto* a = std::get_if<msg::Abort>(&m)) {
    state_ = SessionState::Aborted;
    abort_reason_ = AbortReason::PeerAborted;
    peer_abort_reason_ = a->reason;
    link_key_.reset();
    awaiting_.reset();
    return;
  }

  if (state_ == SessionState::LinkKeyReady || state_ == SessionState::Encrypted) {
    return abort(AbortReason::ProtocolViolation, out);
  }

  if (const auto* io = std::get_if<msg::IoCapabilityExchange>(&m)) {
    if (peer_io_ || have_peer_key) return abort(AbortReason::ProtocolViolation, out);
    peer_io_ = io->io;
    peer_oob_flag_ = io->oob;
    const auto& policy = config_.policy;
    if (policy.expected_peer_io && *policy.expected_peer_io != io->io) {
      return abort(AbortReason::PolicyReject, out);
    }
    auto sel = select_association_model(config_.io, io->io, config_.oob_available, io->oob, policy);
    if (std::holds_alternative<PolicyReject>(sel)) return abort(AbortReason::PolicyReject, out);
    model_ = std::get<AssociationModel>(sel);
    return;
  }

  if (const auto* pk = std::get_if<msg::PublicKeyX>(&m)) {
    const bool expected_state = role_ == Role::Initiator ? state_ == SessionState::PublicKeySent
                                                         : state_ == SessionState::Idle;
    if (!peer_io_ || have_peer_key || !expected_state) {
      return abort(AbortReason::ProtocolViolation, out);
    }
    return on_public_key(pk->point, out);
  }

  if (const auto* c = std::get_if<msg::CommitmentMsg>(&m)) {
    bool legal = in_stage1 && !c_peer_;
    if (comparison_flow) legal = legal && role_ == Role::Initiator;
    else legal = legal && model_ == AssociationModel::PasskeyEntry;
    if (!legal) return abort(AbortReason::ProtocolViolation, out);
    c_peer_ = c->value;
    return;
  }

  if (const auto* n = std::get_if<msg::NonceReveal>(&m)) {
    if (!in_stage1 || n_peer_) return abort(AbortReason::ProtocolViolation, out);
    bool legal = true;
    switch (*model_) {
      case AssociationModel::NumericComparison:
      case AssociationModel::JustWorks:
        legal = legal && (role_ == Role::Initiator ? nonce_sent_ && c_peer_ : commit_sent_);
        break;
      case AssociationModel::PasskeyEntry:
        legal = legal && commit_sent_ && c_peer_;
        break;
      case AssociationModel::OutOfBand:
        legal = legal && (role_ == Role::Responder || nonce_sent_);
        break;
    }
    if (!legal) return abort(AbortReason::ProtocolViolation, out);
    n_peer_ = n->value;

    if (comparison_flow && role_ == Role::Initiator) {
      // The responder committed to its nonce before seeing ours.
      auto expected = crypto::f1_commit(*peer_public_, own_keys_.public_point, *n_peer_,
                                        crypto::RandomizerR{});
      if (expected != *c_peer_) return abort(AbortReason::CommitmentMismatch, out);
    } else if (model_ == AssociationModel::PasskeyEntry) {
      auto expected = crypto::f1_commit(*peer_public_, own_keys_.public_point, *n_peer_, r_peer_);
      if (expected != *c_peer_) return abort(AbortReason::CommitmentMismatch, out);
    }
    return;
  }

  if (const auto* e = std::get_if<msg::DhKeyCheck>(&m)) {
    bool legal = !pending_peer_check_;
    if (role_ == Role::Initiator) {
      legal = legal && state_ == SessionState::Stage2InProgress;
    } else {
      // May overtake our own user confirmation; held until stage 1 is done.
      legal = legal && n_peer_ && nonce_sent_ &&
              (in_stage1 || state_ == SessionState::Stage1Done ||
               state_ == SessionState::Stage2InProgress);
    }
    if (!legal) return abort(AbortReason::ProtocolViolation, out);
    pending_peer_check_ = e->value;
    return;
  }

  if (std::holds_alternative<msg::PairComplete>(m)) {
    if (role_ != Role::Responder || state_ != SessionState::Stage2InProgress || !own_check_sent_) {
      return abort(AbortReason::ProtocolViolation, out);
    }
    pair_complete_received_ = true;
    return;
  }
}

void PairingSession::on_public_key(const crypto::PublicPoint& pk, StepResult& out) {
  peer_public_ = pk;
  if (role_ == Role::Responder) {
    send(msg::PublicKeyX{own_keys_.public_point}, out);
    state_ = SessionState::PublicKeySent;
  }

  switch (*model_) {
    case AssociationModel::NumericComparison:
    case AssociationModel::JustWorks:
      r_own_ = {};
      r_peer_ = {};
      break;
    case AssociationModel::PasskeyEntry:
      break;  // r is the passkey, set once known
    case AssociationModel::OutOfBand:
      r_own_ = oob_r_;
      if (peer_oob_payload_ && peer_oob_payload_->sender_address == peer_address_) {
        // The in-band key must be the one committed over the trusted channel.
        if (!oob::payload_binds(*peer_oob_payload_, pk)) {
          return abort(AbortReason::CommitmentMismatch, out);
        }
        r_peer_ = peer_oob_payload_->r;
      } else if (options_.require_peer_oob) {
        return abort(AbortReason::MissingOob, out);
      } else {
        r_peer_ = {};
      }
      break;
  }
  state_ = SessionState::Stage1InProgress;
}

void PairingSession::handle_decision(const UserDecision& d, StepResult& out) {
  if (std::holds_alternative<NoInteraction>(d) || !awaiting_) return;
  if (*awaiting_ == UserPromptRequest::Kind::ConfirmValue) {
    if (const auto* c = std::get_if<Confirm>(&d)) {
      awaiting_.reset();
      if (!c->yes) return abort(AbortReason::UserRejected, out);
      user_confirmed_ = true;
    }
    return;
  }
  if (*awaiting_ == UserPromptRequest::Kind::EnterPasskey) {
    if (const auto* p = std::get_if<PasskeyInput>(&d)) {
      awaiting_.reset();
      passkey_ = p->value % 1'000'000;
    } else if (const auto* c = std::get_if<Confirm>(&d); c && !c->yes) {
      awaiting_.reset();
      abort(AbortReason::UserRejected, out);
    }
  }
}

void PairingSession::advance(StepResult& out) {
  while (state_ != SessionState::Aborted && advance_once(out)) {
  }
}

bool PairingSession::advance_stage1(StepResult& out) {
  using Kind = UserPromptRequest::Kind;
  switch (*model_) {
    case AssociationModel::NumericComparison:
    case AssociationModel::JustWorks: {
      if (role_ == Role::Responder && !commit_sent_) {
        send(msg::CommitmentMsg{crypto::f1_commit(own_keys_.public_point, *peer_public_, n_own_,
                                                  crypto::RandomizerR{})},
             out);
        commit_sent_ = true;
        return true;
      }
      if (role_ == Role::Initiator && c_peer_ && !nonce_sent_) {
        send(msg::NonceReveal{n_own_}, out);
        nonce_sent_ = true;
        return true;
      }
      if (role_ == Role::Responder && n_peer_ && !nonce_sent_) {
        send(msg::NonceReveal{n_own_}, out);
        nonce_sent_ = true;
        return true;
      }
      if (nonce_sent_ && n_peer_ && !displayed_ && !user_confirmed_) {
        auto value = crypto::g_verify_value(initiator_key(), responder_key(), initiator_nonce(),
                                            responder_nonce());
        if (model_ == AssociationModel::NumericComparison) {
          displayed_ = value;
          awaiting_ = Kind::ConfirmValue;
          out.prompts.push_back(UserPromptRequest{Kind::ConfirmValue, value});
        } else {
          user_confirmed_ = true;
        }
        return true;
      }
      if (user_confirmed_) {
        state_ = SessionState::Stage1Done;
        return true;
      }
      return false;
    }

    case AssociationModel::PasskeyEntry: {
      if (!passkey_ && !passkey_prompted_) {
        passkey_prompted_ = true;
        if (passkey_input_side(config_.io, *peer_io_)) {
          awaiting_ = Kind::EnterPasskey;
          out.prompts.push_back(UserPromptRequest{Kind::EnterPasskey, 0});
        } else {
          passkey_ = config_.passkey.value_or(drawn_passkey_) % 1'000'000;
          displayed_ = passkey_;
          out.prompts.push_back(UserPromptRequest{Kind::DisplayPasskey, *passkey_});
        }
        return true;
      }
      if (passkey_ && !commit_sent_) {
        r_own_ = r_peer_ = crypto::randomizer_from_passkey(*passkey_);
        send(msg::CommitmentMsg{crypto::f1_commit(own_keys_.public_point, *peer_public_, n_own_,
                                                  r_own_)},
             out);
        commit_sent_ = true;
        return true;
      }
      if (commit_sent_ && c_peer_ && !nonce_sent_) {
        send(msg::NonceReveal{n_own_}, out);
        nonce_sent_ = true;
        return true;
      }
      if (nonce_sent_ && n_peer_) {
        state_ = SessionState::Stage1Done;
        return true;
      }
      return false;
    }

    case AssociationModel::OutOfBand: {
      if (!nonce_sent_ && (role_ == Role::Initiator || n_peer_)) {
        send(msg::NonceReveal{n_own_}, out);
        nonce_sent_ = true;
        return true;
      }
      if (nonce_sent_ && n_peer_) {
        state_ = SessionState::Stage1Done;
        return true;
      }
      return false;
    }
  }
  return false;
}

bool PairingSession::advance_once(StepResult& out) {
  switch (state_) {
    case SessionState::Stage1InProgress:
      return advance_stage1(out);

    case SessionState::Stage1Done: {
      // The peer key is only used with our private scalar once stage 1 has
      // authenticated it.
      try {
        dh_ = crypto::derive_dh_key(own_keys_.private_scalar, *peer_public_);
      } catch (const Error&) {
        abort(AbortReason::InvalidPublicKey, out);
        return false;
      }
      if (role_ == Role::Initiator) send(msg::DhKeyCheck{own_check()}, out);
      state_ = SessionState::Stage2InProgress;
      return true;
    }

    case SessionState::Stage2InProgress: {
      if (role_ == Role::Responder) {
        if (pending_peer_check_ && !own_check_sent_) {
          if (*pending_peer_check_ != expected_peer_check()) {
            abort(AbortReason::CheckValueMismatch, out);
            return false;
          }
          send(msg::DhKeyCheck{own_check()}, out);
          own_check_sent_ = true;
          return true;
        }
        if (pair_complete_received_) {
          auto fin = finalize_stage2();
          out.outbound.insert(out.outbound.end(), fin.outbound.begin(), fin.outbound.end());
          return true;
        }
        return false;
      }
      if (pending_peer_check_) {
        auto fin = finalize_stage2();
        out.outbound.insert(out.outbound.end(), fin.outbound.begin(), fin.outbound.end());
        return true;
      }
      return false;
    }

    default:
      return false;
  }
}

StepResult PairingSession::finalize_stage2() {
  StepResult out;
  const bool ready = state_ == SessionState::Stage2InProgress && dh_ && pending_peer_check_ &&
                     (role_ == Role::Initiator || pair_complete_received_);
  if (!ready) throw Error(ErrorCode::NotReady, "stage 2 checks not exchanged");

  if (*pending_peer_check_ != expected_peer_check()) {
    abort(AbortReason::CheckValueMismatch, out);
    return out;
  }
  const BdAddr addr_i = role_ == Role::Initiator ? config_.address : peer_address_;
  const BdAddr addr_r = role_ == Role::Initiator ? peer_address_ : config_.address;
  link_key_ = crypto::f2_link_key(*dh_, initiator_nonce(), responder_nonce(), addr_i, addr_r);
  state_ = SessionState::LinkKeyReady;
  events_.push_back(LogEvent::SimplePairingComplete);
  events_.push_back(LogEvent::LinkKeyNotification);
  if (role_ == Role::Initiator) {
    events_.push_back(LogEvent::AuthenticationComplete);
    send(msg::PairComplete{}, out);
  }
  return out;
}

void PairingSession::enable_encryption() {
  if (state_ != SessionState::LinkKeyReady) {
    throw Error(ErrorCode::NotReady, "encryption requires a link key");
  }
  state_ = SessionState::Encrypted;
  events_.push_back(LogEvent::EncryptionChange);
}

}  // namespace ssp::pairing
