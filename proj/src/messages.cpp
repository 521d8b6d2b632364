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

#include <stdexcept>

#include "ssp/error.hpp"
#include "ssp/pairing.hpp"

namespace ssp::pairing {

std::string_view to_string(IoCapability io) {
  switch (io) {
    case IoCapability::DisplayOnly: return "DisplayOnly";
    case IoCapability::DisplayYesNo: return "DisplayYesNo";
    case IoCapability::KeyboardOnly: return "KeyboardOnly";
    case IoCapability::NoInputNoOutput: return "NoInputNoOutput";
    case IoCapability::KeyboardDisplay: return "KeyboardDisplay";
  }
  return "?";
}

std::optional<IoCapability> parse_io_capability(std::string_view text) {
  for (auto io : kAllIoCapabilities)
    if (to_string(io) == text) return io;
  return std::nullopt;
}

std::string_view to_string(AssociationModel model) {
  switch (model) {
    case AssociationModel::NumericComparison: return "NumericComparison";
    case AssociationModel::JustWorks: return "JustWorks";
    case AssociationModel::OutOfBand: return "OutOfBand";
    case AssociationModel::PasskeyEntry: return "PasskeyEntry";
  }
  return "?";
}

std::string_view to_string(Role role) {
  return role == Role::Initiator ? "Initiator" : "Responder";
}

std::string_view to_string(SessionState state) {
  switch (state) {
    case SessionState::Idle: return "Idle";
    case SessionState::PublicKeySent: return "PublicKeySent";
    case SessionState::Stage1InProgress: return "Stage1InProgress";
    case SessionState::Stage1Done: return "Stage1Done";
    case SessionState::Stage2InProgress: return "Stage2InProgress";
    case SessionState::LinkKeyReady: return "LinkKeyReady";
    case SessionState::Encrypted: return "Encrypted";
    case SessionState::Aborted: return "Aborted";
  }
  return "?";
}

std::string_view to_string(AbortReason reason) {
  switch (reason) {
    case AbortReason::None: return "None";
    case AbortReason::PolicyReject: return "PolicyReject";
    case AbortReason::CommitmentMismatch: return "CommitmentMismatch";
    case AbortReason::CheckValueMismatch: return "CheckValueMismatch";
    case AbortReason::UserRejected: return "UserRejected";
    case AbortReason::ProtocolViolation: return "ProtocolViolation";
    case AbortReason::MissingOob: return "MissingOob";
    case AbortReason::InvalidPublicKey: return "InvalidPublicKey";
    case AbortReason::LinkLoss: return "LinkLoss";
    case AbortReason::PeerAborted: return "PeerAborted";
  }
  return "?";
}

std::string_view to_string(UserPromptRequest::Kind kind) {
  switch (kind) {
    case UserPromptRequest::Kind::ConfirmValue: return "ConfirmValue";
    case UserPromptRequest::Kind::DisplayPasskey: return "DisplayPasskey";
    case UserPromptRequest::Kind::EnterPasskey: return "EnterPasskey";
  }
  return "?";
}

std::string_view to_string(LogEvent event) {
  switch (event) {
    case LogEvent::SimplePairingComplete: return "SimplePairingComplete";
    case LogEvent::LinkKeyNotification: return "LinkKeyNotification";
    case LogEvent::AuthenticationComplete: return "AuthenticationComplete";
    case LogEvent::EncryptionChange: return "EncryptionChange";
  }
  return "?";
}

MessageTag tag_of(const PairingMessage& m) {
  return std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, msg::IoCapabilityExchange>) return MessageTag::IoCapabilityExchange;
        else if constexpr (std::is_same_v<T, msg::PublicKeyX>) return MessageTag::PublicKeyX;
        else if constexpr (std::is_same_v<T, msg::CommitmentMsg>) return MessageTag::Commitment;
        else if constexpr (std::is_same_v<T, msg::NonceReveal>) return MessageTag::NonceReveal;
        else if constexpr (std::is_same_v<T, msg::DhKeyCheck>) return MessageTag::DhKeyCheck;
        else if constexpr (std::is_same_v<T, msg::PairComplete>) return MessageTag::PairComplete;
        else return MessageTag::Abort;
      },
      m);
}

std::string_view to_string(MessageTag tag) {
  switch (tag) {
    case MessageTag::IoCapabilityExchange: return "IoCapabilityExchange";
    case MessageTag::PublicKeyX: return "PublicKeyX";
    case MessageTag::Commitment: return "Commitment";
    case MessageTag::NonceReveal: return "NonceReveal";
    case MessageTag::DhKeyCheck: return "DhKeyCheck";
    case MessageTag::PairComplete: return "PairComplete";
    case MessageTag::Abort: return "Abort";
  }
  return "?";
}

Bytes encode(const PairingMessage& m) {
  ByteWriter body;
  std::visit(
      [&body](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, msg::IoCapabilityExchange>) {
          body.u8(static_cast<std::uint8_t>(v.io)).u8(v.oob ? 1 : 0);
        } else if constexpr (std::is_same_v<T, msg::PublicKeyX>) {
          body.raw(v.point.x).raw(v.point.y);
        } else if constexpr (std::is_same_v<T, msg::CommitmentMsg> ||
                             std::is_same_v<T, msg::NonceReveal> ||
                             std::is_same_v<T, msg::DhKeyCheck>) {
          body.raw(v.value.span());
        } else if constexpr (std::is_same_v<T, msg::Abort>) {
          body.u8(static_cast<std::uint8_t>(v.reason));
        }
      },
      m);
  const auto& payload = body.bytes();
  return ByteWriter()
      .u8(static_cast<std::uint8_t>(tag_of(m)))
      .u16(static_cast<std::uint16_t>(payload.size()))
      .raw(payload)
      .bytes();
}

namespace {

template <class B>
B read_block(ByteReader& r) {
  B out;
  out.bytes = r.array<B::kSize>();
  return out;
}

PairingMessage decode_body(MessageTag tag, ByteReader& r) {
  switch (tag) {
    case MessageTag::IoCapabilityExchange: {
      auto io = r.u8();
      auto oob = r.u8();
      if (io > static_cast<std::uint8_t>(IoCapability::KeyboardDisplay) || oob > 1) {
        throw Error(ErrorCode::MalformedMessage, "bad IO capability exchange");
      }
      return msg::IoCapabilityExchange{static_cast<IoCapability>(io), oob == 1};
    }
    case MessageTag::PublicKeyX: {
      crypto::PublicPoint p;
      p.x = r.array<32>();
      p.y = r.array<32>();
      return msg::PublicKeyX{p};
    }
    case MessageTag::Commitment: return msg::CommitmentMsg{read_block<crypto::Commitment>(r)};
    case MessageTag::NonceReveal: return msg::NonceReveal{read_block<crypto::Nonce>(r)};
    case MessageTag::DhKeyCheck: return msg::DhKeyCheck{read_block<crypto::CheckValue>(r)};
    case MessageTag::PairComplete: return msg::PairComplete{};
    case MessageTag::Abort: {
      auto reason = r.u8();
      if (reason > static_cast<std::uint8_t>(AbortReason::PeerAborted)) {
        throw Error(ErrorCode::MalformedMessage, "bad abort reason");
      }
      return msg::Abort{static_cast<AbortReason>(reason)};
    }
  }
  throw Error(ErrorCode::MalformedMessage, "unknown message tag");
}

}  // namespace

PairingMessage decode(ByteSpan wire) {
  try {
    ByteReader r(wire);
    auto tag = r.u8();
    auto len = r.u16();
    if (tag < 0x01 || tag > 0x07) throw Error(ErrorCode::MalformedMessage, "unknown message tag");
    if (r.remaining() != len) throw Error(ErrorCode::MalformedMessage, "length field mismatch");
    ByteReader body(r.take(len));
    auto m = decode_body(static_cast<MessageTag>(tag), body);
    if (body.remaining() != 0) throw Error(ErrorCode::MalformedMessage, "trailing payload bytes");
    return m;
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::MalformedMessage, "truncated message");
  }
}

}  // namespace ssp::pairing
