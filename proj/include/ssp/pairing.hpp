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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ssp/bytes.hpp"
#include "ssp/crypto.hpp"
#include "ssp/oob_payload.hpp"
#include "ssp/rng.hpp"

namespace ssp::pairing {

// Wire values follow the HCI IO_Capability encoding.
enum class IoCapability : std::uint8_t {
  DisplayOnly = 0,
  DisplayYesNo = 1,
  KeyboardOnly = 2,
  NoInputNoOutput = 3,
  KeyboardDisplay = 4,
};

inline constexpr std::array<IoCapability, 5> kAllIoCapabilities = {
    IoCapability::DisplayOnly, IoCapability::DisplayYesNo, IoCapability::KeyboardOnly,
    IoCapability::NoInputNoOutput, IoCapability::KeyboardDisplay};

std::string_view to_string(IoCapability io);
std::optional<IoCapability> parse_io_capability(std::string_view text);

constexpr bool has_display(IoCapability io) {
  return io == IoCapability::DisplayOnly || io == IoCapability::DisplayYesNo ||
         io == IoCapability::KeyboardDisplay;
}
constexpr bool has_keyboard(IoCapability io) {
  return io == IoCapability::KeyboardOnly || io == IoCapability::KeyboardDisplay;
}
// Can show six digits and take a yes/no answer.
constexpr bool can_confirm(IoCapability io) {
  return io == IoCapability::DisplayYesNo || io == IoCapability::KeyboardDisplay;
}

// Byte fed to f3: IO capability in the low nibble, OOB flag in bit 4.
constexpr std::uint8_t encode_io_caps(IoCapability io, bool oob) {
  return static_cast<std::uint8_t>((static_cast<std::uint8_t>(io) & 0x0F) | (oob ? 0x10 : 0x00));
}

enum class AssociationModel : std::uint8_t {
  NumericComparison,
  JustWorks,
  OutOfBand,
  PasskeyEntry,
};

std::string_view to_string(AssociationModel model);

struct SecurityPolicy {
  bool allow_just_works = true;
  bool require_oob = false;
  bool require_mitm_protection = false;
  // Models a vigilant user who knows what the peer should be; a different
  // IO claim aborts the pairing.
  std::optional<IoCapability> expected_peer_io;
};

struct DeviceConfig {
  BdAddr address;
  IoCapability io = IoCapability::DisplayYesNo;
  bool oob_available = false;
  SecurityPolicy policy;
  // Passkey to display in Passkey Entry; drawn from the session RNG if unset.
  std::optional<std::uint32_t> passkey;
};

struct PolicyReject {
  std::string reason;
  friend bool operator==(const PolicyReject&, const PolicyReject&) = default;
};

using ModelSelection = std::variant<AssociationModel, PolicyReject>;

// Symmetric in (io_a, oob_a) <-> (io_b, oob_b). OOB wins whenever both
// sides have it.
ModelSelection select_association_model(IoCapability io_a, IoCapability io_b, bool oob_a,
                                        bool oob_b, const SecurityPolicy& policy);

// In Passkey Entry, whether a device with `own` IO types the passkey (true)
// or displays it (false) when paired with `peer`.
bool passkey_input_side(IoCapability own, IoCapability peer);

enum class Role : std::uint8_t { Initiator, Responder };

enum class SessionState : std::uint8_t {
  Idle,
  PublicKeySent,
  Stage1InProgress,
  Stage1Done,
  Stage2InProgress,
  LinkKeyReady,
  Encrypted,
  Aborted,
};

enum class AbortReason : std::uint8_t {
  None = 0,
  PolicyReject = 1,
  CommitmentMismatch = 2,
  CheckValueMismatch = 3,
  UserRejected = 4,
  ProtocolViolation = 5,
  MissingOob = 6,
  InvalidPublicKey = 7,
  LinkLoss = 8,
  PeerAborted = 9,
};

std::string_view to_string(Role role);
std::string_view to_string(SessionState state);
std::string_view to_string(AbortReason reason);

namespace msg {
struct IoCapabilityExchange {
  IoCapability io;
  bool oob;
  friend bool operator==(const IoCapabilityExchange&, const IoCapabilityExchange&) = default;
};
struct PublicKeyX {
  crypto::PublicPoint point;
  friend bool operator==(const PublicKeyX&, const PublicKeyX&) = default;
};
struct CommitmentMsg {
  crypto::Commitment value;
  friend bool operator==(const CommitmentMsg&, const CommitmentMsg&) = default;
};
struct NonceReveal {
  crypto::Nonce value;
  friend bool operator==(const NonceReveal&, const NonceReveal&) = default;
};
struct DhKeyCheck {
  crypto::CheckValue value;
  friend bool operator==(const DhKeyCheck&, const DhKeyCheck&) = default;
};
struct PairComplete {
  friend bool operator==(const PairComplete&, const PairComplete&) = default;
};
struct Abort {
  AbortReason reason;
  friend bool operator==(const Abort&, const Abort&) = default;
};
}  // namespace msg

using PairingMessage = std::variant<msg::IoCapabilityExchange, msg::PublicKeyX, msg::CommitmentMsg,
                                    msg::NonceReveal, msg::DhKeyCheck, msg::PairComplete, msg::Abort>;

enum class MessageTag : std::uint8_t {
  IoCapabilityExchange = 0x01,
  PublicKeyX = 0x02,
  Commitment = 0x03,
  NonceReveal = 0x04,
  DhKeyCheck = 0x05,
  PairComplete = 0x06,
  Abort = 0x07,
};

MessageTag tag_of(const PairingMessage& m);
std::string_view to_string(MessageTag tag);

// tag(1) || length(2, big-endian) || payload. Points are x || y.
Bytes encode(const PairingMessage& m);
// Throws Error(MalformedMessage) on unknown tags or length mismatches.
PairingMessage decode(ByteSpan wire);

struct Confirm {
  bool yes;
};
struct PasskeyInput {
  std::uint32_t value;
};
struct NoInteraction {};

using UserDecision = std::variant<NoInteraction, Confirm, PasskeyInput>;

struct UserPromptRequest {
  enum class Kind : std::uint8_t { ConfirmValue, DisplayPasskey, EnterPasskey };
  Kind kind;
  std::uint32_t value = 0;  // six-digit number for ConfirmValue / DisplayPasskey
};

std::string_view to_string(UserPromptRequest::Kind kind);

// Host-side events mirrored from HCI for the simulation log.
enum class LogEvent : std::uint8_t {
  SimplePairingComplete,
  LinkKeyNotification,
  AuthenticationComplete,
  EncryptionChange,
};

std::string_view to_string(LogEvent event);

struct TranscriptEntry {
  bool inbound;
  Bytes wire;
};

struct StepResult {
  std::vector<PairingMessage> outbound;
  std::vector<UserPromptRequest> prompts;
};

struct SessionOptions {
  // When false, an OutOfBand session without the peer's payload proceeds
  // with r_peer = 0 instead of aborting with MissingOob. Only the attacker
  // runs sessions this way.
  bool require_peer_oob = true;
};

class PairingSession;

struct StartResult;

// Generates the key pair, nonce and randomizers for a fresh session. An
// initiator emits IoCapabilityExchange then PublicKeyX; a responder emits
// only its IoCapabilityExchange and sends its key once the initiator's
// arrives.
StartResult start_pairing(const DeviceConfig& config, BdAddr peer_address, Role role, Rng& rng,
                          const SessionOptions& options = {});

// As above with a caller-supplied key pair. The pair is not checked for
// consistency, which lets tests build a party that lacks its private key.
StartResult start_pairing_with_keys(const DeviceConfig& config, BdAddr peer_address, Role role,
                                    const crypto::KeyPair& keys, Rng& rng,
                                    const SessionOptions& options = {});

class PairingSession {
 public:
  // Feeds one inbound message and/or a user decision. Any protocol failure
  // moves the session to Aborted and queues an Abort message for the peer.
  // `peer_oob` is latched on first use.
  StepResult step(const std::optional<PairingMessage>& inbound, const UserDecision& decision = {},
                  const oob::OobPayload* peer_oob = nullptr);

  // Verifies the peer's f3 check value and derives the link key. Called by
  // step() once stage 2 has exchanged checks; throws Error(NotReady) when
  // invoked earlier. A mismatch aborts with CheckValueMismatch.
  StepResult finalize_stage2();

  // LinkKeyReady -> Encrypted; throws Error(NotReady) from any other state.
  void enable_encryption();

  // Local abort with no message to the peer (e.g. supervision timeout).
  void abort_silently(AbortReason reason);

  Role role() const { return role_; }
  SessionState state() const { return state_; }
  bool terminal() const {
    return state_ == SessionState::Aborted || state_ == SessionState::LinkKeyReady ||
           state_ == SessionState::Encrypted;
  }
  const DeviceConfig& config() const { return config_; }
  BdAddr address() const { return config_.address; }
  BdAddr peer_address() const { return peer_address_; }
  std::optional<AssociationModel> model() const { return model_; }
  std::optional<IoCapability> peer_io() const { return peer_io_; }
  const crypto::KeyPair& own_keys() const { return own_keys_; }
  const std::optional<crypto::PublicPoint>& peer_public() const { return peer_public_; }
  const crypto::Nonce& own_nonce() const { return n_own_; }
  const std::optional<crypto::Nonce>& peer_nonce() const { return n_peer_; }
  const std::optional<crypto::DhKey>& dh_key() const { return dh_; }
  const std::optional<crypto::LinkKey>& link_key() const { return link_key_; }
  // Randomizer this device would publish over OOB.
  const crypto::RandomizerR& oob_randomizer() const { return oob_r_; }
  std::optional<std::uint32_t> displayed_value() const { return displayed_; }
  AbortReason abort_reason() const { return abort_reason_; }
  AbortReason peer_abort_reason() const { return peer_abort_reason_; }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  const std::vector<LogEvent>& events() const { return events_; }

 private:
  friend StartResult start_pairing_with_keys(const DeviceConfig&, BdAddr, Role,
                                             const crypto::KeyPair&, Rng&, const SessionOptions&);

  PairingSession() = default;

  void handle_message(const PairingMessage& m, StepResult& out);
  void handle_decision(const UserDecision& d, StepResult& out);
  void advance(StepResult& out);
  bool advance_once(StepResult& out);
  bool advance_stage1(StepResult& out);
  void send(PairingMessage m, StepResult& out);
  void abort(AbortReason reason, StepResult& out);
  void on_public_key(const crypto::PublicPoint& pk, StepResult& out);

  const crypto::PublicPoint& initiator_key() const;
  const crypto::PublicPoint& responder_key() const;
  const crypto::Nonce& initiator_nonce() const;
  const crypto::Nonce& responder_nonce() const;
  crypto::CheckValue own_check() const;
  crypto::CheckValue expected_peer_check() const;

  DeviceConfig config_;
  SessionOptions options_;
  BdAddr peer_address_;
  Role role_ = Role::Initiator;
  SessionState state_ = SessionState::Idle;

  std::optional<AssociationModel> model_;
  std::optional<IoCapability> peer_io_;
  bool peer_oob_flag_ = false;

  crypto::KeyPair own_keys_;
  std::optional<crypto::PublicPoint> peer_public_;
  crypto::Nonce n_own_;
  std::optional<crypto::Nonce> n_peer_;
  crypto::RandomizerR oob_r_;
  crypto::RandomizerR r_own_;
  crypto::RandomizerR r_peer_;
  std::optional<crypto::Commitment> c_peer_;
  std::optional<crypto::DhKey> dh_;
  std::optional<crypto::LinkKey> link_key_;
  std::optional<oob::OobPayload> peer_oob_payload_;

  std::uint32_t drawn_passkey_ = 0;
  std::optional<std::uint32_t> passkey_;
  bool passkey_prompted_ = false;
  std::optional<std::uint32_t> displayed_;
  std::optional<UserPromptRequest::Kind> awaiting_;
  bool user_confirmed_ = false;

  bool commit_sent_ = false;
  bool nonce_sent_ = false;
  bool own_check_sent_ = false;
  bool pair_complete_received_ = false;
  std::optional<crypto::CheckValue> pending_peer_check_;

  AbortReason abort_reason_ = AbortReason::None;
  AbortReason peer_abort_reason_ = AbortReason::None;
  std::vector<TranscriptEntry> transcript_;
  std::vector<LogEvent> events_;
};

struct StartResult {
  PairingSession session;
  std::vector<PairingMessage> outbound;
};

}  // namespace ssp::pairing
