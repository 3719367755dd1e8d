// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vasc/aead.hpp"
#include "vasc/bloom.hpp"
#include "vasc/bytes.hpp"
#include "vasc/crypto_ctx.hpp"
#include "vasc/errors.hpp"
#include "vasc/hash.hpp"
#include "vasc/rng.hpp"
#include "vasc/signature.hpp"
#include "vasc/timestamp.hpp"

// Smart-card scheme: hash-chain pseudonyms with a trusted authority, roadside
// units, and on-board units. A vehicle registers once, then authenticates per
// RSU range under single-use pseudonyms aid_i = h(k_r, i); traffic messages
// are keyed-hash tagged under the per-range session key; RSUs vouch for
// validated messages via signed bloom-filter notifications.
namespace vasc::proposed {

struct VehicleId {
    Bytes bytes;
    auto operator<=>(const VehicleId&) const = default;
    std::string hex() const { return to_hex(ByteView(bytes)); }
};

// What the vehicle owner holds: identity plus the current password.
struct SmartCard {
    VehicleId id;
    Bytes pw;
};

// Secrets installed into the on-board unit at registration. masked_key is
// long_term_key xor h(password), so the unit never stores the password.
struct ObuProvision {
    VehicleId id;
    SymmetricKey long_term_key;
    Digest masked_key;
    std::map<Bytes, Bytes> rsu_public_keys;
};

struct RegistrationRecord {
    VehicleId id;
    Digest expected_aid;
    std::optional<Digest> prev_aid;
    std::uint64_t counter = 1;
    bool revoked = false;
};

struct AuthRequest {
    Digest aid;
    Timestamp t;
    Digest uac;

    Bytes serialize() const;
    static AuthRequest deserialize(ByteView frame);
};

// Travels only on the TA-RSU secure channel: carries the plaintext session
// key for the RSU alongside the OBU-bound ciphertext.
struct TaAuthResponse {
    Digest aid;
    SymmetricKey session_key;
    Ciphertext session_key_enc;
    Digest response_tag;
    VehicleId id;

    Bytes serialize() const;
    static TaAuthResponse deserialize(ByteView body);
};

// The broadcast projection: session key and identity stripped.
struct RsuAuthResponse {
    Digest aid;
    Ciphertext session_key_enc;
    Digest response_tag;

    Bytes serialize() const;
    static RsuAuthResponse deserialize(ByteView frame);
};

struct AuthListEntry {
    VehicleId id;
    Digest aid;
    SymmetricKey session_key;
    Timestamp expires_at;
};

struct TrafficMessage {
    Timestamp t2;
    Bytes m;
    Digest mac;

    Bytes serialize() const;
    static TrafficMessage deserialize(ByteView frame);
};

struct MessageLogEntry {
    Timestamp t2;
    Bytes m;
    VehicleId id;
};

struct Notification {
    Bytes rsu_id;
    Timestamp issued_at;
    BloomFilter filter;
    Bytes signature;

    // Field encoding the signature covers: rsu_id, issued_at, filter.
    Bytes signed_payload() const;
    Bytes serialize() const;
    static Notification deserialize(ByteView frame);
};

enum class PeerVerdict {
    kValid,
    // Not in this notification's filter; the verifier waits for the next one.
    kUnknown,
};

class Ta {
  public:
    Ta(std::array<std::uint8_t, 32> master_secret, std::uint64_t freshness_window_ms);

    // Issues a card and provisioning payload; the registration list gains a
    // record at counter 1. Revoked identities may not re-register.
    std::pair<SmartCard, ObuProvision> register_vehicle(const VehicleId& id, ByteView pw);

    // Validates a pseudonym authentication request and advances the chain.
    // Check order: freshness, pseudonym lookup, revocation, authenticator.
    // A request matching a record's prev_aid (retry after a lost response)
    // is honored without advancing the chain again.
    TaAuthResponse handle_auth(const AuthRequest& req, Timestamp now, Rng& rng);

    // Forward-only: blocks future authentications, leaves live sessions.
    void revoke(const VehicleId& id);

    void add_rsu(Bytes rsu_id, Bytes public_key);
    const std::map<Bytes, Bytes>& rsu_directory() const { return rsu_keys_; }

    const std::vector<RegistrationRecord>& registration_list() const { return records_; }
    // Replaces the registration list (e.g. loaded from disk) and rebuilds
    // the pseudonym index.
    void set_registration_list(std::vector<RegistrationRecord> records);

    CryptoCtx& crypto() { return crypto_; }

  private:
    SymmetricKey derive_long_term_key(const VehicleId& id);
    RegistrationRecord* find_by_aid(const Digest& aid);
    void index_record(std::size_t idx);

    std::array<std::uint8_t, 32> master_secret_;
    std::uint64_t freshness_window_ms_;
    CryptoCtx crypto_;
    std::vector<RegistrationRecord> records_;
    std::map<VehicleId, std::size_t> by_id_;
    std::unordered_map<Digest, std::size_t, DigestHasher> by_aid_;
    // Timestamp of each identity's last honored request; lets the retry
    // lookback refuse exact replays. In-memory only, not persisted.
    std::map<VehicleId, std::uint64_t> last_request_ms_;
    std::map<Bytes, Bytes> rsu_keys_;
};

class Rsu {
  public:
    Rsu(Bytes id, SignatureKeyPair keys, std::uint64_t freshness_window_ms,
        std::uint64_t auth_ttl_ms);

    // Accepts a session announcement from the TA (secure channel) and
    // returns the broadcast projection. Performs no priced crypto.
    RsuAuthResponse accept_ta_response(const TaAuthResponse& resp, Timestamp now);

    // Validates a traffic message against the session list and logs it.
    // Returns the sender's identity (known to the RSU, never broadcast).
    VehicleId verify_message(const TrafficMessage& tm, Timestamp now);

    // Signs a bloom filter over every message validated since the last
    // notification and clears that buffer.
    Notification emit_notification(Timestamp now, double fp_target);

    // Traceability: identity behind an already-validated message.
    VehicleId report_malicious(Timestamp t2, ByteView m) const;

    const Bytes& id() const { return id_; }
    const Bytes& public_key() const { return keys_.public_key; }
    const std::vector<AuthListEntry>& auth_list() const { return auth_list_; }
    const std::vector<MessageLogEntry>& message_log() const { return message_log_; }
    std::size_t pending_notification_count() const { return notify_buffer_.size(); }
    void set_auth_list(std::vector<AuthListEntry> entries);
    void set_message_log(std::vector<MessageLogEntry> entries);

    CryptoCtx& crypto() { return crypto_; }

  private:
    Bytes id_;
    SignatureKeyPair keys_;
    std::uint64_t freshness_window_ms_;
    std::uint64_t auth_ttl_ms_;
    CryptoCtx crypto_;
    std::vector<AuthListEntry> auth_list_;
    std::vector<MessageLogEntry> message_log_;
    std::set<std::pair<std::uint64_t, Bytes>> seen_;
    std::vector<Digest> notify_buffer_;
};

class Obu {
  public:
    explicit Obu(ObuProvision provision);

    // Smart-card login: h(pw) must equal masked_key xor long_term_key.
    void login(const SmartCard& card, ByteView pw_input);
    bool logged_in() const { return logged_in_; }

    // Starts (or retries) an authentication round under the current counter.
    // Costs 2 hashes; the third of the role's 3 is spent in complete_auth.
    AuthRequest make_auth_request(Timestamp now);

    // Verifies the response tag against the pending request, decrypts the
    // session key, and advances the local counter.
    SymmetricKey complete_auth(const RsuAuthResponse& resp);

    TrafficMessage sign_message(ByteView m, Timestamp now);

    // Checks a peer's traffic message against an RSU notification.
    PeerVerdict verify_peer_message(const TrafficMessage& tm, const Notification& note);

    // Local-only: re-masks the stored key under the new password.
    void change_password(SmartCard& card, const VehicleId& id, ByteView old_pw,
                         ByteView new_pw);

    const VehicleId& id() const { return id_; }
    std::uint64_t counter() const { return counter_; }
    const std::optional<SymmetricKey>& session_key() const { return session_key_; }
    bool has_pending() const { return pending_.has_value(); }
    void install_rsu_keys(std::map<Bytes, Bytes> keys);

    CryptoCtx& crypto() { return crypto_; }

  private:
    void require_login() const;

    VehicleId id_;
    SymmetricKey long_term_key_;
    Digest masked_key_;
    std::uint64_t counter_ = 1;
    bool logged_in_ = false;
    std::optional<SymmetricKey> session_key_;
    struct Pending {
        std::uint64_t counter;
        Timestamp t;
        Digest aid;
    };
    std::optional<Pending> pending_;
    std::map<Bytes, Bytes> rsu_keys_;
    CryptoCtx crypto_;
};

}  // namespace vasc::proposed
