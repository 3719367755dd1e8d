// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/proposed.hpp"

#include <algorithm>

#include "vasc/wire.hpp"

namespace vasc::proposed {

namespace {

Bytes counter_bytes(std::uint64_t counter) {
    return u64_be(counter);
}

Bytes timestamp_bytes(Timestamp t) {
    return u64_be(t.ms);
}

}  // namespace

// ---------------------------------------------------------------------------
// Wire formats. Fixed field order; digests are raw 32 bytes; variable-length
// fields carry an 8-byte big-endian length prefix.

Bytes AuthRequest::serialize() const {
    ByteWriter w;
    w.tag(WireTag::kAuthRequest);
    w.digest(aid);
    w.u64(t.ms);
    w.digest(uac);
    return w.take();
}

AuthRequest AuthRequest::deserialize(ByteView frame) {
    ByteReader r(frame);
    if (r.tag() != WireTag::kAuthRequest) {
        fail(Err::kMalformedMessage, "not an AuthRequest frame");
    }
    AuthRequest req;
    req.aid = r.digest();
    req.t = Timestamp{r.u64()};
    req.uac = r.digest();
    r.expect_end();
    return req;
}

Bytes TaAuthResponse::serialize() const {
    ByteWriter w;
    w.digest(aid);
    w.raw(session_key.view());
    w.var(ByteView(session_key_enc.serialize()));
    w.digest(response_tag);
    w.var(ByteView(id.bytes));
    return w.take();
}

TaAuthResponse TaAuthResponse::deserialize(ByteView body) {
    ByteReader r(body);
    TaAuthResponse resp;
    resp.aid = r.digest();
    resp.session_key = SymmetricKey::from_bytes(r.raw(kSymKeyLen));
    resp.session_key_enc = Ciphertext::deserialize(r.var());
    resp.response_tag = r.digest();
    ByteView id = r.var();
    resp.id.bytes.assign(id.begin(), id.end());
    r.expect_end();
    return resp;
}

Bytes RsuAuthResponse::serialize() const {
    ByteWriter w;
    w.tag(WireTag::kRsuAuthResponse);
    w.digest(aid);
    w.var(ByteView(session_key_enc.serialize()));
    w.digest(response_tag);
    return w.take();
}

RsuAuthResponse RsuAuthResponse::deserialize(ByteView frame) {
    ByteReader r(frame);
    if (r.tag() != WireTag::kRsuAuthResponse) {
        fail(Err::kMalformedMessage, "not an RsuAuthResponse frame");
    }
    RsuAuthResponse resp;
    resp.aid = r.digest();
    resp.session_key_enc = Ciphertext::deserialize(r.var());
    resp.response_tag = r.digest();
    r.expect_end();
    return resp;
}

Bytes TrafficMessage::serialize() const {
    ByteWriter w;
    w.tag(WireTag::kTrafficMessage);
    w.u64(t2.ms);
    w.var(ByteView(m));
    w.digest(mac);
    return w.take();
}

TrafficMessage TrafficMessage::deserialize(ByteView frame) {
    ByteReader r(frame);
    if (r.tag() != WireTag::kTrafficMessage) {
        fail(Err::kMalformedMessage, "not a TrafficMessage frame");
    }
    TrafficMessage tm;
    tm.t2 = Timestamp{r.u64()};
    ByteView payload = r.var();
    tm.m.assign(payload.begin(), payload.end());
    tm.mac = r.digest();
    r.expect_end();
    return tm;
}

Bytes Notification::signed_payload() const {
    ByteWriter w;
    w.var(ByteView(rsu_id));
    w.u64(issued_at.ms);
    w.var(ByteView(filter.serialize()));
    return w.take();
}

Bytes Notification::serialize() const {
    ByteWriter w;
    w.tag(WireTag::kNotification);
    w.raw(ByteView(signed_payload()));
    w.var(ByteView(signature));
    return w.take();
}

Notification Notification::deserialize(ByteView frame) {
    ByteReader r(frame);
    if (r.tag() != WireTag::kNotification) {
        fail(Err::kMalformedMessage, "not a Notification frame");
    }
    ByteView rsu_id = r.var();
    const Timestamp issued_at{r.u64()};
    BloomFilter filter = BloomFilter::deserialize(r.var());
    ByteView signature = r.var();
    r.expect_end();
    Notification note{Bytes(rsu_id.begin(), rsu_id.end()), issued_at, std::move(filter),
                      Bytes(signature.begin(), signature.end())};
    return note;
}

// ---------------------------------------------------------------------------
// Trusted authority.

Ta::Ta(std::array<std::uint8_t, 32> master_secret, std::uint64_t freshness_window_ms)
    : master_secret_(master_secret), freshness_window_ms_(freshness_window_ms) {}

SymmetricKey Ta::derive_long_term_key(const VehicleId& id) {
    const Digest d =
        crypto_.h({ByteView(id.bytes), ByteView(master_secret_.data(), 32)});
    return SymmetricKey::from_bytes(d.view());
}

void Ta::index_record(std::size_t idx) {
    by_aid_[records_[idx].expected_aid] = idx;
    if (records_[idx].prev_aid) {
        by_aid_[*records_[idx].prev_aid] = idx;
    }
}

RegistrationRecord* Ta::find_by_aid(const Digest& aid) {
    auto it = by_aid_.find(aid);
    if (it == by_aid_.end()) return nullptr;
    return &records_[it->second];
}

std::pair<SmartCard, ObuProvision> Ta::register_vehicle(const VehicleId& id, ByteView pw) {
    auto existing = by_id_.find(id);
    if (existing != by_id_.end()) {
        if (records_[existing->second].revoked) {
            fail(Err::kRevokedIdentity, "identity was revoked and may not re-register");
        }
        fail(Err::kDuplicateIdentity, "identity already registered");
    }

    const SymmetricKey long_term_key = derive_long_term_key(id);
    const Digest pw_hash = crypto_.h({pw});
    const Bytes masked =
        crypto_.xor_bytes(long_term_key.view(), pw_hash.view());
    const Digest expected_aid =
        crypto_.h({long_term_key.view(), ByteView(counter_bytes(1))});

    RegistrationRecord record{id, expected_aid, std::nullopt, 1, false};
    records_.push_back(record);
    by_id_[id] = records_.size() - 1;
    index_record(records_.size() - 1);

    SmartCard card{id, Bytes(pw.begin(), pw.end())};
    ObuProvision provision{id, long_term_key, Digest::from_bytes(ByteView(masked)),
                           rsu_keys_};
    return {std::move(card), std::move(provision)};
}

TaAuthResponse Ta::handle_auth(const AuthRequest& req, Timestamp now, Rng& rng) {
    if (!is_fresh(req.t, now, freshness_window_ms_)) {
        fail(Err::kStaleTimestamp, "request timestamp outside freshness window");
    }
    RegistrationRecord* record = find_by_aid(req.aid);
    if (record == nullptr) {
        fail(Err::kUnknownPseudonym, "pseudonym not in registration list");
    }
    if (record->revoked) {
        fail(Err::kRevoked, "identity revoked");
    }

    // A request under the previous pseudonym means the last response never
    // arrived; honor the retry, but an exact replay of the consumed request
    // (same timestamp, hence same authenticator) is refused.
    const bool is_retry = record->prev_aid && *record->prev_aid == req.aid;
    if (is_retry) {
        auto last = last_request_ms_.find(record->id);
        if (last != last_request_ms_.end() && last->second == req.t.ms) {
            fail(Err::kBadAuthenticator, "authenticator already consumed");
        }
    }

    const SymmetricKey long_term_key = derive_long_term_key(record->id);
    const Digest expected_uac = crypto_.h(
        {long_term_key.view(), req.aid.view(), ByteView(timestamp_bytes(req.t))});
    if (expected_uac != req.uac) {
        fail(Err::kBadAuthenticator, "authentication code mismatch");
    }

    SymmetricKey session_key;
    rng.fill(session_key.bytes.data(), session_key.bytes.size());
    const Ciphertext enc = crypto_.encrypt(long_term_key, session_key.view(), rng);
    const Digest response_tag = crypto_.h({long_term_key.view(),
                                           ByteView(timestamp_bytes(req.t)),
                                           ByteView(enc.serialize())});

    // A retried request is re-issued without advancing the chain again, so
    // OBU and TA counters reconverge once the response finally lands.
    if (!is_retry) {
        if (record->prev_aid) {
            by_aid_.erase(*record->prev_aid);
        }
        record->prev_aid = record->expected_aid;
        record->counter += 1;
        record->expected_aid =
            crypto_.h({long_term_key.view(), ByteView(counter_bytes(record->counter))});
        by_aid_[record->expected_aid] = by_id_[record->id];
    }
    last_request_ms_[record->id] = req.t.ms;

    return TaAuthResponse{req.aid, session_key, enc, response_tag, record->id};
}

void Ta::revoke(const VehicleId& id) {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) {
        fail(Err::kNotRegistered, "cannot revoke unknown identity");
    }
    records_[it->second].revoked = true;
}

void Ta::add_rsu(Bytes rsu_id, Bytes public_key) {
    rsu_keys_[std::move(rsu_id)] = std::move(public_key);
}

void Ta::set_registration_list(std::vector<RegistrationRecord> records) {
    records_ = std::move(records);
    by_id_.clear();
    by_aid_.clear();
    for (std::size_t i = 0; i < records_.size(); ++i) {
        by_id_[records_[i].id] = i;
        index_record(i);
    }
}

// ---------------------------------------------------------------------------
// Roadside unit.

Rsu::Rsu(Bytes id, SignatureKeyPair keys, std::uint64_t freshness_window_ms,
         std::uint64_t auth_ttl_ms)
    : id_(std::move(id)),
      keys_(std::move(keys)),
      freshness_window_ms_(freshness_window_ms),
      auth_ttl_ms_(auth_ttl_ms) {}

RsuAuthResponse Rsu::accept_ta_response(const TaAuthResponse& resp, Timestamp now) {
    auth_list_.push_back(AuthListEntry{resp.id, resp.aid, resp.session_key,
                                       Timestamp{now.ms + auth_ttl_ms_}});
    return RsuAuthResponse{resp.aid, resp.session_key_enc, resp.response_tag};
}

VehicleId Rsu::verify_message(const TrafficMessage& tm, Timestamp now) {
    if (!is_fresh(tm.t2, now, freshness_window_ms_)) {
        fail(Err::kStaleTimestamp, "traffic message timestamp outside freshness window");
    }
    if (seen_.contains({tm.t2.ms, tm.m})) {
        fail(Err::kDuplicateMessage, "traffic message already validated");
    }
    // Expired sessions drop off before the scan; their senders must
    // re-authenticate.
    std::erase_if(auth_list_,
                  [&](const AuthListEntry& e) { return e.expires_at < now; });

    for (const AuthListEntry& entry : auth_list_) {
        const Digest expected = crypto_.h({ByteView(timestamp_bytes(tm.t2)),
                                           ByteView(tm.m), entry.session_key.view()});
        if (expected == tm.mac) {
            message_log_.push_back(MessageLogEntry{tm.t2, tm.m, entry.id});
            seen_.insert({tm.t2.ms, tm.m});
            notify_buffer_.push_back(
                crypto_.h({ByteView(timestamp_bytes(tm.t2)), ByteView(tm.m)}));
            return entry.id;
        }
    }
    fail(Err::kNoMatchingSession, "no session key validates this message");
}

Notification Rsu::emit_notification(Timestamp now, double fp_target) {
    BloomFilter filter = BloomFilter::sized_for(notify_buffer_.size(), fp_target);
    for (const Digest& d : notify_buffer_) {
        filter.insert(d.view());
    }
    notify_buffer_.clear();
    Notification note{id_, now, std::move(filter), {}};
    note.signature = sign_detached(ByteView(keys_.secret_key), ByteView(note.signed_payload()));
    return note;
}

VehicleId Rsu::report_malicious(Timestamp t2, ByteView m) const {
    for (const MessageLogEntry& entry : message_log_) {
        if (entry.t2 == t2 && bytes_equal(ByteView(entry.m), m)) {
            return entry.id;
        }
    }
    fail(Err::kNotFound, "no validated message with that timestamp and payload");
}

void Rsu::set_auth_list(std::vector<AuthListEntry> entries) {
    auth_list_ = std::move(entries);
}

void Rsu::set_message_log(std::vector<MessageLogEntry> entries) {
    message_log_ = std::move(entries);
    seen_.clear();
    for (const MessageLogEntry& e : message_log_) {
        seen_.insert({e.t2.ms, e.m});
    }
}

// ---------------------------------------------------------------------------
// On-board unit.

Obu::Obu(ObuProvision provision)
    : id_(std::move(provision.id)),
      long_term_key_(provision.long_term_key),
      masked_key_(provision.masked_key),
      rsu_keys_(std::move(provision.rsu_public_keys)) {}

void Obu::require_login() const {
    if (!logged_in_) {
        fail(Err::kNotLoggedIn, "smart-card login required");
    }
}

void Obu::login(const SmartCard& card, ByteView pw_input) {
    if (card.id != id_) {
        fail(Err::kIdentityMismatch, "card does not belong to this unit");
    }
    const Bytes unmasked = crypto_.xor_bytes(masked_key_.view(), long_term_key_.view());
    const Digest pw_hash = crypto_.h({pw_input});
    if (!bytes_equal(ByteView(unmasked), pw_hash.view())) {
        fail(Err::kPasswordMismatch, "password check failed");
    }
    logged_in_ = true;
}

AuthRequest Obu::make_auth_request(Timestamp now) {
    require_login();
    const Digest aid =
        crypto_.h({long_term_key_.view(), ByteView(counter_bytes(counter_))});
    const Digest uac =
        crypto_.h({long_term_key_.view(), aid.view(), ByteView(timestamp_bytes(now))});
    pending_ = Pending{counter_, now, aid};
    return AuthRequest{aid, now, uac};
}

SymmetricKey Obu::complete_auth(const RsuAuthResponse& resp) {
    require_login();
    if (!pending_ || pending_->aid != resp.aid) {
        fail(Err::kNoPendingRequest, "no pending request for this pseudonym");
    }
    const Digest expected_tag =
        crypto_.h({long_term_key_.view(), ByteView(timestamp_bytes(pending_->t)),
                   ByteView(resp.session_key_enc.serialize())});
    if (expected_tag != resp.response_tag) {
        fail(Err::kBadResponseTag, "response tag mismatch");
    }
    const Bytes key_bytes = crypto_.decrypt(long_term_key_, resp.session_key_enc);
    session_key_ = SymmetricKey::from_bytes(ByteView(key_bytes));
    counter_ = pending_->counter + 1;
    pending_.reset();
    return *session_key_;
}

TrafficMessage Obu::sign_message(ByteView m, Timestamp now) {
    require_login();
    if (!session_key_) {
        fail(Err::kNoSession, "no session key; authenticate first");
    }
    const Digest mac = crypto_.h(
        {ByteView(timestamp_bytes(now)), m, session_key_->view()});
    return TrafficMessage{now, Bytes(m.begin(), m.end()), mac};
}

PeerVerdict Obu::verify_peer_message(const TrafficMessage& tm, const Notification& note) {
    auto it = rsu_keys_.find(note.rsu_id);
    if (it == rsu_keys_.end()) {
        fail(Err::kUnknownRsu, "no public key on file for this roadside unit");
    }
    if (!verify_detached(ByteView(it->second), ByteView(note.signed_payload()),
                         ByteView(note.signature))) {
        fail(Err::kBadNotificationSignature, "notification signature invalid");
    }
    const Digest key = crypto_.h({ByteView(timestamp_bytes(tm.t2)), ByteView(tm.m)});
    return note.filter.contains(key.view()) ? PeerVerdict::kValid : PeerVerdict::kUnknown;
}

void Obu::change_password(SmartCard& card, const VehicleId& id, ByteView old_pw,
                          ByteView new_pw) {
    if (card.id != id_ || id != id_) {
        fail(Err::kIdentityMismatch, "card does not belong to this unit");
    }
    const Bytes unmasked = crypto_.xor_bytes(masked_key_.view(), long_term_key_.view());
    const Digest old_hash = crypto_.h({old_pw});
    if (!bytes_equal(ByteView(unmasked), old_hash.view())) {
        fail(Err::kPasswordMismatch, "old password check failed");
    }
    const Digest new_hash = crypto_.h({new_pw});
    const Bytes masked = crypto_.xor_bytes(long_term_key_.view(), new_hash.view());
    masked_key_ = Digest::from_bytes(ByteView(masked));
    card.pw.assign(new_pw.begin(), new_pw.end());
}

void Obu::install_rsu_keys(std::map<Bytes, Bytes> keys) {
    rsu_keys_ = std::move(keys);
}

}  // namespace vasc::proposed
