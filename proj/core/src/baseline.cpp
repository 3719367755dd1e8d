// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/baseline.hpp"

#include <algorithm>
#include <cstring>

#include "vasc/wire.hpp"

namespace vasc::baseline {

namespace {

ByteView view32(const MaskedId& a) {
    return ByteView(a.data(), a.size());
}

MaskedId read32(ByteView raw) {
    MaskedId out{};
    std::memcpy(out.data(), raw.data(), out.size());
    return out;
}

Bytes timestamp_bytes(Timestamp t) {
    return u64_be(t.ms);
}

}  // namespace

MaskedId pad_id(const VehicleId& id) {
    MaskedId out{};
    const std::size_t n = std::min(id.bytes.size(), out.size());
    std::memcpy(out.data(), id.bytes.data(), n);
    return out;
}

// ---------------------------------------------------------------------------
// Wire formats.

Bytes AuthRequest::serialize(const SystemParams& params) const {
    ByteWriter w;
    w.tag(WireTag::kBaselineAuthRequest);
    w.var(ByteView(params.element_bytes(ephemeral)));
    w.raw(view32(aid));
    w.digest(didv);
    w.digest(cv);
    w.u64(t.ms);
    return w.take();
}

AuthRequest AuthRequest::deserialize(ByteView frame) {
    ByteReader r(frame);
    if (r.tag() != WireTag::kBaselineAuthRequest) {
        fail(Err::kMalformedMessage, "not a baseline AuthRequest frame");
    }
    AuthRequest req;
    req.ephemeral = bigint_from_bytes(r.var());
    req.aid = read32(r.raw(32));
    req.didv = r.digest();
    req.cv = r.digest();
    req.t = Timestamp{r.u64()};
    r.expect_end();
    return req;
}

Bytes ForwardedRequest::serialize(const SystemParams& params) const {
    ByteWriter w;
    w.tag(WireTag::kBaselineForwarded);
    w.var(ByteView(rsu_id));
    w.var(ByteView(request.serialize(params)));
    return w.take();
}

ForwardedRequest ForwardedRequest::deserialize(ByteView frame) {
    ByteReader r(frame);
    if (r.tag() != WireTag::kBaselineForwarded) {
        fail(Err::kMalformedMessage, "not a forwarded baseline request");
    }
    ForwardedRequest fwd;
    ByteView id = r.var();
    fwd.rsu_id.assign(id.begin(), id.end());
    fwd.request = AuthRequest::deserialize(r.var());
    r.expect_end();
    return fwd;
}

Bytes AuthResponse::serialize(const SystemParams& params) const {
    ByteWriter w;
    w.tag(WireTag::kBaselineAuthResponse);
    w.raw(view32(aid));
    w.digest(confirm);
    w.var(ByteView(params.element_bytes(ta_ephemeral)));
    return w.take();
}

AuthResponse AuthResponse::deserialize(ByteView frame) {
    ByteReader r(frame);
    if (r.tag() != WireTag::kBaselineAuthResponse) {
        fail(Err::kMalformedMessage, "not a baseline AuthResponse frame");
    }
    AuthResponse resp;
    resp.aid = read32(r.raw(32));
    resp.confirm = r.digest();
    resp.ta_ephemeral = bigint_from_bytes(r.var());
    r.expect_end();
    return resp;
}

// ---------------------------------------------------------------------------
// Trusted authority.

Ta::Ta(SystemParams params, TaGroupSecrets secrets, std::uint64_t freshness_window_ms)
    : params_(std::move(params)),
      secrets_(std::move(secrets)),
      freshness_window_ms_(freshness_window_ms) {}

Card Ta::register_vehicle(const VehicleId& id) {
    if (registered_.contains(id)) {
        fail(Err::kDuplicateIdentity, "identity already registered");
    }
    registered_.insert(id);
    const MaskedId padded = pad_id(id);
    const Bytes masked = crypto_.xor_bytes(view32(padded), ByteView(secrets_.s.data(), 32));
    const Digest k = crypto_.h0({ByteView(masked)});
    return Card{id, k, params_};
}

std::pair<AuthResponse, SymmetricKey> Ta::handle_auth(const AuthRequest& req,
                                                      Timestamp now, Rng& rng) {
    if (!is_fresh(req.t, now, freshness_window_ms_)) {
        fail(Err::kStaleTimestamp, "request timestamp outside freshness window");
    }

    const Bigint shared_e = mod_exp(crypto_, req.ephemeral, secrets_.x, params_.p);
    const Bytes e_bytes = params_.element_bytes(shared_e);
    const Digest e_mask = crypto_.h0({ByteView(e_bytes)});
    const Bytes id_masked = crypto_.xor_bytes(view32(req.aid), e_mask.view());
    const Bytes k_pre =
        crypto_.xor_bytes(ByteView(id_masked), ByteView(secrets_.s.data(), 32));
    const Digest k = crypto_.h0({ByteView(k_pre)});

    const Digest didv = crypto_.h0({k.view(), ByteView(e_bytes)});
    if (didv != req.didv) {
        fail(Err::kBadDidv, "identity verifier mismatch");
    }
    const Digest cv = crypto_.h0({view32(req.aid), req.didv.view(), ByteView(e_bytes),
                                  ByteView(timestamp_bytes(req.t))});
    if (cv != req.cv) {
        fail(Err::kBadCv, "request verifier mismatch");
    }

    const Bigint beta = random_exponent(rng, params_.p);
    const Bigint ta_ephemeral = mod_exp(crypto_, params_.g, beta, params_.p);
    const Bigint shared = mod_exp(crypto_, req.ephemeral, beta, params_.p);
    const Bytes shared_bytes = params_.element_bytes(shared);
    const Digest session = crypto_.h1({ByteView(shared_bytes)});
    const Digest confirm =
        crypto_.h1({ByteView(shared_bytes), ByteView(e_bytes), k.view()});

    return {AuthResponse{req.aid, confirm, ta_ephemeral},
            SymmetricKey::from_bytes(session.view())};
}

// ---------------------------------------------------------------------------
// Roadside unit.

Rsu::Rsu(Bytes id, std::uint64_t freshness_window_ms)
    : id_(std::move(id)), freshness_window_ms_(freshness_window_ms) {}

ForwardedRequest Rsu::forward(const AuthRequest& req, Timestamp now) {
    if (!is_fresh(req.t, now, freshness_window_ms_)) {
        fail(Err::kStaleTimestamp, "request timestamp outside freshness window");
    }
    return ForwardedRequest{id_, req};
}

// ---------------------------------------------------------------------------
// On-board unit.

Obu::Obu(Card card) : card_(std::move(card)) {}

AuthRequest Obu::make_request(Rng& rng, Timestamp now) {
    const SystemParams& params = card_.params;
    const Bigint alpha = random_exponent(rng, params.p);
    const Bigint ephemeral = mod_exp(crypto_, params.g, alpha, params.p);
    const Bigint shared_e = mod_exp(crypto_, params.y, alpha, params.p);
    const Bytes e_bytes = params.element_bytes(shared_e);

    const Digest e_mask = crypto_.h0({ByteView(e_bytes)});
    const MaskedId padded = pad_id(card_.id);
    const Bytes aid_bytes =
        crypto_.xor_bytes(ByteView(padded.data(), padded.size()), e_mask.view());
    const MaskedId aid = read32(ByteView(aid_bytes));
    const Digest didv = crypto_.h0({card_.k.view(), ByteView(e_bytes)});
    const Digest cv = crypto_.h0(
        {view32(aid), didv.view(), ByteView(e_bytes), ByteView(timestamp_bytes(now))});

    pending_ = Pending{alpha, shared_e, aid, now};
    return AuthRequest{ephemeral, aid, didv, cv, now};
}

SymmetricKey Obu::complete(const AuthResponse& resp) {
    if (!pending_ || pending_->aid != resp.aid) {
        fail(Err::kNoPendingRequest, "no pending request for this masked identity");
    }
    const SystemParams& params = card_.params;
    const Bigint shared = mod_exp(crypto_, resp.ta_ephemeral, pending_->alpha, params.p);
    const Bytes shared_bytes = params.element_bytes(shared);
    const Bytes e_bytes = params.element_bytes(pending_->shared_e);
    const Digest confirm =
        crypto_.h1({ByteView(shared_bytes), ByteView(e_bytes), card_.k.view()});
    if (confirm != resp.confirm) {
        fail(Err::kBadConfirmation, "confirmation hash mismatch");
    }
    const Digest session = crypto_.h1({ByteView(shared_bytes)});
    session_key_ = SymmetricKey::from_bytes(session.view());
    pending_.reset();
    return *session_key_;
}

}  // namespace vasc::baseline
