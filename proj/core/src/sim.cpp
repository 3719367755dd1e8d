// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/sim.hpp"

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

#include "vasc/errors.hpp"
#include "vasc/wire.hpp"

namespace vasc::sim {

namespace {

using ordered_json = nlohmann::ordered_json;

// Peer traffic kept while waiting for the next notification. Bounded so a
// chatty neighbourhood cannot grow an OBU without limit.
constexpr std::size_t kPeerBufferCap = 4096;

}  // namespace

std::uint64_t SimConfig::effective_retry_timeout_ms() const {
    if (retry_timeout_ms != 0) {
        return retry_timeout_ms;
    }
    // Worst-case round trip: two wireless legs plus two secure legs.
    const std::uint64_t round_trip =
        2 * wireless_latency_ms.hi_ms + 2 * secure_latency_ms.hi_ms;
    return 2 * round_trip;
}

std::string_view origin_name(FrameOrigin origin) {
    switch (origin) {
        case FrameOrigin::kHonest: return "honest";
        case FrameOrigin::kReplay: return "replay";
        case FrameOrigin::kTamper: return "tamper";
        case FrameOrigin::kInject: return "inject";
    }
    return "honest";
}

std::string export_transcript(const Transcript& transcript) {
    std::string out;
    for (const auto& entry : transcript) {
        ordered_json line;
        line["at_ms"] = entry.at_ms;
        line["channel"] = entry.channel == Channel::kWireless ? "wireless" : "secure";
        line["src"] = entry.src;
        line["dst"] = entry.dst;
        line["payload"] = to_hex(ByteView(entry.payload));
        out += line.dump();
        out += '\n';
    }
    return out;
}

Simulator::Simulator(SimConfig config)
    : cfg_(config),
      master_rng_(config.seed),
      channel_rng_(master_rng_.fork("channel")),
      ta_rng_(master_rng_.fork("authority")) {
    if (cfg_.wireless_drop_rate < 0.0 || cfg_.wireless_drop_rate > 1.0) {
        fail(Err::kConfigError, "wireless_drop_rate must lie in [0, 1]");
    }
    if (cfg_.wireless_latency_ms.lo_ms > cfg_.wireless_latency_ms.hi_ms ||
        cfg_.secure_latency_ms.lo_ms > cfg_.secure_latency_ms.hi_ms) {
        fail(Err::kConfigError, "latency range lower bound exceeds upper bound");
    }
}

void Simulator::require_unique_name(const std::string& name) const {
    if (name == kBroadcast) {
        fail(Err::kConfigError, "'*' is reserved for broadcast");
    }
    if (kinds_.contains(name)) {
        fail(Err::kDuplicateIdentity, "entity name '" + name + "' already in use");
    }
}

std::string Simulator::add_ta(std::array<std::uint8_t, 32> master_secret) {
    if (ta_scheme_) {
        fail(Err::kDuplicateTa, "the simulation already has an authority");
    }
    const std::string name = "ta";
    require_unique_name(name);
    ta_name_ = name;
    ta_scheme_ = std::make_unique<proposed::Ta>(master_secret, cfg_.freshness_window_ms);
    kinds_[name] = Kind::kTa;
    stats_[name];
    return name;
}

std::string Simulator::add_rsu(const std::string& name) {
    if (!ta_scheme_) {
        fail(Err::kConfigError, "add the authority before roadside units");
    }
    require_unique_name(name);
    Rng unit_rng = master_rng_.fork("rsu:" + name);
    SignatureKeyPair keys = signature_keypair(unit_rng);
    RsuEntity ent;
    ent.scheme = std::make_unique<proposed::Rsu>(to_bytes(name), keys,
                                                 cfg_.freshness_window_ms,
                                                 cfg_.auth_ttl_ms);
    ent.base = std::make_unique<baseline::Rsu>(to_bytes(name), cfg_.freshness_window_ms);
    ta_scheme_->add_rsu(to_bytes(name), keys.public_key);
    // Units provisioned before this RSU existed get the new key pushed.
    for (auto& [obu_name, obu_ent] : obus_) {
        if (obu_ent.scheme) {
            obu_ent.scheme->install_rsu_keys(ta_scheme_->rsu_directory());
        }
    }
    rsus_.emplace(name, std::move(ent));
    kinds_[name] = Kind::kRsu;
    stats_[name];
    if (cfg_.notification_period_ms > 0) {
        Event timer;
        timer.type = Event::Type::kNotifyTimer;
        timer.at = now_ms_ + cfg_.notification_period_ms;
        timer.entity = name;
        schedule(std::move(timer));
    }
    return name;
}

std::string Simulator::add_obu(const std::string& name) {
    require_unique_name(name);
    ObuEntity ent;
    ent.rng = master_rng_.fork("obu:" + name);
    obus_.emplace(name, std::move(ent));
    kinds_[name] = Kind::kObu;
    stats_[name];
    return name;
}

void Simulator::enable_baseline(SystemParams params, TaGroupSecrets secrets) {
    if (!ta_scheme_) {
        fail(Err::kConfigError, "add the authority before installing group parameters");
    }
    baseline_ta_ = std::make_unique<baseline::Ta>(std::move(params), std::move(secrets),
                                                  cfg_.freshness_window_ms);
}

Simulator::ObuEntity& Simulator::obu_entity(const std::string& name) {
    auto it = obus_.find(name);
    if (it == obus_.end()) {
        fail(Err::kNotFound, "unknown on-board unit '" + name + "'");
    }
    return it->second;
}

Simulator::RsuEntity& Simulator::rsu_entity(const std::string& name) {
    auto it = rsus_.find(name);
    if (it == rsus_.end()) {
        fail(Err::kNotFound, "unknown roadside unit '" + name + "'");
    }
    return it->second;
}

EntityStats& Simulator::stats_for(const std::string& name) { return stats_[name]; }

void Simulator::log_error(const std::string& entity, const ProtocolError& err,
                          FrameOrigin origin) {
    log_error(entity, std::string(err_name(err.code())), err.what(), origin);
}

void Simulator::log_error(const std::string& entity, std::string code, std::string detail,
                          FrameOrigin origin) {
    stats_for(entity).errors.push_back(
        ErrorLogEntry{now_ms_, std::move(code), std::move(detail), origin});
}

void Simulator::register_vehicle(const std::string& obu, ByteView password) {
    auto& ent = obu_entity(obu);
    if (!ta_scheme_) {
        fail(Err::kConfigError, "no authority to register with");
    }
    auto [card, provision] =
        ta_scheme_->register_vehicle(proposed::VehicleId{to_bytes(obu)}, password);
    ent.card = std::move(card);
    ent.scheme = std::make_unique<proposed::Obu>(std::move(provision));
}

void Simulator::login(const std::string& obu, ByteView password) {
    auto& ent = obu_entity(obu);
    if (!ent.scheme || !ent.card) {
        fail(Err::kNotRegistered, "'" + obu + "' holds no card");
    }
    ent.scheme->login(*ent.card, password);
}

void Simulator::authenticate(const std::string& obu, const std::string& rsu) {
    auto& ent = obu_entity(obu);
    if (!ent.scheme) {
        fail(Err::kNotRegistered, "'" + obu + "' holds no card");
    }
    rsu_entity(rsu);
    ent.target_rsu = rsu;
    ent.generation += 1;
    ent.retries_left = cfg_.max_auth_retries;
    ent.awaiting = true;
    start_auth_attempt(obu, ent);
}

void Simulator::start_auth_attempt(const std::string& obu_name, ObuEntity& ent) {
    const proposed::AuthRequest req = ent.scheme->make_auth_request(Timestamp{now_ms_});
    ent.current_aid = req.aid;
    send_wireless(obu_name, ent.target_rsu, req.serialize());
    Event timer;
    timer.type = Event::Type::kRetryTimer;
    timer.at = now_ms_ + cfg_.effective_retry_timeout_ms();
    timer.entity = obu_name;
    timer.generation = ent.generation;
    schedule(std::move(timer));
}

void Simulator::send_traffic(const std::string& obu, ByteView message) {
    auto& ent = obu_entity(obu);
    if (!ent.scheme) {
        fail(Err::kNotRegistered, "'" + obu + "' holds no card");
    }
    const proposed::TrafficMessage tm = ent.scheme->sign_message(message, Timestamp{now_ms_});
    send_wireless(obu, std::string(kBroadcast), tm.serialize());
}

void Simulator::revoke(const std::string& obu) {
    if (!ta_scheme_) {
        fail(Err::kConfigError, "no authority holds the registration list");
    }
    ta_scheme_->revoke(proposed::VehicleId{to_bytes(obu)});
}

void Simulator::emit_notification(const std::string& rsu) {
    rsu_entity(rsu);
    emit_notification_frame(rsu);
}

void Simulator::emit_notification_frame(const std::string& rsu_name) {
    auto& ent = rsus_.at(rsu_name);
    const proposed::Notification note =
        ent.scheme->emit_notification(Timestamp{now_ms_}, cfg_.notification_fp_target);
    send_wireless(rsu_name, std::string(kBroadcast), note.serialize());
}

void Simulator::register_baseline(const std::string& obu) {
    auto& ent = obu_entity(obu);
    if (!baseline_ta_) {
        fail(Err::kConfigError, "baseline parameters not installed");
    }
    const baseline::Card card =
        baseline_ta_->register_vehicle(proposed::VehicleId{to_bytes(obu)});
    ent.base = std::make_unique<baseline::Obu>(card);
}

void Simulator::authenticate_baseline(const std::string& obu, const std::string& rsu) {
    auto& ent = obu_entity(obu);
    if (!ent.base) {
        fail(Err::kNotRegistered, "'" + obu + "' has no baseline registration");
    }
    rsu_entity(rsu);
    ent.baseline_target = rsu;
    ent.baseline_generation += 1;
    ent.baseline_retries_left = cfg_.max_auth_retries;
    ent.awaiting_baseline = true;
    start_baseline_attempt(obu, ent);
}

void Simulator::start_baseline_attempt(const std::string& obu_name, ObuEntity& ent) {
    const baseline::AuthRequest req = ent.base->make_request(ent.rng, Timestamp{now_ms_});
    ent.baseline_aid = req.aid;
    send_wireless(obu_name, ent.baseline_target, req.serialize(baseline_ta_->params()));
    Event timer;
    timer.type = Event::Type::kRetryTimer;
    timer.at = now_ms_ + cfg_.effective_retry_timeout_ms();
    timer.entity = obu_name;
    timer.generation = ent.baseline_generation;
    timer.baseline = true;
    schedule(std::move(timer));
}

void Simulator::adversary_replay(std::size_t index, Timestamp at) {
    if (index >= transcript_.size()) {
        fail(Err::kIndexOutOfRange, "transcript index out of range");
    }
    const TranscriptEntry& entry = transcript_[index];
    schedule_adversarial(entry.payload, entry.src, entry.dst, at, FrameOrigin::kReplay);
}

void Simulator::adversary_tamper(std::size_t index, std::size_t offset, std::uint8_t value,
                                 Timestamp at) {
    if (index >= transcript_.size()) {
        fail(Err::kIndexOutOfRange, "transcript index out of range");
    }
    const TranscriptEntry& entry = transcript_[index];
    if (offset >= entry.payload.size()) {
        fail(Err::kIndexOutOfRange, "byte offset beyond the captured frame");
    }
    Bytes copy = entry.payload;
    copy[offset] = value;
    schedule_adversarial(std::move(copy), entry.src, entry.dst, at, FrameOrigin::kTamper);
}

void Simulator::adversary_inject(Bytes raw, const std::string& dst, Timestamp at) {
    if (dst != kBroadcast) {
        auto it = kinds_.find(dst);
        if (it == kinds_.end()) {
            fail(Err::kNotFound, "unknown entity '" + dst + "'");
        }
        if (it->second == Kind::kTa) {
            fail(Err::kSecureChannelViolation,
                 "the authority is reachable only over the secure channel");
        }
    }
    schedule_adversarial(std::move(raw), "adversary", dst, at, FrameOrigin::kInject);
}

void Simulator::schedule_adversarial(Bytes payload, const std::string& src,
                                     const std::string& dst, Timestamp at,
                                     FrameOrigin origin) {
    if (at.ms < now_ms_) {
        fail(Err::kConfigError, "cannot schedule a delivery in the past");
    }
    const std::vector<std::string> receivers =
        dst == kBroadcast ? broadcast_receivers(src) : std::vector<std::string>{dst};
    for (const std::string& receiver : receivers) {
        Event ev;
        ev.type = Event::Type::kDeliver;
        ev.at = at.ms;
        ev.channel = Channel::kWireless;
        ev.src = src;
        ev.dst = receiver;
        ev.payload = payload;
        ev.origin = origin;
        schedule(std::move(ev));
    }
}

std::vector<std::string> Simulator::broadcast_receivers(const std::string& src) const {
    std::vector<std::string> out;
    for (const auto& [name, ent] : rsus_) {
        if (name != src) out.push_back(name);
    }
    for (const auto& [name, ent] : obus_) {
        if (name != src) out.push_back(name);
    }
    return out;
}

void Simulator::send_wireless(const std::string& src, const std::string& dst,
                              Bytes payload) {
    transcript_.push_back(
        TranscriptEntry{now_ms_, Channel::kWireless, src, dst, payload});
    const std::vector<std::string> receivers =
        dst == kBroadcast ? broadcast_receivers(src) : std::vector<std::string>{dst};
    for (const std::string& receiver : receivers) {
        const std::uint64_t latency = channel_rng_.between(
            cfg_.wireless_latency_ms.lo_ms, cfg_.wireless_latency_ms.hi_ms);
        const bool dropped = channel_rng_.unit() < cfg_.wireless_drop_rate;
        if (dropped) {
            stats_for(receiver).drops += 1;
            continue;
        }
        Event ev;
        ev.type = Event::Type::kDeliver;
        ev.at = now_ms_ + latency;
        ev.channel = Channel::kWireless;
        ev.src = src;
        ev.dst = receiver;
        ev.payload = payload;
        schedule(std::move(ev));
    }
}

void Simulator::send_secure(const std::string& src, const std::string& dst, Bytes payload,
                            FrameOrigin origin) {
    Event ev;
    ev.type = Event::Type::kDeliver;
    ev.at = now_ms_ +
            channel_rng_.between(cfg_.secure_latency_ms.lo_ms, cfg_.secure_latency_ms.hi_ms);
    ev.channel = Channel::kSecure;
    ev.src = src;
    ev.dst = dst;
    ev.payload = std::move(payload);
    ev.origin = origin;
    schedule(std::move(ev));
}

void Simulator::schedule(Event ev) {
    ev.seq = next_seq_++;
    queue_.push(std::move(ev));
}

SimStats Simulator::run_until(Timestamp t) {
    if (t.ms < now_ms_) {
        fail(Err::kConfigError, "the virtual clock cannot run backward");
    }
    while (!queue_.empty() && queue_.top().at <= t.ms) {
        Event ev = queue_.top();
        queue_.pop();
        now_ms_ = ev.at;
        dispatch(ev);
    }
    now_ms_ = t.ms;
    return stats();
}

void Simulator::dispatch(const Event& ev) {
    switch (ev.type) {
        case Event::Type::kRetryTimer:
            on_retry_timer(ev);
            return;
        case Event::Type::kNotifyTimer:
            on_notify_timer(ev);
            return;
        case Event::Type::kDeliver:
            break;
    }
    auto kind_it = kinds_.find(ev.dst);
    if (kind_it == kinds_.end()) {
        return;
    }
    stats_for(ev.dst).deliveries += 1;
    switch (kind_it->second) {
        case Kind::kTa:
            deliver_to_ta(ev);
            break;
        case Kind::kRsu:
            deliver_to_rsu(ev.dst, ev);
            break;
        case Kind::kObu:
            deliver_to_obu(ev.dst, ev);
            break;
    }
}

void Simulator::deliver_to_ta(const Event& ev) {
    try {
        const WireTag tag = peek_tag(ByteView(ev.payload));
        if (tag == WireTag::kAuthRequest) {
            const auto req = proposed::AuthRequest::deserialize(ByteView(ev.payload));
            const proposed::TaAuthResponse resp =
                ta_scheme_->handle_auth(req, Timestamp{now_ms_}, ta_rng_);
            stats_for(ta_name_).auth_successes += 1;
            // The response body has no wire tag of its own (it never travels
            // over the air); frame it for the authority channel.
            ByteWriter w;
            w.tag(WireTag::kSecureEnvelope);
            w.raw(ByteView(resp.serialize()));
            send_secure(ta_name_, ev.src, w.take(), FrameOrigin::kHonest);
        } else if (tag == WireTag::kBaselineForwarded) {
            if (!baseline_ta_) {
                fail(Err::kConfigError, "baseline parameters not installed");
            }
            const auto fwd = baseline::ForwardedRequest::deserialize(ByteView(ev.payload));
            auto [resp, key] =
                baseline_ta_->handle_auth(fwd.request, Timestamp{now_ms_}, ta_rng_);
            last_baseline_ta_key_ = key;
            stats_for(ta_name_).auth_successes += 1;
            send_secure(ta_name_, ev.src, resp.serialize(baseline_ta_->params()),
                        FrameOrigin::kHonest);
        }
    } catch (const ProtocolError& err) {
        stats_for(ta_name_).auth_failures += 1;
        log_error(ta_name_, err, ev.origin);
    }
}

void Simulator::deliver_to_rsu(const std::string& name, const Event& ev) {
    auto& ent = rsus_.at(name);
    try {
        const WireTag tag = peek_tag(ByteView(ev.payload));
        switch (tag) {
            case WireTag::kAuthRequest:
                // Pure relay toward the authority; preserves the origin so
                // the authority's log attributes adversarial frames.
                send_secure(name, ta_name_, ev.payload, ev.origin);
                break;
            case WireTag::kBaselineAuthRequest: {
                if (!baseline_ta_) {
                    fail(Err::kConfigError, "baseline parameters not installed");
                }
                const auto req = baseline::AuthRequest::deserialize(ByteView(ev.payload));
                const baseline::ForwardedRequest fwd =
                    ent.base->forward(req, Timestamp{now_ms_});
                send_secure(name, ta_name_, fwd.serialize(baseline_ta_->params()),
                            ev.origin);
                break;
            }
            case WireTag::kSecureEnvelope: {
                if (ev.channel != Channel::kSecure) {
                    // A session announcement must come from the authority,
                    // never off the air.
                    log_error(name, std::string(err_name(Err::kSecureChannelViolation)),
                              "session announcement arrived over the air", ev.origin);
                    break;
                }
                ByteReader r(ByteView(ev.payload));
                r.tag();
                const auto resp = proposed::TaAuthResponse::deserialize(r.rest());
                const proposed::RsuAuthResponse broadcast =
                    ent.scheme->accept_ta_response(resp, Timestamp{now_ms_});
                send_wireless(name, std::string(kBroadcast), broadcast.serialize());
                break;
            }
            case WireTag::kBaselineAuthResponse:
                // Relay the authority's answer into the air once; copies
                // overheard from sibling relays are not re-broadcast.
                if (ev.channel == Channel::kSecure) {
                    send_wireless(name, std::string(kBroadcast), ev.payload);
                }
                break;
            case WireTag::kTrafficMessage: {
                const auto tm = proposed::TrafficMessage::deserialize(ByteView(ev.payload));
                try {
                    ent.scheme->verify_message(tm, Timestamp{now_ms_});
                    stats_for(name).messages_validated += 1;
                } catch (const ProtocolError& err) {
                    stats_for(name).messages_rejected += 1;
                    log_error(name, err, ev.origin);
                }
                break;
            }
            default:
                // Overheard broadcasts addressed to peers.
                break;
        }
    } catch (const ProtocolError& err) {
        log_error(name, err, ev.origin);
    }
}

void Simulator::deliver_to_obu(const std::string& name, const Event& ev) {
    auto& ent = obus_.at(name);
    EntityStats& st = stats_for(name);
    try {
        const WireTag tag = peek_tag(ByteView(ev.payload));
        switch (tag) {
            case WireTag::kRsuAuthResponse: {
                const auto resp = proposed::RsuAuthResponse::deserialize(ByteView(ev.payload));
                if (!ent.scheme || !ent.awaiting || resp.aid != ent.current_aid) {
                    // Broadcast meant for some other unit: stay silent,
                    // unless an adversary aimed it here.
                    if (ev.origin != FrameOrigin::kHonest) {
                        log_error(name, std::string(err_name(Err::kNoPendingRequest)),
                                  "response matches no pending attempt", ev.origin);
                    }
                    break;
                }
                try {
                    ent.scheme->complete_auth(resp);
                    ent.awaiting = false;
                    st.auth_successes += 1;
                } catch (const ProtocolError& err) {
                    // The pending attempt survives; the retry timer decides.
                    log_error(name, err, ev.origin);
                }
                break;
            }
            case WireTag::kTrafficMessage: {
                const auto tm = proposed::TrafficMessage::deserialize(ByteView(ev.payload));
                if (ent.peer_buffer.size() < kPeerBufferCap) {
                    ent.peer_buffer.push_back(tm);
                }
                break;
            }
            case WireTag::kNotification: {
                if (!ent.scheme) {
                    break;
                }
                const auto note = proposed::Notification::deserialize(ByteView(ev.payload));
                try {
                    for (const proposed::TrafficMessage& tm : ent.peer_buffer) {
                        const proposed::PeerVerdict verdict =
                            ent.scheme->verify_peer_message(tm, note);
                        if (verdict == proposed::PeerVerdict::kValid) {
                            st.peer_valid += 1;
                        } else {
                            st.peer_unknown += 1;
                        }
                    }
                    ent.peer_buffer.clear();
                } catch (const ProtocolError& err) {
                    // A bad signature or unknown origin condemns the whole
                    // notification; buffered traffic waits for the next one.
                    log_error(name, err, ev.origin);
                }
                break;
            }
            case WireTag::kBaselineAuthResponse: {
                const auto resp = baseline::AuthResponse::deserialize(ByteView(ev.payload));
                if (!ent.base || !ent.awaiting_baseline || resp.aid != ent.baseline_aid) {
                    if (ev.origin != FrameOrigin::kHonest) {
                        log_error(name, std::string(err_name(Err::kNoPendingRequest)),
                                  "response matches no pending attempt", ev.origin);
                    }
                    break;
                }
                try {
                    ent.base->complete(resp);
                    ent.awaiting_baseline = false;
                    st.auth_successes += 1;
                } catch (const ProtocolError& err) {
                    log_error(name, err, ev.origin);
                }
                break;
            }
            default:
                // Requests address the infrastructure; ignore overheard copies.
                break;
        }
    } catch (const ProtocolError& err) {
        log_error(name, err, ev.origin);
    }
}

void Simulator::on_retry_timer(const Event& ev) {
    auto it = obus_.find(ev.entity);
    if (it == obus_.end()) {
        return;
    }
    ObuEntity& ent = it->second;
    if (ev.baseline) {
        if (!ent.awaiting_baseline || ent.baseline_generation != ev.generation) {
            return;
        }
        if (ent.baseline_retries_left == 0) {
            ent.awaiting_baseline = false;
            stats_for(ev.entity).auth_failures += 1;
            log_error(ev.entity, "AuthTimeout",
                      "baseline authentication exhausted its retries",
                      FrameOrigin::kHonest);
            return;
        }
        ent.baseline_retries_left -= 1;
        start_baseline_attempt(ev.entity, ent);
        return;
    }
    if (!ent.awaiting || ent.generation != ev.generation) {
        return;
    }
    if (ent.retries_left == 0) {
        ent.awaiting = false;
        stats_for(ev.entity).auth_failures += 1;
        log_error(ev.entity, "AuthTimeout", "authentication exhausted its retries",
                  FrameOrigin::kHonest);
        return;
    }
    ent.retries_left -= 1;
    start_auth_attempt(ev.entity, ent);
}

void Simulator::on_notify_timer(const Event& ev) {
    auto it = rsus_.find(ev.entity);
    if (it == rsus_.end()) {
        return;
    }
    if (it->second.scheme->pending_notification_count() > 0) {
        emit_notification_frame(ev.entity);
    }
    Event next;
    next.type = Event::Type::kNotifyTimer;
    next.at = now_ms_ + cfg_.notification_period_ms;
    next.entity = ev.entity;
    schedule(std::move(next));
}

SimStats Simulator::stats() const {
    SimStats out;
    out.entities = stats_;
    for (const auto& [name, st] : stats_) {
        out.deliveries += st.deliveries;
        out.drops += st.drops;
        auto kind_it = kinds_.find(name);
        if (kind_it != kinds_.end() && kind_it->second == Kind::kObu) {
            out.auth_successes += st.auth_successes;
            out.auth_failures += st.auth_failures;
        }
    }
    return out;
}

proposed::Ta& Simulator::ta() {
    if (!ta_scheme_) {
        fail(Err::kNotFound, "no authority in the simulation");
    }
    return *ta_scheme_;
}

proposed::Rsu& Simulator::rsu(const std::string& name) { return *rsu_entity(name).scheme; }

proposed::Obu& Simulator::obu(const std::string& name) {
    auto& ent = obu_entity(name);
    if (!ent.scheme) {
        fail(Err::kNotRegistered, "'" + name + "' holds no card");
    }
    return *ent.scheme;
}

baseline::Ta& Simulator::baseline_ta() {
    if (!baseline_ta_) {
        fail(Err::kNotFound, "baseline parameters not installed");
    }
    return *baseline_ta_;
}

std::vector<std::string> Simulator::rsu_names() const {
    std::vector<std::string> out;
    for (const auto& [name, ent] : rsus_) {
        out.push_back(name);
    }
    return out;
}

std::vector<std::string> Simulator::obu_names() const {
    std::vector<std::string> out;
    for (const auto& [name, ent] : obus_) {
        out.push_back(name);
    }
    return out;
}

bool Simulator::obu_registered(const std::string& name) const {
    auto it = obus_.find(name);
    return it != obus_.end() && it->second.scheme != nullptr;
}

bool Simulator::obu_logged_in(const std::string& name) const {
    auto it = obus_.find(name);
    return it != obus_.end() && it->second.scheme && it->second.scheme->logged_in();
}

std::optional<SymmetricKey> Simulator::obu_session_key(const std::string& name) const {
    auto it = obus_.find(name);
    if (it == obus_.end() || !it->second.scheme) {
        return std::nullopt;
    }
    return it->second.scheme->session_key();
}

std::optional<SymmetricKey> Simulator::obu_baseline_session_key(
    const std::string& name) const {
    auto it = obus_.find(name);
    if (it == obus_.end() || !it->second.base) {
        return std::nullopt;
    }
    return it->second.base->session_key();
}

bool Simulator::session_known_to_rsu(const std::string& obu_name,
                                     const std::string& rsu_name) {
    const std::optional<SymmetricKey> key = obu_session_key(obu_name);
    if (!key) {
        return false;
    }
    for (const proposed::AuthListEntry& entry : rsu_entity(rsu_name).scheme->auth_list()) {
        if (entry.session_key == *key) {
            return true;
        }
    }
    return false;
}

const EntityStats& Simulator::entity_stats(const std::string& name) const {
    auto it = stats_.find(name);
    if (it == stats_.end()) {
        fail(Err::kNotFound, "unknown entity '" + name + "'");
    }
    return it->second;
}

}  // namespace vasc::sim
