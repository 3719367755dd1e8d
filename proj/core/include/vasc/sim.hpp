// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "vasc/baseline.hpp"
#include "vasc/bytes.hpp"
#include "vasc/proposed.hpp"
#include "vasc/rng.hpp"
#include "vasc/timestamp.hpp"

// Discrete-event network simulator hosting one authority, roadside units,
// and on-board units under a single virtual clock. Wireless links have
// configurable latency and loss; RSU-authority links are lossless, private,
// and invisible to the adversary. Identical (seed, config, call sequence)
// yields byte-identical transcripts and final states.
namespace vasc::sim {

struct LatencyRange {
    std::uint64_t lo_ms = 0;
    std::uint64_t hi_ms = 0;
};

struct SimConfig {
    std::uint64_t seed = 1;
    LatencyRange wireless_latency_ms{10, 30};
    double wireless_drop_rate = 0.0;
    LatencyRange secure_latency_ms{1, 5};
    std::uint64_t freshness_window_ms = 500;
    std::uint64_t notification_period_ms = 300;
    // 0 derives the default: twice the worst-case round trip across the
    // wireless and secure legs, so an un-dropped response never races the
    // retry timer.
    std::uint64_t retry_timeout_ms = 0;
    std::uint32_t max_auth_retries = 3;
    std::uint64_t auth_ttl_ms = 600'000;
    double notification_fp_target = 0.01;

    std::uint64_t effective_retry_timeout_ms() const;
};

enum class Channel {
    kWireless,
    kSecure,
};

// Destination name every over-the-air receiver shares.
inline constexpr std::string_view kBroadcast = "*";

// How a delivered frame got onto the channel. Entity error logs carry the
// origin so reports can phrase outcomes as "replay rejected: ...".
enum class FrameOrigin {
    kHonest,
    kReplay,
    kTamper,
    kInject,
};

std::string_view origin_name(FrameOrigin origin);

// One frame observed on the air. Honest wireless sends are recorded at
// transmission time (the adversary eavesdrops the medium, not the receiver),
// so frames are capturable even when every delivery is dropped. Secure
// RSU-authority traffic is never recorded.
struct TranscriptEntry {
    std::uint64_t at_ms = 0;
    Channel channel = Channel::kWireless;
    std::string src;
    std::string dst;  // entity name, or kBroadcast
    Bytes payload;
};

using Transcript = std::vector<TranscriptEntry>;

// Line-oriented JSON, one entry per line, payloads hex-encoded.
std::string export_transcript(const Transcript& transcript);

struct ErrorLogEntry {
    std::uint64_t at_ms = 0;
    std::string code;  // canonical error name, or the sim's "AuthTimeout"
    std::string detail;
    FrameOrigin origin = FrameOrigin::kHonest;
};

struct EntityStats {
    std::uint64_t deliveries = 0;
    std::uint64_t drops = 0;  // frames addressed to this entity lost in the air
    std::uint64_t auth_successes = 0;
    std::uint64_t auth_failures = 0;  // terminal: retries exhausted
    std::uint64_t messages_validated = 0;
    std::uint64_t messages_rejected = 0;
    std::uint64_t peer_valid = 0;
    std::uint64_t peer_unknown = 0;
    std::vector<ErrorLogEntry> errors;
};

struct SimStats {
    std::uint64_t deliveries = 0;
    std::uint64_t drops = 0;
    // OBU-side protocol completions; the per-entity map carries the rest.
    std::uint64_t auth_successes = 0;
    std::uint64_t auth_failures = 0;
    std::map<std::string, EntityStats> entities;
};

class Simulator {
  public:
    explicit Simulator(SimConfig config);

    // Topology. Exactly one authority; entity names must be unique.
    std::string add_ta(std::array<std::uint8_t, 32> master_secret);
    std::string add_rsu(const std::string& name);
    std::string add_obu(const std::string& name);
    // Installs group parameters so entities can also run the baseline
    // scheme; without this, baseline actions are refused.
    void enable_baseline(SystemParams params, TaGroupSecrets secrets);

    // Control operations. Each acts at the current virtual time; network
    // effects are scheduled as future deliveries. Failures throw.
    void register_vehicle(const std::string& obu, ByteView password);
    void login(const std::string& obu, ByteView password);
    void authenticate(const std::string& obu, const std::string& rsu);
    void send_traffic(const std::string& obu, ByteView message);
    void revoke(const std::string& obu);
    void emit_notification(const std::string& rsu);
    void register_baseline(const std::string& obu);
    void authenticate_baseline(const std::string& obu, const std::string& rsu);

    // Adversary API. Deliveries land exactly at `at` (the adversary
    // transmits next to its victim: no latency roll, no loss), carrying a
    // non-honest origin so logs attribute the outcome. The authority sits
    // behind the secure channel and cannot be addressed.
    const Transcript& adversary_capture() const { return transcript_; }
    void adversary_replay(std::size_t index, Timestamp at);
    void adversary_tamper(std::size_t index, std::size_t offset, std::uint8_t value,
                          Timestamp at);
    void adversary_inject(Bytes raw, const std::string& dst, Timestamp at);

    // Runs every event scheduled at or before t, then advances the clock
    // to t. The clock never runs backward.
    SimStats run_until(Timestamp t);
    Timestamp now() const { return Timestamp{now_ms_}; }
    SimStats stats() const;

    // State inspection for tests, reports, and persistence snapshots.
    proposed::Ta& ta();
    proposed::Rsu& rsu(const std::string& name);
    proposed::Obu& obu(const std::string& name);
    baseline::Ta& baseline_ta();
    bool has_ta() const { return ta_scheme_ != nullptr; }
    bool baseline_enabled() const { return baseline_ta_ != nullptr; }
    const std::string& ta_name() const { return ta_name_; }
    std::vector<std::string> rsu_names() const;
    std::vector<std::string> obu_names() const;
    bool obu_registered(const std::string& name) const;
    bool obu_logged_in(const std::string& name) const;
    std::optional<SymmetricKey> obu_session_key(const std::string& name) const;
    std::optional<SymmetricKey> obu_baseline_session_key(const std::string& name) const;
    // Session key the authority issued for the baseline round most recently
    // answered; lets tests confirm both sides derived the same key.
    std::optional<SymmetricKey> last_baseline_authority_key() const {
        return last_baseline_ta_key_;
    }
    // True when the OBU's current session key appears in the RSU's list.
    bool session_known_to_rsu(const std::string& obu_name, const std::string& rsu_name);
    const EntityStats& entity_stats(const std::string& name) const;

  private:
    enum class Kind { kTa, kRsu, kObu };

    struct Event {
        std::uint64_t at = 0;
        std::uint64_t seq = 0;
        enum class Type { kDeliver, kRetryTimer, kNotifyTimer } type = Type::kDeliver;
        // kDeliver
        Channel channel = Channel::kWireless;
        std::string src;
        std::string dst;
        Bytes payload;
        FrameOrigin origin = FrameOrigin::kHonest;
        // kRetryTimer / kNotifyTimer
        std::string entity;
        std::uint64_t generation = 0;
        bool baseline = false;
    };

    struct EventAfter {
        bool operator()(const Event& a, const Event& b) const {
            if (a.at != b.at) return a.at > b.at;
            return a.seq > b.seq;
        }
    };

    struct RsuEntity {
        std::unique_ptr<proposed::Rsu> scheme;
        std::unique_ptr<baseline::Rsu> base;
    };

    struct ObuEntity {
        Rng rng{0};
        std::optional<proposed::SmartCard> card;
        std::unique_ptr<proposed::Obu> scheme;
        std::unique_ptr<baseline::Obu> base;
        // Proposed-scheme attempt in flight.
        bool awaiting = false;
        Digest current_aid{};
        std::string target_rsu;
        std::uint64_t generation = 0;
        std::uint32_t retries_left = 0;
        // Baseline attempt in flight.
        bool awaiting_baseline = false;
        baseline::MaskedId baseline_aid{};
        std::string baseline_target;
        std::uint64_t baseline_generation = 0;
        std::uint32_t baseline_retries_left = 0;
        // Peer traffic awaiting the next notification.
        std::vector<proposed::TrafficMessage> peer_buffer;
    };

    void require_unique_name(const std::string& name) const;
    Kind kind_of(const std::string& name) const;
    ObuEntity& obu_entity(const std::string& name);
    RsuEntity& rsu_entity(const std::string& name);
    EntityStats& stats_for(const std::string& name);
    void log_error(const std::string& entity, const ProtocolError& err, FrameOrigin origin);
    void log_error(const std::string& entity, std::string code, std::string detail,
                   FrameOrigin origin);

    void schedule(Event ev);
    void schedule_adversarial(Bytes payload, const std::string& src, const std::string& dst,
                              Timestamp at, FrameOrigin origin);
    void send_wireless(const std::string& src, const std::string& dst, Bytes payload);
    void send_secure(const std::string& src, const std::string& dst, Bytes payload,
                     FrameOrigin origin);
    std::vector<std::string> broadcast_receivers(const std::string& src) const;

    void dispatch(const Event& ev);
    void deliver_to_ta(const Event& ev);
    void deliver_to_rsu(const std::string& name, const Event& ev);
    void deliver_to_obu(const std::string& name, const Event& ev);
    void start_auth_attempt(const std::string& obu_name, ObuEntity& ent);
    void start_baseline_attempt(const std::string& obu_name, ObuEntity& ent);
    void on_retry_timer(const Event& ev);
    void on_notify_timer(const Event& ev);
    void emit_notification_frame(const std::string& rsu_name);

    SimConfig cfg_;
    Rng master_rng_;
    Rng channel_rng_;
    Rng ta_rng_;
    std::uint64_t now_ms_ = 0;
    std::uint64_t next_seq_ = 0;
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;

    std::map<std::string, Kind> kinds_;
    std::string ta_name_;
    std::unique_ptr<proposed::Ta> ta_scheme_;
    std::unique_ptr<baseline::Ta> baseline_ta_;
    std::optional<SymmetricKey> last_baseline_ta_key_;
    std::map<std::string, RsuEntity> rsus_;
    std::map<std::string, ObuEntity> obus_;
    std::map<std::string, EntityStats> stats_;
    Transcript transcript_;
};

// Unlinkability probe: drives both OBUs through `sessions_per_obu` full
// authentication-plus-traffic rounds against the first RSU, attributes the
// over-the-air frames to sessions (the driver knows who it triggered; the
// bytes alone must not reveal it), and reports repeated protocol fields,
// identity-byte leakage, and longest-common-substring statistics between
// same-OBU and cross-OBU session transcripts. The LCS figures are emitted
// for inspection, not asserted: overlapping ranges mean no trivial handle.
struct LcsStats {
    std::size_t pairs = 0;
    std::size_t min = 0;
    std::size_t max = 0;
    double mean = 0.0;
};

struct LinkabilityReport {
    std::size_t sessions_per_obu = 0;
    std::size_t sessions_observed = 0;
    // Number of pairs of sessions sharing a value, across all sessions.
    std::size_t repeated_aid = 0;
    std::size_t repeated_uac = 0;
    std::size_t repeated_sigma = 0;
    bool identity_bytes_found = false;
    LcsStats same_obu;
    LcsStats cross_obu;

    std::string summary() const;
};

LinkabilityReport linkability_probe(Simulator& sim, const std::string& obu_a,
                                    const std::string& obu_b,
                                    std::size_t sessions_per_obu);

}  // namespace vasc::sim
