// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>

#include "helpers.hpp"
#include "vasc/group.hpp"
#include "vasc/sim.hpp"
#include "vasc/wire.hpp"

using namespace vasc;
using sim::SimConfig;
using sim::Simulator;

namespace {

SimConfig quiet_config(std::uint64_t seed = 42) {
    SimConfig cfg;
    cfg.seed = seed;
    return cfg;
}

// TA + one RSU + two registered, logged-in OBUs.
struct Net {
    Simulator s;

    explicit Net(SimConfig cfg = quiet_config()) : s(cfg) {
        s.add_ta(testutil::filled_key(0x11));
        s.add_rsu("rsu-1");
        s.add_obu("car-1");
        s.add_obu("car-2");
        for (const char* car : {"car-1", "car-2"}) {
            s.register_vehicle(car, ByteView(to_bytes("pw")));
            s.login(car, ByteView(to_bytes("pw")));
        }
    }
};

std::size_t find_frame(const sim::Transcript& tr, WireTag tag, std::size_t nth = 0) {
    std::size_t seen = 0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        if (peek_tag(ByteView(tr[i].payload)) == tag) {
            if (seen == nth) return i;
            seen += 1;
        }
    }
    REQUIRE_MESSAGE(false, "frame not found in transcript");
    return 0;
}

bool log_has(const sim::EntityStats& st, std::string_view code,
             std::optional<sim::FrameOrigin> origin = std::nullopt) {
    return std::any_of(st.errors.begin(), st.errors.end(), [&](const sim::ErrorLogEntry& e) {
        return e.code == code && (!origin || e.origin == *origin);
    });
}

}  // namespace

TEST_CASE("topology construction and uniqueness") {
    Simulator s(quiet_config());
    s.add_ta(testutil::filled_key(0x01));
    s.add_rsu("rsu-1");
    s.add_rsu("rsu-2");
    for (int i = 0; i < 5; ++i) {
        s.add_obu("car-" + std::to_string(i));
    }
    CHECK(s.rsu_names().size() == 2);
    CHECK(s.obu_names().size() == 5);
    CHECK(s.ta_name() == "ta");
    // 1 + 2 + 5 entities have statistics slots.
    CHECK(s.stats().entities.size() == 8);

    CHECK_FAILS(s.add_ta(testutil::filled_key(0x02)), Err::kDuplicateTa);
    CHECK_FAILS(s.add_obu("rsu-1"), Err::kDuplicateIdentity);
    CHECK_FAILS(s.add_rsu("car-0"), Err::kDuplicateIdentity);
}

TEST_CASE("roadside units require an authority") {
    Simulator s(quiet_config());
    CHECK_FAILS(s.add_rsu("rsu-1"), Err::kConfigError);
}

TEST_CASE("config validation") {
    SimConfig cfg = quiet_config();
    cfg.wireless_drop_rate = 1.5;
    CHECK_FAILS(Simulator{cfg}, Err::kConfigError);
    SimConfig flipped = quiet_config();
    flipped.wireless_latency_ms = {30, 10};
    CHECK_FAILS(Simulator{flipped}, Err::kConfigError);

    SimConfig defaults;
    // Twice the worst-case round trip (two wireless + two secure legs).
    CHECK(defaults.effective_retry_timeout_ms() == 2 * (2 * 30 + 2 * 5));
    defaults.retry_timeout_ms = 77;
    CHECK(defaults.effective_retry_timeout_ms() == 77);
}

TEST_CASE("empty run returns immediately with zero deliveries") {
    Net net;
    const sim::SimStats st = net.s.run_until(Timestamp{5'000});
    CHECK(st.deliveries == 0);
    CHECK(st.drops == 0);
    CHECK(net.s.now().ms == 5'000);
}

TEST_CASE("the virtual clock never runs backward") {
    Net net;
    net.s.run_until(Timestamp{100});
    CHECK_FAILS(net.s.run_until(Timestamp{50}), Err::kConfigError);
}

TEST_CASE("five units authenticate end to end") {
    Simulator s(quiet_config(7));
    s.add_ta(testutil::filled_key(0x11));
    s.add_rsu("rsu-1");
    for (int i = 0; i < 5; ++i) {
        const std::string car = "car-" + std::to_string(i);
        s.add_obu(car);
        s.register_vehicle(car, ByteView(to_bytes("pw")));
        s.login(car, ByteView(to_bytes("pw")));
        s.authenticate(car, "rsu-1");
    }
    const sim::SimStats st = s.run_until(Timestamp{2'000});
    CHECK(st.auth_successes == 5);
    CHECK(st.auth_failures == 0);
    for (int i = 0; i < 5; ++i) {
        const std::string car = "car-" + std::to_string(i);
        CHECK(s.obu_session_key(car).has_value());
        CHECK(s.session_known_to_rsu(car, "rsu-1"));
    }
    CHECK(s.rsu("rsu-1").auth_list().size() == 5);
}

TEST_CASE("identical seeds produce byte-identical transcripts") {
    auto drive = [](std::uint64_t seed) {
        Net net{quiet_config(seed)};
        net.s.authenticate("car-1", "rsu-1");
        net.s.run_until(Timestamp{400});
        net.s.send_traffic("car-1", ByteView(to_bytes("ice on bridge")));
        net.s.run_until(Timestamp{1'500});
        return sim::export_transcript(net.s.adversary_capture());
    };
    const std::string first = drive(1234);
    const std::string second = drive(1234);
    CHECK(first == second);
    CHECK(first != drive(1235));
}

TEST_CASE("full drop forces retry exhaustion; the secure side stays silent") {
    SimConfig cfg = quiet_config(3);
    cfg.wireless_drop_rate = 1.0;
    Net net{cfg};
    net.s.authenticate("car-1", "rsu-1");
    const sim::SimStats st = net.s.run_until(Timestamp{10'000});
    CHECK(st.deliveries == 0);
    // Initial attempt plus three retries, every delivery dropped.
    CHECK(st.drops == 4);
    CHECK(st.auth_successes == 0);
    CHECK(st.auth_failures == 1);
    CHECK(log_has(net.s.entity_stats("car-1"), "AuthTimeout"));
    // All four requests still went onto the air for the adversary.
    CHECK(net.s.adversary_capture().size() == 4);
}

TEST_CASE("retries recover from a lossy channel") {
    int successes = 0;
    int retried_runs = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SimConfig cfg = quiet_config(seed);
        cfg.wireless_drop_rate = 0.5;
        Net net{cfg};
        net.s.authenticate("car-1", "rsu-1");
        const sim::SimStats st = net.s.run_until(Timestamp{10'000});
        // Every run reaches a terminal outcome.
        CHECK(st.auth_successes + st.auth_failures == 1);
        if (st.auth_successes == 1) {
            successes += 1;
            CHECK(net.s.obu_session_key("car-1").has_value());
        }
        std::size_t requests = 0;
        for (const auto& entry : net.s.adversary_capture()) {
            if (peek_tag(ByteView(entry.payload)) == WireTag::kAuthRequest) requests += 1;
        }
        if (requests > 1) retried_runs += 1;
    }
    // At 50% loss, retries must rescue a solid majority of runs, and at
    // least one rescued run must have taken more than one request.
    CHECK(successes >= 10);
    CHECK(retried_runs >= 5);
}

TEST_CASE("traffic, periodic notification, and peer verification") {
    Net net;
    net.s.authenticate("car-1", "rsu-1");
    net.s.run_until(Timestamp{200});
    REQUIRE(net.s.obu_session_key("car-1").has_value());
    net.s.send_traffic("car-1", ByteView(to_bytes("ice on bridge")));
    const sim::SimStats st = net.s.run_until(Timestamp{1'200});

    CHECK(st.entities.at("rsu-1").messages_validated == 1);
    // The periodic timer broadcast a notification; the passive peer
    // verified the buffered message, the sender had nothing buffered.
    CHECK(st.entities.at("car-2").peer_valid == 1);
    CHECK(st.entities.at("car-1").peer_valid == 0);
    CHECK(net.s.rsu("rsu-1").message_log().size() == 1);
    CHECK(net.s.rsu("rsu-1").pending_notification_count() == 0);

    // The secure channel never appears on the air: every captured frame is
    // wireless and none carries a secure-envelope or forwarded tag.
    for (const auto& entry : net.s.adversary_capture()) {
        CHECK(entry.channel == sim::Channel::kWireless);
        const WireTag tag = peek_tag(ByteView(entry.payload));
        CHECK(tag != WireTag::kSecureEnvelope);
        CHECK(tag != WireTag::kBaselineForwarded);
    }
}

TEST_CASE("explicit notification emission works without the timer") {
    SimConfig cfg = quiet_config();
    cfg.notification_period_ms = 0;  // timer disabled
    Net net{cfg};
    net.s.authenticate("car-1", "rsu-1");
    net.s.run_until(Timestamp{200});
    net.s.send_traffic("car-1", ByteView(to_bytes("stalled truck")));
    net.s.run_until(Timestamp{400});
    CHECK(net.s.entity_stats("car-2").peer_valid == 0);
    net.s.emit_notification("rsu-1");
    const sim::SimStats st = net.s.run_until(Timestamp{800});
    CHECK(st.entities.at("car-2").peer_valid == 1);
}

TEST_CASE("replay of a captured request after the window is refused as stale") {
    Net net;
    net.s.authenticate("car-1", "rsu-1");
    net.s.run_until(Timestamp{200});
    const std::size_t idx = find_frame(net.s.adversary_capture(), WireTag::kAuthRequest);
    net.s.adversary_replay(idx, Timestamp{800});
    net.s.run_until(Timestamp{1'500});
    CHECK(log_has(net.s.entity_stats("ta"), "StaleTimestamp", sim::FrameOrigin::kReplay));
}

TEST_CASE("replay inside the window after the chain advanced is refused") {
    Net net;
    net.s.authenticate("car-1", "rsu-1");
    net.s.run_until(Timestamp{200});
    REQUIRE(net.s.obu_session_key("car-1").has_value());
    const std::size_t idx = find_frame(net.s.adversary_capture(), WireTag::kAuthRequest);
    net.s.adversary_replay(idx, Timestamp{300});
    net.s.run_until(Timestamp{600});
    const auto& ta_log = net.s.entity_stats("ta");
    CHECK((log_has(ta_log, "BadAuthenticator", sim::FrameOrigin::kReplay) ||
           log_has(ta_log, "UnknownPseudonym", sim::FrameOrigin::kReplay)));
}

TEST_CASE("replayed traffic is refused as a duplicate") {
    Net net;
    net.s.authenticate("car-1", "rsu-1");
    net.s.run_until(Timestamp{200});
    net.s.send_traffic("car-1", ByteView(to_bytes("ice on bridge")));
    net.s.run_until(Timestamp{300});
    const std::size_t idx = find_frame(net.s.adversary_capture(), WireTag::kTrafficMessage);
    net.s.adversary_replay(idx, Timestamp{350});
    const sim::SimStats st = net.s.run_until(Timestamp{700});
    CHECK(st.entities.at("rsu-1").messages_validated == 1);
    CHECK(st.entities.at("rsu-1").messages_rejected >= 1);
    CHECK(log_has(net.s.entity_stats("rsu-1"), "DuplicateMessage",
                  sim::FrameOrigin::kReplay));
}

TEST_CASE("a tampered response is rejected while the honest one completes") {
    Net net;
    net.s.authenticate("car-1", "rsu-1");
    // Step until the roadside broadcast exists but cannot have been
    // delivered yet (minimum wireless latency is 10 ms).
    std::size_t idx = 0;
    for (;;) {
        const auto& tr = net.s.adversary_capture();
        bool found = false;
        for (std::size_t i = 0; i < tr.size(); ++i) {
            if (peek_tag(ByteView(tr[i].payload)) == WireTag::kRsuAuthResponse) {
                idx = i;
                found = true;
                break;
            }
        }
        if (found) break;
        REQUIRE(net.s.now().ms < 1'000);
        net.s.run_until(Timestamp{net.s.now().ms + 1});
    }
    const Bytes frame = net.s.adversary_capture()[idx].payload;
    // Flip the last byte: the response tag no longer verifies.
    net.s.adversary_tamper(idx, frame.size() - 1, frame.back() ^ 0xFF,
                           Timestamp{net.s.now().ms + 1});
    const sim::SimStats st = net.s.run_until(Timestamp{1'000});
    CHECK(log_has(net.s.entity_stats("car-1"), "BadResponseTag", sim::FrameOrigin::kTamper));
    // The honest broadcast still lands afterwards and completes the round.
    CHECK(st.auth_successes == 1);
    CHECK(net.s.obu_session_key("car-1").has_value());
}

TEST_CASE("adversary argument validation") {
    Net net;
    CHECK_FAILS(net.s.adversary_replay(0, Timestamp{10}), Err::kIndexOutOfRange);
    net.s.authenticate("car-1", "rsu-1");
    CHECK_FAILS(net.s.adversary_tamper(0, 100'000, 0x00, Timestamp{10}), Err::kIndexOutOfRange);
    CHECK_FAILS(net.s.adversary_inject(to_bytes("x"), "ghost", Timestamp{10}), Err::kNotFound);
    net.s.run_until(Timestamp{100});
    CHECK_FAILS(net.s.adversary_replay(0, Timestamp{50}), Err::kConfigError);
}

TEST_CASE("the authority cannot be addressed from the air") {
    Net net;
    CHECK_FAILS(net.s.adversary_inject(to_bytes("junk"), "ta", Timestamp{10}), Err::kSecureChannelViolation);
}

TEST_CASE("injected junk is logged as malformed") {
    Net net;
    net.s.adversary_inject(from_hex("77ffff"), "rsu-1", Timestamp{10});
    net.s.adversary_inject(Bytes{}, "car-1", Timestamp{10});
    net.s.run_until(Timestamp{100});
    CHECK(log_has(net.s.entity_stats("rsu-1"), "MalformedMessage",
                  sim::FrameOrigin::kInject));
    CHECK(log_has(net.s.entity_stats("car-1"), "MalformedMessage",
                  sim::FrameOrigin::kInject));
}

TEST_CASE("a spoofed session announcement over the air is refused") {
    Net net;
    net.s.authenticate("car-1", "rsu-1");
    net.s.run_until(Timestamp{200});
    // Craft a frame with the secure-envelope tag and aim it at the RSU.
    Bytes forged{static_cast<std::uint8_t>(WireTag::kSecureEnvelope)};
    forged.push_back(0x00);
    net.s.adversary_inject(forged, "rsu-1", Timestamp{250});
    net.s.run_until(Timestamp{400});
    CHECK(log_has(net.s.entity_stats("rsu-1"), "SecureChannelViolation",
                  sim::FrameOrigin::kInject));
}

TEST_CASE("revocation blocks later rounds inside the simulation") {
    Net net;
    net.s.authenticate("car-1", "rsu-1");
    net.s.run_until(Timestamp{200});
    REQUIRE(net.s.obu_session_key("car-1").has_value());
    net.s.revoke("car-1");
    net.s.authenticate("car-1", "rsu-1");
    const sim::SimStats st = net.s.run_until(Timestamp{5'000});
    CHECK(log_has(net.s.entity_stats("ta"), "Revoked"));
    CHECK(st.auth_failures == 1);  // retries exhausted, then terminal
    CHECK_FAILS(net.s.register_vehicle("car-1", ByteView(to_bytes("pw"))), Err::kRevokedIdentity);
}

TEST_CASE("baseline scheme runs end to end inside the simulation") {
    Simulator s(quiet_config(11));
    s.add_ta(testutil::filled_key(0x22));
    Rng group_rng(99);
    auto [params, secrets] = group_setup(64, group_rng);
    s.enable_baseline(params, secrets);
    s.add_rsu("rsu-1");
    s.add_obu("car-1");
    s.register_baseline("car-1");
    s.authenticate_baseline("car-1", "rsu-1");
    const sim::SimStats st = s.run_until(Timestamp{2'000});
    CHECK(st.auth_successes == 1);
    const auto obu_key = s.obu_baseline_session_key("car-1");
    const auto ta_key = s.last_baseline_authority_key();
    REQUIRE(obu_key.has_value());
    REQUIRE(ta_key.has_value());
    CHECK(*obu_key == *ta_key);
    // The forwarded copy travelled the secure channel only.
    for (const auto& entry : s.adversary_capture()) {
        CHECK(peek_tag(ByteView(entry.payload)) != WireTag::kBaselineForwarded);
    }
}

TEST_CASE("baseline actions without parameters are refused") {
    Net net;
    CHECK_FAILS(net.s.register_baseline("car-1"), Err::kConfigError);
}

TEST_CASE("linkability probe reports distinct fields and no identity bytes") {
    Net net{quiet_config(5)};
    const sim::LinkabilityReport report = linkability_probe(net.s, "car-1", "car-2", 5);
    CHECK(report.sessions_per_obu == 5);
    CHECK(report.sessions_observed == 10);
    CHECK(report.repeated_aid == 0);
    CHECK(report.repeated_uac == 0);
    CHECK(report.repeated_sigma == 0);
    CHECK_FALSE(report.identity_bytes_found);
    CHECK(report.same_obu.pairs == 2 * 10);  // 2 * C(5,2)
    CHECK(report.cross_obu.pairs == 25);
    CHECK(report.same_obu.max > 0);
    const std::string text = report.summary();
    CHECK(text.find("linkability probe") != std::string::npos);
    CHECK(text.find("identity bytes on the air: no") != std::string::npos);
}

TEST_CASE("degenerate probe with one session per unit stays well formed") {
    Net net;
    const sim::LinkabilityReport report = linkability_probe(net.s, "car-1", "car-2", 1);
    CHECK(report.sessions_observed == 2);
    CHECK(report.same_obu.pairs == 0);
    CHECK(report.cross_obu.pairs == 1);
    CHECK(report.repeated_aid == 0);
}

TEST_CASE("probe preconditions") {
    Simulator s(quiet_config());
    s.add_ta(testutil::filled_key(0x11));
    s.add_rsu("rsu-1");
    s.add_obu("car-1");
    s.add_obu("car-2");
    CHECK_FAILS(linkability_probe(s, "car-1", "car-2", 1), Err::kNotRegistered);
    s.register_vehicle("car-1", ByteView(to_bytes("pw")));
    s.register_vehicle("car-2", ByteView(to_bytes("pw")));
    CHECK_FAILS(linkability_probe(s, "car-1", "car-2", 1), Err::kNotLoggedIn);
}
