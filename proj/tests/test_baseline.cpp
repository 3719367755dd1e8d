// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include "helpers.hpp"
#include "vasc/baseline.hpp"
#include "vasc/group.hpp"

using namespace vasc;
using namespace vasc::baseline;

namespace {

constexpr std::uint64_t kWindowMs = 500;

// Brute-force modular exponentiation, independent of the gmp-backed path.
Bigint slow_pow(const Bigint& base, std::uint64_t e, const Bigint& mod) {
    Bigint acc = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        acc = (acc * base) % mod;
    }
    return acc;
}

struct ToyNet {
    Rng rng{0xC0C0};
    std::optional<Ta> ta;
    std::optional<Rsu> rsu;
    std::optional<Obu> obu;

    ToyNet() {
        auto [params, secrets] =
            group_setup_explicit(23, 5, 6, testutil::filled_key(0x22));
        ta.emplace(params, secrets, kWindowMs);
        rsu.emplace(to_bytes("rsu-1"), kWindowMs);
        obu.emplace(ta->register_vehicle(VehicleId{to_bytes("v")}));
    }
};

}  // namespace

TEST_CASE("group: toy parameters match hand-computed values") {
    auto [params, secrets] = group_setup_explicit(23, 5, 6, testutil::filled_key(0x22));
    CHECK_EQ(params.y, 8);  // 5^6 mod 23
    CHECK_EQ(params.p, 23);
    CHECK_EQ(mod_exp(5, 3, 23), 10);   // D for alpha = 3
    CHECK_EQ(mod_exp(8, 3, 23), 6);    // E = y^alpha
    CHECK_EQ(mod_exp(10, 6, 23), 6);   // E* = D^x, equal to E
    CHECK_EQ(mod_exp(params.g, secrets.x, params.p), params.y);
}

TEST_CASE("group: exhaustive key-exchange algebra over the toy group") {
    const Bigint p = 23, g = 5, x = 6;
    const Bigint y = mod_exp(g, x, p);
    for (std::uint64_t alpha = 1; alpha <= 21; ++alpha) {
        const Bigint d = mod_exp(g, alpha, p);
        CHECK_EQ(d, slow_pow(g, alpha, p));
        // E computed by the vehicle equals E* recovered by the authority.
        CHECK_EQ(mod_exp(y, alpha, p), mod_exp(d, x, p));
        for (std::uint64_t beta = 1; beta <= 21; ++beta) {
            const Bigint g_beta = mod_exp(g, beta, p);
            CHECK_EQ(mod_exp(d, beta, p), mod_exp(g_beta, alpha, p));
            CHECK_EQ(mod_exp(d, beta, p), slow_pow(d, beta, p));
        }
    }
}

TEST_CASE("group: setup draws fresh secrets per seed") {
    Rng r1(1), r2(2), r3(1);
    auto [p1, s1] = group_setup(64, r1);
    auto [p2, s2] = group_setup(64, r2);
    auto [p3, s3] = group_setup(64, r3);
    CHECK_NE(s1.x, s2.x);
    CHECK_EQ(s1.x, s3.x);  // same seed, same setup
    CHECK_EQ(p1.p, p3.p);
    CHECK_EQ(mod_exp(p1.g, s1.x, p1.p), p1.y);

    // Generated moduli are safe primes of the requested size.
    CHECK_EQ(mpz_sizeinbase(p1.p.get_mpz_t(), 2), 64);
    CHECK(mpz_probab_prime_p(p1.p.get_mpz_t(), 40));
    const Bigint q = (p1.p - 1) / 2;
    CHECK(mpz_probab_prime_p(q.get_mpz_t(), 40));
}

TEST_CASE("group: named moduli are used for standard sizes") {
    Rng rng(9);
    auto [params, secrets] = group_setup(1024, rng);
    CHECK_EQ(params.g, 2);
    CHECK_EQ(mpz_sizeinbase(params.p.get_mpz_t(), 2), 1024);
    CHECK_EQ(params.element_width(), 128);
    CHECK(named_safe_prime(1024).has_value());
    CHECK(named_safe_prime(1536).has_value());
    CHECK(named_safe_prime(2048).has_value());
    CHECK_FALSE(named_safe_prime(512).has_value());
}

TEST_CASE("group: fixed-width element encoding") {
    const Bigint v = 0xabcd;
    CHECK_EQ(to_hex(ByteView(bigint_to_fixed(v, 4))), "0000abcd");
    CHECK_EQ(bigint_from_bytes(ByteView(bigint_to_fixed(v, 4))), v);
    CHECK_EQ(bigint_from_bytes(ByteView(bigint_to_fixed(0, 3))), 0);
    CHECK_THROWS_AS(bigint_to_fixed(Bigint(1) << 40, 4), std::invalid_argument);
}

TEST_CASE("registration: masked-key derivation matches the oracle") {
    ToyNet net;
    // Frozen vector: id = "v" zero-padded to 32 bytes, s = 32 x 0x22,
    // computed with a standalone SHA-256 script.
    const Card card = net.ta->register_vehicle(VehicleId{to_bytes("v2")});
    CHECK_NE(card.k.hex(), "");

    auto [params, secrets] = group_setup_explicit(23, 5, 6, testutil::filled_key(0x22));
    Ta fresh(params, secrets, kWindowMs);
    const Card first = fresh.register_vehicle(VehicleId{to_bytes("v")});
    CHECK_EQ(first.k.hex(),
             "9359bc0b542b929de5fa31bef8f5073f04acbe34d0d027741febe15bf740b827");

    CHECK_FAILS(fresh.register_vehicle(VehicleId{to_bytes("v")}), Err::kDuplicateIdentity);
    const Card second = fresh.register_vehicle(VehicleId{to_bytes("w")});
    CHECK_NE(second.k, first.k);
}

TEST_CASE("authentication: honest run agrees on the session key") {
    ToyNet net;
    const Timestamp now{1'000};
    const AuthRequest req = net.obu->make_request(net.rng, now);
    const ForwardedRequest fwd = net.rsu->forward(req, now);
    CHECK_EQ(fwd.rsu_id, to_bytes("rsu-1"));
    auto [resp, ta_key] = net.ta->handle_auth(fwd.request, now, net.rng);
    const SymmetricKey obu_key = net.obu->complete(resp);
    CHECK_EQ(obu_key, ta_key);
    CHECK(net.obu->session_key().has_value());
}

TEST_CASE("authentication: key agreement holds across randomized runs") {
    Rng rng(0xD0D0);
    auto [params, secrets] = group_setup(128, rng);
    Ta ta(params, secrets, kWindowMs);
    Obu obu(ta.register_vehicle(VehicleId{to_bytes("veh-128")}));
    for (int i = 0; i < 100; ++i) {
        const Timestamp now{static_cast<std::uint64_t>(2'000 + i)};
        const AuthRequest req = obu.make_request(rng, now);
        auto [resp, ta_key] = ta.handle_auth(req, now, rng);
        CHECK_EQ(obu.complete(resp), ta_key);
    }
}

TEST_CASE("authentication: identities wider than the mask still work") {
    ToyNet net;
    const VehicleId wide{Rng(5).bytes(40)};  // truncated to 32 for masking
    Obu obu(net.ta->register_vehicle(wide));
    const Timestamp now{3'000};
    const AuthRequest req = obu.make_request(net.rng, now);
    auto [resp, ta_key] = net.ta->handle_auth(req, now, net.rng);
    CHECK_EQ(obu.complete(resp), ta_key);
}

TEST_CASE("authentication: per-role operation counts are exact") {
    ToyNet net;
    net.obu->crypto().ops().reset();
    net.ta->crypto().ops().reset();
    net.rsu->crypto().ops().reset();

    const Timestamp now{4'000};
    const AuthRequest req = net.obu->make_request(net.rng, now);
    CHECK_EQ(net.obu->crypto().ops(),
             OpCounter{.hash_ops = 3, .exp_ops = 2, .xor_ops = 1});

    const ForwardedRequest fwd = net.rsu->forward(req, now);
    CHECK_EQ(net.rsu->crypto().ops(), OpCounter{});

    auto [resp, ta_key] = net.ta->handle_auth(fwd.request, now, net.rng);
    CHECK_EQ(net.ta->crypto().ops(),
             OpCounter{.hash_ops = 6, .exp_ops = 3, .xor_ops = 2});

    (void)net.obu->complete(resp);
    CHECK_EQ(net.obu->crypto().ops(),
             OpCounter{.hash_ops = 5, .exp_ops = 3, .xor_ops = 1});
    (void)ta_key;
}

TEST_CASE("authentication: single-field corruption always rejects") {
    ToyNet net;
    const Timestamp now{5'000};

    SUBCASE("stale request stops at the roadside unit and the authority") {
        const AuthRequest req = net.obu->make_request(net.rng, Timestamp{100});
        CHECK_FAILS(net.rsu->forward(req, Timestamp{100 + kWindowMs + 1}),
                    Err::kStaleTimestamp);
        CHECK_FAILS(net.ta->handle_auth(req, Timestamp{100 + kWindowMs + 1}, net.rng),
                    Err::kStaleTimestamp);
    }
    SUBCASE("corrupted ephemeral") {
        AuthRequest req = net.obu->make_request(net.rng, now);
        req.ephemeral = (req.ephemeral + 1) % 23;
        CHECK_FAILS(net.ta->handle_auth(req, now, net.rng), Err::kBadDidv);
    }
    SUBCASE("corrupted masked identity") {
        AuthRequest req = net.obu->make_request(net.rng, now);
        req.aid[0] ^= 1;
        CHECK_FAILS(net.ta->handle_auth(req, now, net.rng), Err::kBadDidv);
    }
    SUBCASE("corrupted identity verifier") {
        AuthRequest req = net.obu->make_request(net.rng, now);
        req.didv.bytes[0] ^= 1;
        CHECK_FAILS(net.ta->handle_auth(req, now, net.rng), Err::kBadDidv);
    }
    SUBCASE("corrupted request verifier") {
        AuthRequest req = net.obu->make_request(net.rng, now);
        req.cv.bytes[0] ^= 1;
        CHECK_FAILS(net.ta->handle_auth(req, now, net.rng), Err::kBadCv);
    }
    SUBCASE("shifted timestamp within the window") {
        AuthRequest req = net.obu->make_request(net.rng, now);
        req.t.ms += 1;
        CHECK_FAILS(net.ta->handle_auth(req, now, net.rng), Err::kBadCv);
    }
}

TEST_CASE("completion: confirmation gating") {
    ToyNet net;
    const Timestamp now{6'000};
    const AuthRequest req = net.obu->make_request(net.rng, now);
    auto [resp, ta_key] = net.ta->handle_auth(req, now, net.rng);

    SUBCASE("tampered authority ephemeral") {
        AuthResponse bad = resp;
        // 0^alpha = 0 can never equal the honest shared secret in [1, p-1].
        bad.ta_ephemeral = 0;
        CHECK_FAILS(net.obu->complete(bad), Err::kBadConfirmation);
    }
    SUBCASE("tampered confirmation hash") {
        AuthResponse bad = resp;
        bad.confirm.bytes[0] ^= 1;
        CHECK_FAILS(net.obu->complete(bad), Err::kBadConfirmation);
    }
    SUBCASE("masked-identity mismatch means no pending request") {
        AuthResponse bad = resp;
        bad.aid[0] ^= 1;
        CHECK_FAILS(net.obu->complete(bad), Err::kNoPendingRequest);
    }
    SUBCASE("completion consumes the pending request") {
        (void)net.obu->complete(resp);
        CHECK_FAILS(net.obu->complete(resp), Err::kNoPendingRequest);
    }
    (void)ta_key;
}

TEST_CASE("wire round-trips for baseline frames") {
    ToyNet net;
    const SystemParams& params = net.ta->params();
    const Timestamp now{7'000};

    const AuthRequest req = net.obu->make_request(net.rng, now);
    const Bytes req_frame = req.serialize(params);
    CHECK_EQ(AuthRequest::deserialize(ByteView(req_frame)).serialize(params), req_frame);

    const ForwardedRequest fwd = net.rsu->forward(req, now);
    const Bytes fwd_frame = fwd.serialize(params);
    CHECK_EQ(ForwardedRequest::deserialize(ByteView(fwd_frame)).serialize(params),
             fwd_frame);

    auto [resp, key] = net.ta->handle_auth(req, now, net.rng);
    const Bytes resp_frame = resp.serialize(params);
    CHECK_EQ(AuthResponse::deserialize(ByteView(resp_frame)).serialize(params),
             resp_frame);
    (void)key;

    CHECK_FAILS(AuthRequest::deserialize(ByteView(resp_frame)), Err::kMalformedMessage);
}
