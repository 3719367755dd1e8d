// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "helpers.hpp"
#include "vasc/aead.hpp"
#include "vasc/bloom.hpp"
#include "vasc/bytes.hpp"
#include "vasc/crypto_ctx.hpp"
#include "vasc/hash.hpp"
#include "vasc/opcount.hpp"
#include "vasc/rng.hpp"
#include "vasc/signature.hpp"
#include "vasc/timestamp.hpp"

using namespace vasc;

namespace {

ByteView bv(const Bytes& b) {
    return ByteView(b);
}

}  // namespace

TEST_CASE("hash: frozen vectors from an independent SHA-256 oracle") {
    // Empty part list hashes the lone domain tag byte.
    CHECK_EQ(hash_parts(HashDomain::kH, {}).hex(),
             "6e340b9cffb37a989ca544e6bb780a2c78901d3fb33738768511a30617afa01d");
    CHECK_EQ(hash_parts(HashDomain::kH0, {}).hex(),
             "4bf5122f344554c53bde2ebb8cd2b7e3d1600ad631c385a5d7cce23c7785459a");
    CHECK_EQ(hash_parts(HashDomain::kH1, {}).hex(),
             "dbc1b4c900ffe48d575b5da5c638040125f65db0fe3e24494b76ea986457d986");

    const Bytes abc = to_bytes("abc");
    CHECK_EQ(hash_parts(HashDomain::kH, {bv(abc)}).hex(),
             "3ff3f22b0f8c2a1553022e4cba10e16915655cf0d3f4c908c950ab539ec2d9b6");

    const Bytes ab = to_bytes("ab"), c = to_bytes("c"), a = to_bytes("a"),
                bc = to_bytes("bc");
    CHECK_EQ(hash_parts(HashDomain::kH, {bv(ab), bv(c)}).hex(),
             "ecaf8ae980db6db42f40696b8fbf608f3895ba178bd57b6bcfb8a70987d6ba76");
    CHECK_EQ(hash_parts(HashDomain::kH, {bv(a), bv(bc)}).hex(),
             "4af85c51b2a374e7a7b1cbbbb23ff72bb007e6caf5f45108350a3e272f723f41");
}

TEST_CASE("hash: part boundaries and domains separate preimages") {
    const Bytes ab = to_bytes("ab"), a = to_bytes("a"), b = to_bytes("b");
    CHECK_NE(hash_parts(HashDomain::kH, {bv(ab)}),
             hash_parts(HashDomain::kH, {bv(a), bv(b)}));
    CHECK_NE(hash_parts(HashDomain::kH, {bv(ab)}),
             hash_parts(HashDomain::kH0, {bv(ab)}));
    CHECK_NE(hash_parts(HashDomain::kH0, {bv(ab)}),
             hash_parts(HashDomain::kH1, {bv(ab)}));
    CHECK_EQ(hash_parts(HashDomain::kH, {bv(ab)}),
             hash_parts(HashDomain::kH, {bv(ab)}));
}

TEST_CASE("hash: injective over random part-lists at test scale") {
    Rng rng(0x1001);
    std::set<Digest> seen;
    std::set<std::vector<Bytes>> lists;
    for (int i = 0; i < 1000; ++i) {
        std::vector<Bytes> parts;
        const std::size_t n = rng.below(4);
        for (std::size_t j = 0; j < n; ++j) {
            parts.push_back(rng.bytes(rng.below(12)));
        }
        if (!lists.insert(parts).second) continue;  // genuinely identical list
        std::vector<ByteView> views(parts.begin(), parts.end());
        const Digest d = hash_parts(HashDomain::kH, std::span<const ByteView>(views));
        CHECK(seen.insert(d).second);
    }
}

TEST_CASE("aead: round-trip, length, and nonce freshness") {
    Rng rng(0x2002);
    const SymmetricKey key = SymmetricKey::from_bytes(ByteView(rng.key32()));
    const Bytes msg = rng.bytes(32);

    const Ciphertext ct = sym_encrypt(key, bv(msg), rng);
    CHECK_EQ(sym_decrypt(key, ct), msg);
    // Serialized form is nonce || body || mac, nothing else.
    CHECK_EQ(ct.serialize().size(), kNonceLen + 32 + kMacLen);

    const Ciphertext ct2 = sym_encrypt(key, bv(msg), rng);
    CHECK_NE(ct.nonce, ct2.nonce);
    CHECK_NE(ct.serialize(), ct2.serialize());
    CHECK_EQ(Ciphertext::deserialize(ByteView(ct.serialize())), ct);
}

TEST_CASE("aead: wrong key never decrypts (1000 random key pairs)") {
    Rng rng(0x3003);
    int spurious = 0;
    for (int i = 0; i < 1000; ++i) {
        const SymmetricKey k1 = SymmetricKey::from_bytes(ByteView(rng.key32()));
        const SymmetricKey k2 = SymmetricKey::from_bytes(ByteView(rng.key32()));
        const Bytes msg = rng.bytes(16);
        const Ciphertext ct = sym_encrypt(k1, bv(msg), rng);
        try {
            (void)sym_decrypt(k2, ct);
            ++spurious;
        } catch (const ProtocolError& e) {
            CHECK_EQ(err_name(e.code()), err_name(Err::kAuthenticationFailure));
        }
    }
    CHECK_EQ(spurious, 0);
}

TEST_CASE("aead: every single-bit corruption fails authentication") {
    Rng rng(0x4004);
    const SymmetricKey key = SymmetricKey::from_bytes(ByteView(rng.key32()));
    const Bytes msg = rng.bytes(8);
    const Bytes wire = sym_encrypt(key, bv(msg), rng).serialize();

    for (std::size_t bit = 0; bit < wire.size() * 8; ++bit) {
        Bytes corrupted = wire;
        corrupted[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        CHECK_FAILS(sym_decrypt(key, Ciphertext::deserialize(ByteView(corrupted))),
                    Err::kAuthenticationFailure);
    }
}

TEST_CASE("signature: verify contract") {
    Rng rng(0x5005);
    const SignatureKeyPair pair = signature_keypair(rng);
    const SignatureKeyPair other = signature_keypair(rng);
    const Bytes msg = to_bytes("signed payload");

    const Bytes sig = sign_detached(bv(pair.secret_key), bv(msg));
    CHECK(verify_detached(bv(pair.public_key), bv(msg), bv(sig)));

    Bytes altered = msg;
    altered[0] ^= 1;
    CHECK_FALSE(verify_detached(bv(pair.public_key), bv(altered), bv(sig)));
    CHECK_FALSE(verify_detached(bv(other.public_key), bv(msg), bv(sig)));

    Bytes bad_sig = sig;
    bad_sig[10] ^= 0x40;
    CHECK_FALSE(verify_detached(bv(pair.public_key), bv(msg), bv(bad_sig)));
    CHECK_FALSE(verify_detached(bv(pair.public_key), bv(msg), ByteView()));
}

TEST_CASE("bloom: membership basics") {
    BloomFilter bf(256, 4);
    const Bytes x = to_bytes("hello"), y = to_bytes("world");
    CHECK_FALSE(bf.contains(bv(x)));
    bf.insert(bv(x));
    CHECK(bf.contains(bv(x)));
    CHECK_EQ(bf.inserted(), 1);
    CHECK_FALSE(bf.contains(bv(y)));

    CHECK_THROWS_AS(BloomFilter(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(BloomFilter(64, 0), std::invalid_argument);
    CHECK_THROWS_AS(BloomFilter(64, 17), std::invalid_argument);
}

TEST_CASE("bloom: sizing formula") {
    const BloomFilter bf = BloomFilter::sized_for(1000, 0.01);
    CHECK_EQ(bf.bit_count(), 9586);
    CHECK_EQ(bf.hash_count(), 7);

    // An empty filter still has the minimum footprint.
    const BloomFilter empty = BloomFilter::sized_for(0, 0.01);
    CHECK_EQ(empty.bit_count(), 64);
    CHECK_EQ(empty.hash_count(), 1);

    // Tiny batches hit the minimum size; k is clamped to 16.
    const BloomFilter small = BloomFilter::sized_for(3, 0.01);
    CHECK_EQ(small.bit_count(), 64);
    CHECK_EQ(small.hash_count(), 15);
}

TEST_CASE("bloom: position derivation matches the independent oracle") {
    // First probe position of "item" in a 9586-bit filter is 3128 (computed
    // with a standalone SHA-256 script over the documented encoding), which
    // is bit 0 of bits-byte 391.
    BloomFilter bf(9586, 1);
    bf.insert(bv(to_bytes("item")));
    const Bytes ser = bf.serialize();
    const std::size_t header = 8 + 4 + 8;  // m, k, inserted
    CHECK_EQ(ser[header + 391], 0x01);
    for (std::size_t i = 0; i < (9586 + 7) / 8; ++i) {
        if (i != 391) CHECK_EQ(ser[header + i], 0x00);
    }
}

TEST_CASE("bloom: serialization round-trip") {
    Rng rng(0x6006);
    BloomFilter bf = BloomFilter::sized_for(50, 0.02);
    for (int i = 0; i < 50; ++i) {
        bf.insert(bv(rng.bytes(12)));
    }
    const BloomFilter back = BloomFilter::deserialize(ByteView(bf.serialize()));
    CHECK(back == bf);
    CHECK_FAILS(BloomFilter::deserialize(ByteView(bf.serialize()).subspan(0, 10)),
                Err::kMalformedMessage);
}

TEST_CASE("bloom: no false negatives, bounded false positives") {
    Rng rng(0x7007);
    BloomFilter bf(9586, 7);
    std::vector<Bytes> members;
    for (int i = 0; i < 1000; ++i) {
        members.push_back(rng.bytes(16));
        bf.insert(bv(members.back()));
    }
    for (const Bytes& m : members) {
        CHECK(bf.contains(bv(m)));
    }

    int false_positives = 0;
    const int probes = 100000;
    for (int i = 0; i < probes; ++i) {
        // 24-byte probes cannot collide with any 16-byte member.
        if (bf.contains(bv(rng.bytes(24)))) ++false_positives;
    }
    const double rate = static_cast<double>(false_positives) / probes;
    CHECK_LE(rate, 0.02);  // 2x the ~1% theoretical rate for these parameters
}

TEST_CASE("freshness: inclusive window on both sides") {
    const Timestamp now{10'000};
    const std::uint64_t window = 500;
    CHECK(is_fresh(now, now, window));
    CHECK(is_fresh(Timestamp{9'500}, now, window));
    CHECK_FALSE(is_fresh(Timestamp{9'499}, now, window));
    CHECK(is_fresh(Timestamp{10'500}, now, window));
    CHECK_FALSE(is_fresh(Timestamp{10'501}, now, window));
}

TEST_CASE("rng: determinism, bounds, and forking") {
    Rng a(42), b(42);
    CHECK_EQ(a.bytes(64), b.bytes(64));
    CHECK_EQ(a.next_u64(), b.next_u64());

    Rng c(43);
    for (int i = 0; i < 1000; ++i) {
        CHECK_LT(c.below(17), 17);
        const std::uint64_t v = c.between(5, 9);
        CHECK_GE(v, 5);
        CHECK_LE(v, 9);
        const double u = c.unit();
        CHECK_GE(u, 0.0);
        CHECK_LT(u, 1.0);
    }

    // Forks are deterministic, label-sensitive, and distinct from the parent.
    Rng p1(7), p2(7);
    Rng f1 = p1.fork("alpha");
    Rng f2 = p2.fork("alpha");
    CHECK_EQ(f1.bytes(32), f2.bytes(32));
    Rng p3(7);
    Rng f3 = p3.fork("beta");
    CHECK_NE(f1.bytes(32), f3.bytes(32));
}

TEST_CASE("op counters: reset, additivity, and per-call increments") {
    CryptoCtx ctx;
    Rng rng(0x8008);
    CHECK_EQ(ctx.ops(), OpCounter{});

    const Bytes x = to_bytes("x");
    (void)ctx.h({bv(x)});
    CHECK_EQ(ctx.ops().hash_ops, 1);
    CHECK_EQ(ctx.ops().enc_ops, 0);
    CHECK_EQ(ctx.ops().exp_ops, 0);

    const SymmetricKey key = SymmetricKey::from_bytes(ByteView(rng.key32()));
    const Ciphertext ct = ctx.encrypt(key, bv(x), rng);
    (void)ctx.decrypt(key, ct);
    CHECK_EQ(ctx.ops().enc_ops, 2);  // enc and dec share the counter

    (void)ctx.xor_bytes(key.view(), key.view());
    CHECK_EQ(ctx.ops().xor_ops, 1);

    const OpCounter before = ctx.ops();
    (void)ctx.h0({bv(x)});
    (void)ctx.h1({bv(x)});
    const OpCounter delta = ctx.ops() - before;
    CHECK_EQ(delta.hash_ops, 2);
    CHECK_EQ(before + delta, ctx.ops());

    ctx.ops().reset();
    CHECK_EQ(ctx.ops(), OpCounter{});
}

TEST_CASE("bytes: hex, big-endian integers, xor") {
    const Bytes raw = {0xde, 0xad, 0x00, 0xff};
    CHECK_EQ(to_hex(bv(raw)), "dead00ff");
    CHECK_EQ(from_hex("dead00ff"), raw);
    CHECK_EQ(from_hex("DEAD00FF"), raw);
    CHECK_THROWS_AS(from_hex("abc"), std::invalid_argument);
    CHECK_THROWS_AS(from_hex("zz"), std::invalid_argument);

    CHECK_EQ(u64_be(0x0102030405060708ull),
             Bytes({1, 2, 3, 4, 5, 6, 7, 8}));
    CHECK_EQ(read_u64_be(bv(u64_be(987654321))), 987654321);

    const Bytes a = {0xf0, 0x0f}, b = {0x0f, 0x0f};
    CHECK_EQ(xor_bytes(bv(a), bv(b)), Bytes({0xff, 0x00}));
    CHECK_THROWS_AS(xor_bytes(bv(a), bv(raw)), std::invalid_argument);

    const Bytes hay = to_bytes("one two three");
    CHECK(contains_bytes(bv(hay), bv(to_bytes("two"))));
    CHECK_FALSE(contains_bytes(bv(hay), bv(to_bytes("four"))));
}
