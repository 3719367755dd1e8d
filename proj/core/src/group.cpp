// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/group.hpp"

#include <stdexcept>

namespace vasc {

namespace {

// RFC 2409 Oakley group 2 (1024-bit) and RFC 3526 groups 5 and 14
// (1536/2048-bit). All are safe primes with generator 2.
constexpr const char* kModp1024 =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE65381FFFFFFFFFFFFFFFF";

constexpr const char* kModp1536 =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA237327FFFFFFFFFFFFFFFF";

constexpr const char* kModp2048 =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF";

bool is_probable_prime(const Bigint& v) {
    return mpz_probab_prime_p(v.get_mpz_t(), 40) != 0;
}

}  // namespace

Bytes SystemParams::element_bytes(const Bigint& v) const {
    return bigint_to_fixed(v, element_width());
}

Bytes bigint_to_fixed(const Bigint& v, std::size_t width) {
    Bytes out(width, 0);
    std::size_t count = 0;
    if (mpz_sgn(v.get_mpz_t()) != 0) {
        const std::size_t needed = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
        if (needed > width) {
            throw std::invalid_argument("value wider than requested encoding");
        }
        mpz_export(out.data() + (width - needed), &count, 1, 1, 1, 0, v.get_mpz_t());
    }
    return out;
}

Bigint bigint_from_bytes(ByteView raw) {
    Bigint v;
    if (!raw.empty()) {
        mpz_import(v.get_mpz_t(), raw.size(), 1, 1, 1, 0, raw.data());
    }
    return v;
}

std::string bigint_to_hex(const Bigint& v) {
    return v.get_str(16);
}

Bigint bigint_from_hex(const std::string& hex) {
    return Bigint(hex, 16);
}

Bigint mod_exp(const Bigint& base, const Bigint& exponent, const Bigint& modulus) {
    Bigint out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(),
             modulus.get_mpz_t());
    return out;
}

Bigint mod_exp(CryptoCtx& ctx, const Bigint& base, const Bigint& exponent,
               const Bigint& modulus) {
    ++ctx.ops().exp_ops;
    return mod_exp(base, exponent, modulus);
}

Bigint random_below(Rng& rng, const Bigint& bound) {
    if (mpz_sgn(bound.get_mpz_t()) <= 0) {
        throw std::invalid_argument("random_below requires a positive bound");
    }
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    const std::size_t width = (bits + 7) / 8;
    while (true) {
        Bytes draw = rng.bytes(width);
        // Mask excess high bits so the rejection rate stays below 1/2.
        const unsigned excess = static_cast<unsigned>(width * 8 - bits);
        if (excess > 0) {
            draw[0] &= static_cast<std::uint8_t>(0xff >> excess);
        }
        Bigint candidate = bigint_from_bytes(ByteView(draw));
        if (candidate < bound) return candidate;
    }
}

Bigint random_exponent(Rng& rng, const Bigint& p) {
    if (p < 4) {
        throw std::invalid_argument("modulus too small for an exponent range");
    }
    return 1 + random_below(rng, p - 2);
}

std::optional<Bigint> named_safe_prime(unsigned bits) {
    switch (bits) {
        case 1024: return bigint_from_hex(kModp1024);
        case 1536: return bigint_from_hex(kModp1536);
        case 2048: return bigint_from_hex(kModp2048);
        default: return std::nullopt;
    }
}

Bigint generate_safe_prime(Rng& rng, unsigned bits) {
    if (bits < 4) {
        throw std::invalid_argument("safe prime needs at least 4 bits");
    }
    while (true) {
        // Draw q of bits-1 bits with the top bit forced so p = 2q+1 has
        // exactly the requested size; force q odd.
        Bigint q = random_below(rng, Bigint(1) << (bits - 1));
        mpz_setbit(q.get_mpz_t(), bits - 2);
        mpz_setbit(q.get_mpz_t(), 0);
        if (!is_probable_prime(q)) continue;
        const Bigint p = 2 * q + 1;
        if (is_probable_prime(p)) return p;
    }
}

namespace {

Bigint find_generator(const Bigint& p) {
    // For a safe prime p = 2q+1, any g with g^2 != 1 and g^q != 1 generates
    // the whole group; the first few small integers always contain one.
    const Bigint q = (p - 1) / 2;
    for (Bigint g = 2; g < p; ++g) {
        if (mod_exp(g, 2, p) != 1 && mod_exp(g, q, p) != 1) return g;
    }
    throw std::logic_error("no generator found (modulus is not a safe prime)");
}

}  // namespace

std::pair<SystemParams, TaGroupSecrets> group_setup(unsigned bits, Rng& rng) {
    if (bits < 16) {
        throw std::invalid_argument("modulus below 16 bits; use explicit toy params");
    }
    SystemParams params;
    params.bits = bits;
    if (auto named = named_safe_prime(bits)) {
        params.p = *named;
        params.g = 2;  // the named groups publish 2 as generator
    } else {
        params.p = generate_safe_prime(rng, bits);
        params.g = find_generator(params.p);
    }
    TaGroupSecrets secrets;
    secrets.x = random_exponent(rng, params.p);
    secrets.s = rng.key32();
    params.y = mod_exp(params.g, secrets.x, params.p);
    return {std::move(params), std::move(secrets)};
}

std::pair<SystemParams, TaGroupSecrets> group_setup_explicit(
    const Bigint& p, const Bigint& g, const Bigint& x,
    std::array<std::uint8_t, 32> s) {
    if (!(g > 1 && g < p)) {
        throw std::invalid_argument("generator out of range");
    }
    SystemParams params;
    params.bits = static_cast<unsigned>(mpz_sizeinbase(p.get_mpz_t(), 2));
    params.p = p;
    params.g = g;
    params.y = mod_exp(g, x, p);
    TaGroupSecrets secrets;
    secrets.x = x;
    secrets.s = s;
    return {std::move(params), std::move(secrets)};
}

}  // namespace vasc
