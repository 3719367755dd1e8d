// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "vasc/bytes.hpp"
#include "vasc/crypto_ctx.hpp"
#include "vasc/rng.hpp"

namespace vasc {

using Bigint = mpz_class;

// Multiplicative group mod a safe prime, as the baseline scheme's F_p.
struct SystemParams {
    unsigned bits = 0;
    Bigint p;
    Bigint g;
    Bigint y;  // g^x mod p, the authority's public key

    std::size_t element_width() const { return (bits + 7) / 8; }
    // Fixed-width big-endian encoding; canonical form for hashing and wire.
    Bytes element_bytes(const Bigint& v) const;
};

struct TaGroupSecrets {
    Bigint x;
    std::array<std::uint8_t, 32> s{};
};

Bytes bigint_to_fixed(const Bigint& v, std::size_t width);
Bigint bigint_from_bytes(ByteView raw);
std::string bigint_to_hex(const Bigint& v);
Bigint bigint_from_hex(const std::string& hex);

Bigint mod_exp(const Bigint& base, const Bigint& exponent, const Bigint& modulus);
// Counted variant: one priced modular exponentiation.
Bigint mod_exp(CryptoCtx& ctx, const Bigint& base, const Bigint& exponent,
               const Bigint& modulus);

// Uniform in [0, bound) by rejection on fixed-width draws.
Bigint random_below(Rng& rng, const Bigint& bound);
// Ephemeral/secret exponent: uniform in [1, p-2], degenerate values excluded.
Bigint random_exponent(Rng& rng, const Bigint& p);

// Well-known safe primes (1024, 1536, 2048 bits), generator 2. Using these
// for standard sizes keeps setup instant; other sizes are searched for.
std::optional<Bigint> named_safe_prime(unsigned bits);

// Deterministic search for a safe prime of exactly `bits` bits, driven by
// the caller's rng. Practical for toy/test sizes; large standard sizes
// should use named_safe_prime.
Bigint generate_safe_prime(Rng& rng, unsigned bits);

// Picks p and a generator, samples x, publishes y = g^x mod p.
std::pair<SystemParams, TaGroupSecrets> group_setup(unsigned bits, Rng& rng);

// Explicit toy parameters for exhaustive tests; computes y from x and
// validates 1 < g < p.
std::pair<SystemParams, TaGroupSecrets> group_setup_explicit(
    const Bigint& p, const Bigint& g, const Bigint& x,
    std::array<std::uint8_t, 32> s);

}  // namespace vasc
