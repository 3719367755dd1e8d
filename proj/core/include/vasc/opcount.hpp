// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace vasc {

// Abstract cost of a protocol run, tallied per role. Only operations the
// comparison tables price are counted: protocol hash invocations, modular
// exponentiations, elliptic-curve scalar multiplications (zero in both
// implemented schemes but present in the reference formulas), symmetric
// encryptions/decryptions, and bytewise xors of key material.
struct OpCounter {
    std::uint64_t hash_ops = 0;
    std::uint64_t exp_ops = 0;
    std::uint64_t ecc_mul_ops = 0;
    std::uint64_t enc_ops = 0;
    std::uint64_t xor_ops = 0;

    void reset() { *this = OpCounter{}; }
    bool operator==(const OpCounter&) const = default;

    OpCounter& operator+=(const OpCounter& other) {
        hash_ops += other.hash_ops;
        exp_ops += other.exp_ops;
        ecc_mul_ops += other.ecc_mul_ops;
        enc_ops += other.enc_ops;
        xor_ops += other.xor_ops;
        return *this;
    }
    friend OpCounter operator+(OpCounter a, const OpCounter& b) { return a += b; }
    friend OpCounter operator-(const OpCounter& a, const OpCounter& b) {
        return OpCounter{a.hash_ops - b.hash_ops, a.exp_ops - b.exp_ops,
                         a.ecc_mul_ops - b.ecc_mul_ops, a.enc_ops - b.enc_ops,
                         a.xor_ops - b.xor_ops};
    }
};

}  // namespace vasc
