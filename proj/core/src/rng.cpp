// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/rng.hpp"

#include <stdexcept>

#include "vasc/hash.hpp"

namespace vasc {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("Rng::below requires a positive bound");
    }
    // Reject draws from the incomplete final interval.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
        draw = engine_();
    } while (draw >= limit);
    return draw % bound;
}

std::uint64_t Rng::between(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) {
        throw std::invalid_argument("Rng::between requires lo <= hi");
    }
    const std::uint64_t width = hi - lo;
    if (width == UINT64_MAX) return engine_();
    return lo + below(width + 1);
}

double Rng::unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

void Rng::fill(std::uint8_t* out, std::size_t n) {
    std::size_t i = 0;
    while (i < n) {
        std::uint64_t word = engine_();
        for (int shift = 56; shift >= 0 && i < n; shift -= 8) {
            out[i++] = static_cast<std::uint8_t>(word >> shift);
        }
    }
}

Bytes Rng::bytes(std::size_t n) {
    Bytes out(n);
    fill(out.data(), n);
    return out;
}

std::array<std::uint8_t, 32> Rng::key32() {
    std::array<std::uint8_t, 32> out{};
    fill(out.data(), out.size());
    return out;
}

Rng Rng::fork(std::string_view label) {
    Bytes draw = u64_be(engine_());
    Bytes name = to_bytes(label);
    Digest d = hash_parts(HashDomain::kFork, {ByteView(draw), ByteView(name)});
    return Rng(read_u64_be(d.view()));
}

}  // namespace vasc
