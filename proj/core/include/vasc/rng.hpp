// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

#include "vasc/bytes.hpp"

namespace vasc {

// Deterministic random source. Every byte of randomness in the artifact
// (nonces, exponents, latency draws, drop decisions) comes from one of
// these, so a fixed seed reproduces a run bit for bit. Draws go through
// the raw engine, never through standard distributions, whose output is
// unspecified across implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, bound); bound must be positive. Rejection sampling,
    // so the distribution is exact.
    std::uint64_t below(std::uint64_t bound);

    // Uniform in [lo, hi], both ends inclusive.
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi);

    // Uniform double in [0, 1) with 53 bits of precision.
    double unit();

    void fill(std::uint8_t* out, std::size_t n);
    Bytes bytes(std::size_t n);
    std::array<std::uint8_t, 32> key32();

    // Independent substream derived from this stream and a label.
    // Forking does not disturb the parent beyond one draw.
    Rng fork(std::string_view label);

  private:
    std::mt19937_64 engine_;
};

}  // namespace vasc
