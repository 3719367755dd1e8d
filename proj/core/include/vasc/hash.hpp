// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "vasc/bytes.hpp"

namespace vasc {

inline constexpr std::size_t kDigestLen = 32;

struct Digest {
    std::array<std::uint8_t, kDigestLen> bytes{};

    auto operator<=>(const Digest&) const = default;
    ByteView view() const { return ByteView(bytes.data(), bytes.size()); }
    std::string hex() const;
    static Digest from_hex(std::string_view hex);
    static Digest from_bytes(ByteView raw);
};

struct DigestHasher {
    std::size_t operator()(const Digest& d) const;
};

// The protocols use three hash functions: h in the smart-card scheme,
// H0 and H1 in the baseline. All are SHA-256 over a canonical encoding,
// separated by a leading domain tag so h(x) never collides with H0(x).
// The two extra domains serve infrastructure (bloom positions, rng
// forking) and never count as protocol hash operations.
enum class HashDomain : std::uint8_t {
    kH = 0x00,
    kH0 = 0x01,
    kH1 = 0x02,
    kBloom = 0xB0,
    kFork = 0xC0,
};

// Canonical multi-part encoding: the domain tag, then for each part its
// 8-byte big-endian length followed by its bytes. The length prefixes make
// the part boundaries unambiguous: hash({"ab"}) != hash({"a","b"}).
Digest hash_parts(HashDomain domain, std::initializer_list<ByteView> parts);
Digest hash_parts(HashDomain domain, std::span<const ByteView> parts);

}  // namespace vasc
