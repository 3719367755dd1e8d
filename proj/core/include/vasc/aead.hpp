// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>

#include "vasc/bytes.hpp"
#include "vasc/rng.hpp"

namespace vasc {

inline constexpr std::size_t kSymKeyLen = 32;
inline constexpr std::size_t kNonceLen = 24;
inline constexpr std::size_t kMacLen = 16;

struct SymmetricKey {
    std::array<std::uint8_t, kSymKeyLen> bytes{};

    auto operator<=>(const SymmetricKey&) const = default;
    ByteView view() const { return ByteView(bytes.data(), bytes.size()); }
    static SymmetricKey from_bytes(ByteView raw);
};

// Authenticated ciphertext. The serialized form is nonce || body || mac
// with no framing, so its length is always nonce + plaintext + mac; any
// container that embeds one is responsible for delimiting it.
struct Ciphertext {
    std::array<std::uint8_t, kNonceLen> nonce{};
    Bytes body;
    std::array<std::uint8_t, kMacLen> mac{};

    bool operator==(const Ciphertext&) const = default;
    Bytes serialize() const;
    // Throws MalformedMessage when raw is shorter than nonce + mac.
    static Ciphertext deserialize(ByteView raw);
};

Ciphertext sym_encrypt(const SymmetricKey& key, ByteView plaintext, Rng& rng);
// Throws AuthenticationFailure when the mac does not verify.
Bytes sym_decrypt(const SymmetricKey& key, const Ciphertext& ct);

}  // namespace vasc
