// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/hash.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

namespace vasc {

std::string Digest::hex() const {
    return to_hex(view());
}

Digest Digest::from_hex(std::string_view hex) {
    return from_bytes(vasc::from_hex(hex));
}

Digest Digest::from_bytes(ByteView raw) {
    if (raw.size() != kDigestLen) {
        throw std::invalid_argument("digest must be exactly 32 bytes");
    }
    Digest d;
    std::memcpy(d.bytes.data(), raw.data(), kDigestLen);
    return d;
}

std::size_t DigestHasher::operator()(const Digest& d) const {
    // The digest is already uniform; its first bytes are a fine table key.
    std::size_t h;
    std::memcpy(&h, d.bytes.data(), sizeof(h));
    return h;
}

Digest hash_parts(HashDomain domain, std::span<const ByteView> parts) {
    static_assert(crypto_hash_sha256_BYTES == kDigestLen);
    crypto_hash_sha256_state state;
    crypto_hash_sha256_init(&state);
    const auto tag = static_cast<std::uint8_t>(domain);
    crypto_hash_sha256_update(&state, &tag, 1);
    for (ByteView part : parts) {
        Bytes len = u64_be(part.size());
        crypto_hash_sha256_update(&state, len.data(), len.size());
        if (!part.empty()) {
            crypto_hash_sha256_update(&state, part.data(), part.size());
        }
    }
    Digest out;
    crypto_hash_sha256_final(&state, out.bytes.data());
    return out;
}

Digest hash_parts(HashDomain domain, std::initializer_list<ByteView> parts) {
    return hash_parts(domain, std::span<const ByteView>(parts.begin(), parts.size()));
}

}  // namespace vasc
