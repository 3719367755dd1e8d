// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/aead.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

#include "vasc/errors.hpp"

namespace vasc {

static_assert(crypto_aead_xchacha20poly1305_ietf_KEYBYTES == kSymKeyLen);
static_assert(crypto_aead_xchacha20poly1305_ietf_NPUBBYTES == kNonceLen);
static_assert(crypto_aead_xchacha20poly1305_ietf_ABYTES == kMacLen);

SymmetricKey SymmetricKey::from_bytes(ByteView raw) {
    if (raw.size() != kSymKeyLen) {
        throw std::invalid_argument("symmetric key must be exactly 32 bytes");
    }
    SymmetricKey key;
    std::memcpy(key.bytes.data(), raw.data(), kSymKeyLen);
    return key;
}

Bytes Ciphertext::serialize() const {
    Bytes out;
    out.reserve(kNonceLen + body.size() + kMacLen);
    out.insert(out.end(), nonce.begin(), nonce.end());
    out.insert(out.end(), body.begin(), body.end());
    out.insert(out.end(), mac.begin(), mac.end());
    return out;
}

Ciphertext Ciphertext::deserialize(ByteView raw) {
    if (raw.size() < kNonceLen + kMacLen) {
        fail(Err::kMalformedMessage, "ciphertext shorter than nonce + mac");
    }
    Ciphertext ct;
    std::memcpy(ct.nonce.data(), raw.data(), kNonceLen);
    ct.body.assign(raw.begin() + kNonceLen, raw.end() - kMacLen);
    std::memcpy(ct.mac.data(), raw.data() + raw.size() - kMacLen, kMacLen);
    return ct;
}

Ciphertext sym_encrypt(const SymmetricKey& key, ByteView plaintext, Rng& rng) {
    Ciphertext ct;
    rng.fill(ct.nonce.data(), ct.nonce.size());
    ct.body.resize(plaintext.size());
    unsigned long long mac_len = 0;
    crypto_aead_xchacha20poly1305_ietf_encrypt_detached(
        ct.body.data(), ct.mac.data(), &mac_len, plaintext.data(), plaintext.size(),
        nullptr, 0, nullptr, ct.nonce.data(), key.bytes.data());
    return ct;
}

Bytes sym_decrypt(const SymmetricKey& key, const Ciphertext& ct) {
    Bytes plaintext(ct.body.size());
    const int rc = crypto_aead_xchacha20poly1305_ietf_decrypt_detached(
        plaintext.data(), nullptr, ct.body.data(), ct.body.size(), ct.mac.data(),
        nullptr, 0, ct.nonce.data(), key.bytes.data());
    if (rc != 0) {
        fail(Err::kAuthenticationFailure, "ciphertext failed to authenticate");
    }
    return plaintext;
}

}  // namespace vasc
