// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/signature.hpp"

#include <sodium.h>

#include <stdexcept>

namespace vasc {

static_assert(crypto_sign_PUBLICKEYBYTES == kSigPublicKeyLen);
static_assert(crypto_sign_SECRETKEYBYTES == kSigSecretKeyLen);
static_assert(crypto_sign_BYTES == kSignatureLen);

SignatureKeyPair signature_keypair(Rng& rng) {
    const auto seed = rng.key32();
    SignatureKeyPair pair;
    pair.secret_key.resize(kSigSecretKeyLen);
    pair.public_key.resize(kSigPublicKeyLen);
    crypto_sign_seed_keypair(pair.public_key.data(), pair.secret_key.data(), seed.data());
    return pair;
}

Bytes sign_detached(ByteView secret_key, ByteView message) {
    if (secret_key.size() != kSigSecretKeyLen) {
        throw std::invalid_argument("bad signing key length");
    }
    Bytes sig(kSignatureLen);
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                         secret_key.data());
    return sig;
}

bool verify_detached(ByteView public_key, ByteView message, ByteView signature) {
    if (public_key.size() != kSigPublicKeyLen || signature.size() != kSignatureLen) {
        return false;
    }
    return crypto_sign_verify_detached(signature.data(), message.data(), message.size(),
                                       public_key.data()) == 0;
}

}  // namespace vasc
