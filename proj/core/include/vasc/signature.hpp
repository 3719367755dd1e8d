// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vasc/bytes.hpp"
#include "vasc/rng.hpp"

namespace vasc {

inline constexpr std::size_t kSigPublicKeyLen = 32;
inline constexpr std::size_t kSigSecretKeyLen = 64;
inline constexpr std::size_t kSignatureLen = 64;

// Ed25519 pair used by roadside units to sign notification messages.
struct SignatureKeyPair {
    Bytes secret_key;
    Bytes public_key;
};

SignatureKeyPair signature_keypair(Rng& rng);
Bytes sign_detached(ByteView secret_key, ByteView message);
// False on any mismatch, including malformed key or signature lengths.
bool verify_detached(ByteView public_key, ByteView message, ByteView signature);

}  // namespace vasc
