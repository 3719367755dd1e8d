// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <initializer_list>

#include "vasc/aead.hpp"
#include "vasc/bytes.hpp"
#include "vasc/hash.hpp"
#include "vasc/opcount.hpp"
#include "vasc/rng.hpp"

namespace vasc {

// Counted crypto facade. Each role instance owns one; every protocol-priced
// operation goes through it so the per-role OpCounter stays faithful to
// what the role actually computed.
class CryptoCtx {
  public:
    // The smart-card scheme's h.
    Digest h(std::initializer_list<ByteView> parts);
    // The baseline scheme's H0 and H1.
    Digest h0(std::initializer_list<ByteView> parts);
    Digest h1(std::initializer_list<ByteView> parts);

    Ciphertext encrypt(const SymmetricKey& key, ByteView plaintext, Rng& rng);
    Bytes decrypt(const SymmetricKey& key, const Ciphertext& ct);

    Bytes xor_bytes(ByteView a, ByteView b);

    OpCounter& ops() { return ops_; }
    const OpCounter& ops() const { return ops_; }

  private:
    OpCounter ops_;
};

}  // namespace vasc
