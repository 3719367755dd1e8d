// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/crypto_ctx.hpp"

namespace vasc {

Digest CryptoCtx::h(std::initializer_list<ByteView> parts) {
    ++ops_.hash_ops;
    return hash_parts(HashDomain::kH, parts);
}

Digest CryptoCtx::h0(std::initializer_list<ByteView> parts) {
    ++ops_.hash_ops;
    return hash_parts(HashDomain::kH0, parts);
}

Digest CryptoCtx::h1(std::initializer_list<ByteView> parts) {
    ++ops_.hash_ops;
    return hash_parts(HashDomain::kH1, parts);
}

Ciphertext CryptoCtx::encrypt(const SymmetricKey& key, ByteView plaintext, Rng& rng) {
    ++ops_.enc_ops;
    return sym_encrypt(key, plaintext, rng);
}

Bytes CryptoCtx::decrypt(const SymmetricKey& key, const Ciphertext& ct) {
    // Decryption shares the encryption counter: the priced cost model has a
    // single symmetric-cipher cost.
    ++ops_.enc_ops;
    return sym_decrypt(key, ct);
}

Bytes CryptoCtx::xor_bytes(ByteView a, ByteView b) {
    ++ops_.xor_ops;
    return vasc::xor_bytes(a, b);
}

}  // namespace vasc
