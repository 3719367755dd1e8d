// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the cryptographic primitives the cost model counts:
// hashing, authenticated encryption, xor masking, and modular
// exponentiation at several modulus sizes.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "vasc/aead.hpp"
#include "vasc/bytes.hpp"
#include "vasc/group.hpp"
#include "vasc/hash.hpp"
#include "vasc/rng.hpp"

namespace {

using namespace vasc;

void BM_Hash(benchmark::State& state) {
    Rng rng(1);
    const Bytes input = rng.bytes(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const Digest d = hash_parts(HashDomain::kH, {ByteView(input)});
        benchmark::DoNotOptimize(d.bytes);
    }
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Hash)->Arg(32)->Arg(256)->Arg(4096);

void BM_SymEncrypt(benchmark::State& state) {
    Rng rng(1);
    SymmetricKey key;
    key.bytes = rng.key32();
    const Bytes plain = rng.bytes(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const Ciphertext boxed = sym_encrypt(key, ByteView(plain), rng);
        benchmark::DoNotOptimize(boxed.body.data());
    }
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SymEncrypt)->Arg(64)->Arg(1024);

void BM_SymDecrypt(benchmark::State& state) {
    Rng rng(1);
    SymmetricKey key;
    key.bytes = rng.key32();
    const Bytes plain = rng.bytes(static_cast<std::size_t>(state.range(0)));
    const Ciphertext boxed = sym_encrypt(key, ByteView(plain), rng);
    for (auto _ : state) {
        const Bytes opened = sym_decrypt(key, boxed);
        benchmark::DoNotOptimize(opened.data());
    }
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SymDecrypt)->Arg(64)->Arg(1024);

void BM_XorMask(benchmark::State& state) {
    Rng rng(1);
    const Bytes a = rng.bytes(32);
    const Bytes b = rng.bytes(32);
    for (auto _ : state) {
        const Bytes masked = xor_bytes(ByteView(a), ByteView(b));
        benchmark::DoNotOptimize(masked.data());
    }
}
BENCHMARK(BM_XorMask);

void BM_ModExp(benchmark::State& state) {
    const auto bits = static_cast<unsigned>(state.range(0));
    Rng rng(1);
    const auto [params, secrets] = group_setup(bits, rng);
    const Bigint exponent = random_exponent(rng, params.p);
    for (auto _ : state) {
        const Bigint r = mod_exp(params.g, exponent, params.p);
        benchmark::DoNotOptimize(r.get_mpz_t());
    }
}
BENCHMARK(BM_ModExp)->Arg(64)->Arg(256)->Arg(512)->Arg(1024)->Arg(2048)
    ->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
