// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for whole authentication rounds: the smart-card scheme
// against the public-key baseline, per role and end to end. These are the
// numbers behind the headline cost comparison.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "vasc/baseline.hpp"
#include "vasc/bytes.hpp"
#include "vasc/group.hpp"
#include "vasc/proposed.hpp"
#include "vasc/rng.hpp"
#include "vasc/signature.hpp"
#include "vasc/timestamp.hpp"

namespace {

using namespace vasc;

// Freshness and session-lifetime windows wide enough to never interfere
// with a benchmark loop.
constexpr std::uint64_t kWindowMs = 1u << 30;
constexpr std::uint64_t kAuthTtlMs = 1u << 30;

const proposed::VehicleId& vehicle() {
    static const proposed::VehicleId id{to_bytes("bench-vehicle")};
    return id;
}

struct ProposedRound {
    Rng rng;
    proposed::Ta ta;
    proposed::Rsu rsu;
    proposed::Obu obu;
    std::uint64_t clock_ms = 1;

    explicit ProposedRound(std::uint64_t seed)
        : rng(seed),
          ta(rng.key32(), kWindowMs),
          rsu(to_bytes("rsu-bench"), signature_keypair(rng), kWindowMs,
              kAuthTtlMs),
          obu(make_obu(ta)) {}

    static proposed::Obu make_obu(proposed::Ta& ta) {
        auto [card, provision] =
            ta.register_vehicle(vehicle(), ByteView(to_bytes("bench-pw")));
        proposed::Obu out(std::move(provision));
        out.login(card, ByteView(to_bytes("bench-pw")));
        return out;
    }

    void run() {
        const Timestamp now{clock_ms++};
        const auto req = obu.make_auth_request(now);
        const auto resp = ta.handle_auth(req, now, rng);
        const auto broadcast = rsu.accept_ta_response(resp, now);
        benchmark::DoNotOptimize(obu.complete_auth(broadcast).view().data());
    }
};

struct BaselineRound {
    Rng rng;
    baseline::Ta ta;
    baseline::Rsu rsu;
    baseline::Obu obu;
    std::uint64_t clock_ms = 1;

    BaselineRound(unsigned modulus_bits, std::uint64_t seed)
        : rng(seed),
          ta(make_ta(modulus_bits, rng)),
          rsu(to_bytes("rsu-bench"), kWindowMs),
          obu(ta.register_vehicle(vehicle())) {}

    static baseline::Ta make_ta(unsigned modulus_bits, Rng& rng) {
        auto [params, secrets] = group_setup(modulus_bits, rng);
        return baseline::Ta(std::move(params), std::move(secrets), kWindowMs);
    }

    void run() {
        const Timestamp now{clock_ms++};
        const auto req = obu.make_request(rng, now);
        const auto fwd = rsu.forward(req, now);
        const auto [resp, ta_key] = ta.handle_auth(fwd.request, now, rng);
        benchmark::DoNotOptimize(ta_key.view().data());
        benchmark::DoNotOptimize(obu.complete(resp).view().data());
    }
};

void BM_ProposedAuthRound(benchmark::State& state) {
    ProposedRound round(1);
    for (auto _ : state) round.run();
}
BENCHMARK(BM_ProposedAuthRound)->Unit(benchmark::kMicrosecond);

void BM_BaselineAuthRound(benchmark::State& state) {
    BaselineRound round(static_cast<unsigned>(state.range(0)), 1);
    for (auto _ : state) round.run();
}
BENCHMARK(BM_BaselineAuthRound)->Arg(256)->Arg(1024)->Arg(2048)
    ->Unit(benchmark::kMillisecond);

void BM_ProposedObuOnly(benchmark::State& state) {
    ProposedRound round(1);
    for (auto _ : state) {
        const Timestamp now{round.clock_ms++};
        const auto req = round.obu.make_auth_request(now);
        benchmark::DoNotOptimize(req.aid.bytes.data());
        state.PauseTiming();
        const auto resp = round.ta.handle_auth(req, now, round.rng);
        const auto broadcast = round.rsu.accept_ta_response(resp, now);
        state.ResumeTiming();
        benchmark::DoNotOptimize(
            round.obu.complete_auth(broadcast).view().data());
    }
}
BENCHMARK(BM_ProposedObuOnly)->Unit(benchmark::kMicrosecond);

void BM_ProposedTaOnly(benchmark::State& state) {
    ProposedRound round(1);
    for (auto _ : state) {
        state.PauseTiming();
        const Timestamp now{round.clock_ms++};
        const auto req = round.obu.make_auth_request(now);
        state.ResumeTiming();
        const auto resp = round.ta.handle_auth(req, now, round.rng);
        benchmark::DoNotOptimize(resp.aid.bytes.data());
        state.PauseTiming();
        const auto broadcast = round.rsu.accept_ta_response(resp, now);
        benchmark::DoNotOptimize(
            round.obu.complete_auth(broadcast).view().data());
        state.ResumeTiming();
    }
}
BENCHMARK(BM_ProposedTaOnly)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
