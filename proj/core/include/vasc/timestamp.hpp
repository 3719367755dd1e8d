// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>

namespace vasc {

// Milliseconds since an epoch. Inside the simulator the epoch is the start
// of the run (virtual clock); in the CLI it is the Unix epoch.
struct Timestamp {
    std::uint64_t ms = 0;
    auto operator<=>(const Timestamp&) const = default;
};

// A timestamp is fresh when |now - t| <= window, both ends inclusive, in
// either direction (peers' clocks may disagree slightly).
bool is_fresh(Timestamp t, Timestamp now, std::uint64_t window_ms);

Timestamp wall_clock_now();

}  // namespace vasc
