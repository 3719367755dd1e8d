// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/timestamp.hpp"

#include <chrono>

namespace vasc {

bool is_fresh(Timestamp t, Timestamp now, std::uint64_t window_ms) {
    const std::uint64_t delta = t.ms >= now.ms ? t.ms - now.ms : now.ms - t.ms;
    return delta <= window_ms;
}

Timestamp wall_clock_now() {
    const auto since_epoch = std::chrono::system_clock::now().time_since_epoch();
    return Timestamp{static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(since_epoch).count())};
}

}  // namespace vasc
