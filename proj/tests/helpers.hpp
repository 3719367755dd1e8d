// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

#include "vasc/bytes.hpp"
#include "vasc/errors.hpp"

// Checks that expr raises a ProtocolError with the given code; comparing
// canonical names keeps doctest's failure output readable.
#define CHECK_FAILS(expr, expected_code)                                          \
    do {                                                                          \
        bool raised_ = false;                                                     \
        try {                                                                     \
            (void)(expr);                                                         \
        } catch (const vasc::ProtocolError& e_) {                                 \
            raised_ = true;                                                       \
            CHECK_EQ(vasc::err_name(e_.code()), vasc::err_name(expected_code));   \
        }                                                                         \
        CHECK_MESSAGE(raised_, "expected " << vasc::err_name(expected_code)       \
                                           << ", but no error was raised");       \
    } while (0)

namespace vasc::testutil {

inline std::array<std::uint8_t, 32> filled_key(std::uint8_t value) {
    std::array<std::uint8_t, 32> key{};
    key.fill(value);
    return key;
}

inline Bytes bytes_of(std::string_view text) {
    return to_bytes(text);
}

}  // namespace vasc::testutil
