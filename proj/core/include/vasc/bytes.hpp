// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vasc {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

Bytes to_bytes(std::string_view text);
std::string to_string(ByteView bytes);

std::string to_hex(ByteView bytes);
// Throws std::invalid_argument on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

void append_u64_be(Bytes& out, std::uint64_t value);
Bytes u64_be(std::uint64_t value);
// Precondition: bytes.size() >= 8.
std::uint64_t read_u64_be(ByteView bytes);

// Throws std::invalid_argument unless both operands have equal length.
Bytes xor_bytes(ByteView a, ByteView b);

bool bytes_equal(ByteView a, ByteView b);
// True when needle occurs as a contiguous substring of haystack.
bool contains_bytes(ByteView haystack, ByteView needle);

}  // namespace vasc
