// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "vasc/bytes.hpp"

namespace vasc {

// Plain bloom filter keyed by domain-separated hashing. Position i of an
// item is the first 8 bytes (big-endian) of hash(kBloom, item, i) mod m.
// Position hashing is filter bookkeeping, not a protocol operation, so it
// never touches an OpCounter.
class BloomFilter {
  public:
    // Throws std::invalid_argument unless bit_count >= 8 and 1 <= hash_count <= 16.
    BloomFilter(std::uint64_t bit_count, std::uint32_t hash_count);

    // Sizes a filter for expected_items insertions at false-positive rate
    // fp_target: m = ceil(-n ln p / (ln 2)^2), k = round(m/n * ln 2),
    // clamped to m >= 64 and 1 <= k <= 16; an empty filter gets m = 64, k = 1.
    static BloomFilter sized_for(std::uint64_t expected_items, double fp_target);

    void insert(ByteView item);
    bool contains(ByteView item) const;

    std::uint64_t bit_count() const { return bit_count_; }
    std::uint32_t hash_count() const { return hash_count_; }
    std::uint64_t inserted() const { return inserted_; }

    bool operator==(const BloomFilter&) const = default;

    Bytes serialize() const;
    static BloomFilter deserialize(ByteView raw);

  private:
    std::uint64_t position(ByteView item, std::uint32_t index) const;

    std::uint64_t bit_count_;
    std::uint32_t hash_count_;
    std::uint64_t inserted_ = 0;
    Bytes bits_;
};

}  // namespace vasc
