// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/bloom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vasc/errors.hpp"
#include "vasc/hash.hpp"
#include "vasc/wire.hpp"

namespace vasc {

BloomFilter::BloomFilter(std::uint64_t bit_count, std::uint32_t hash_count)
    : bit_count_(bit_count), hash_count_(hash_count) {
    if (bit_count < 8) {
        throw std::invalid_argument("bloom filter needs at least 8 bits");
    }
    if (hash_count < 1 || hash_count > 16) {
        throw std::invalid_argument("bloom hash count must be in [1, 16]");
    }
    bits_.assign((bit_count + 7) / 8, 0);
}

BloomFilter BloomFilter::sized_for(std::uint64_t expected_items, double fp_target) {
    if (!(fp_target > 0.0 && fp_target < 1.0)) {
        throw std::invalid_argument("false-positive target must be in (0, 1)");
    }
    if (expected_items == 0) {
        return BloomFilter(64, 1);
    }
    const double n = static_cast<double>(expected_items);
    const double ln2 = std::log(2.0);
    const double m_real = std::ceil(-n * std::log(fp_target) / (ln2 * ln2));
    const auto m = std::max<std::uint64_t>(64, static_cast<std::uint64_t>(m_real));
    const double k_real = std::round(static_cast<double>(m) / n * ln2);
    const auto k = static_cast<std::uint32_t>(std::clamp(k_real, 1.0, 16.0));
    return BloomFilter(m, k);
}

std::uint64_t BloomFilter::position(ByteView item, std::uint32_t index) const {
    Bytes idx = u64_be(index);
    const Digest d = hash_parts(HashDomain::kBloom, {item, ByteView(idx)});
    return read_u64_be(d.view()) % bit_count_;
}

void BloomFilter::insert(ByteView item) {
    for (std::uint32_t i = 0; i < hash_count_; ++i) {
        const std::uint64_t pos = position(item, i);
        bits_[pos / 8] |= static_cast<std::uint8_t>(1u << (pos % 8));
    }
    ++inserted_;
}

bool BloomFilter::contains(ByteView item) const {
    for (std::uint32_t i = 0; i < hash_count_; ++i) {
        const std::uint64_t pos = position(item, i);
        if ((bits_[pos / 8] & (1u << (pos % 8))) == 0) return false;
    }
    return true;
}

Bytes BloomFilter::serialize() const {
    ByteWriter w;
    w.u64(bit_count_);
    w.u32(hash_count_);
    w.u64(inserted_);
    w.raw(ByteView(bits_));
    return w.take();
}

BloomFilter BloomFilter::deserialize(ByteView raw) {
    ByteReader r(raw);
    const std::uint64_t m = r.u64();
    const std::uint32_t k = r.u32();
    const std::uint64_t inserted = r.u64();
    if (m < 8 || k < 1 || k > 16) {
        fail(Err::kMalformedMessage, "bloom filter parameters out of range");
    }
    // Validate the claimed size against the frame before allocating, so a
    // corrupted bit count cannot trigger an attacker-sized allocation.
    const ByteView bits = r.rest();
    if (bits.size() != m / 8 + (m % 8 != 0 ? 1 : 0)) {
        fail(Err::kMalformedMessage, "bloom filter bit length mismatch");
    }
    BloomFilter bf(m, k);
    std::copy(bits.begin(), bits.end(), bf.bits_.begin());
    bf.inserted_ = inserted;
    r.expect_end();
    return bf;
}

}  // namespace vasc
