// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "vasc/bytes.hpp"
#include "vasc/hash.hpp"

namespace vasc {

// First byte of every frame on the simulated channels. Values are part of
// the persisted-transcript format and must not change.
enum class WireTag : std::uint8_t {
    kAuthRequest = 0x01,
    kRsuAuthResponse = 0x02,
    kTrafficMessage = 0x03,
    kNotification = 0x04,
    kSecureEnvelope = 0x10,
    kBaselineAuthRequest = 0x21,
    kBaselineForwarded = 0x22,
    kBaselineAuthResponse = 0x23,
};

// Throws MalformedMessage on empty input or an unassigned tag value.
WireTag peek_tag(ByteView frame);

class ByteWriter {
  public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void tag(WireTag t) { u8(static_cast<std::uint8_t>(t)); }
    void raw(ByteView bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
    // Length-prefixed field: 8-byte big-endian length, then the bytes.
    void var(ByteView bytes);
    void digest(const Digest& d) { raw(d.view()); }
    Bytes take() { return std::move(out_); }

  private:
    Bytes out_;
};

// Cursor over a received frame. Any overrun or leftover byte is a
// MalformedMessage: frames parse exactly or not at all.
class ByteReader {
  public:
    explicit ByteReader(ByteView data) : data_(data) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    WireTag tag();
    ByteView raw(std::size_t n);
    ByteView var();
    Digest digest();
    ByteView rest();
    bool done() const { return pos_ == data_.size(); }
    void expect_end() const;

  private:
    ByteView data_;
    std::size_t pos_ = 0;
};

}  // namespace vasc
