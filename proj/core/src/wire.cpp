// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/wire.hpp"

#include "vasc/errors.hpp"

namespace vasc {

WireTag peek_tag(ByteView frame) {
    if (frame.empty()) {
        fail(Err::kMalformedMessage, "empty frame");
    }
    switch (frame[0]) {
        case 0x01: return WireTag::kAuthRequest;
        case 0x02: return WireTag::kRsuAuthResponse;
        case 0x03: return WireTag::kTrafficMessage;
        case 0x04: return WireTag::kNotification;
        case 0x10: return WireTag::kSecureEnvelope;
        case 0x21: return WireTag::kBaselineAuthRequest;
        case 0x22: return WireTag::kBaselineForwarded;
        case 0x23: return WireTag::kBaselineAuthResponse;
        default: fail(Err::kMalformedMessage, "unknown wire tag");
    }
}

void ByteWriter::u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) {
        out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

void ByteWriter::u64(std::uint64_t v) {
    append_u64_be(out_, v);
}

void ByteWriter::var(ByteView bytes) {
    u64(bytes.size());
    raw(bytes);
}

std::uint8_t ByteReader::u8() {
    if (pos_ + 1 > data_.size()) {
        fail(Err::kMalformedMessage, "frame truncated");
    }
    return data_[pos_++];
}

std::uint32_t ByteReader::u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v = v << 8 | u8();
    }
    return v;
}

std::uint64_t ByteReader::u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v = v << 8 | u8();
    }
    return v;
}

WireTag ByteReader::tag() {
    const std::uint8_t value[1] = {u8()};
    return peek_tag(ByteView(value, 1));
}

ByteView ByteReader::raw(std::size_t n) {
    if (pos_ + n > data_.size()) {
        fail(Err::kMalformedMessage, "frame truncated");
    }
    ByteView out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
}

ByteView ByteReader::var() {
    const std::uint64_t len = u64();
    if (len > data_.size() - pos_) {
        fail(Err::kMalformedMessage, "length field exceeds frame");
    }
    return raw(static_cast<std::size_t>(len));
}

Digest ByteReader::digest() {
    return Digest::from_bytes(raw(kDigestLen));
}

ByteView ByteReader::rest() {
    return raw(data_.size() - pos_);
}

void ByteReader::expect_end() const {
    if (pos_ != data_.size()) {
        fail(Err::kMalformedMessage, "trailing bytes after message");
    }
}

}  // namespace vasc
