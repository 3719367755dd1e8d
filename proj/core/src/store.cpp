// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/store.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vasc/errors.hpp"

namespace vasc {

using ordered_json = nlohmann::ordered_json;
using proposed::AuthListEntry;
using proposed::MessageLogEntry;
using proposed::RegistrationRecord;
using proposed::VehicleId;

namespace {

// Applies fn to each non-empty line, reporting the 1-based line number of
// the first line that fails to parse.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        const std::string_view line = text.substr(
            start, end == std::string_view::npos ? std::string_view::npos : end - start);
        ++line_no;
        if (!line.empty()) {
            try {
                fn(ordered_json::parse(line));
            } catch (const ordered_json::exception& e) {
                fail(Err::kParseError,
                     "line " + std::to_string(line_no) + ": " + e.what());
            } catch (const std::invalid_argument& e) {
                fail(Err::kParseError,
                     "line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
}

std::string hex_field(const ordered_json& j, const char* key) {
    return j.at(key).template get<std::string>();
}

}  // namespace

std::string registration_to_jsonl(const std::vector<RegistrationRecord>& records) {
    std::ostringstream out;
    for (const RegistrationRecord& r : records) {
        ordered_json j;
        j["id"] = to_hex(ByteView(r.id.bytes));
        j["expected_aid"] = r.expected_aid.hex();
        j["prev_aid"] = r.prev_aid ? ordered_json(r.prev_aid->hex()) : ordered_json(nullptr);
        j["counter"] = r.counter;
        j["revoked"] = r.revoked;
        out << j.dump() << '\n';
    }
    return out.str();
}

std::vector<RegistrationRecord> registration_from_jsonl(std::string_view text) {
    std::vector<RegistrationRecord> records;
    for_each_line(text, [&](const ordered_json& j) {
        RegistrationRecord r;
        r.id = VehicleId{from_hex(hex_field(j, "id"))};
        r.expected_aid = Digest::from_hex(hex_field(j, "expected_aid"));
        if (!j.at("prev_aid").is_null()) {
            r.prev_aid = Digest::from_hex(hex_field(j, "prev_aid"));
        }
        r.counter = j.at("counter").get<std::uint64_t>();
        r.revoked = j.at("revoked").get<bool>();
        records.push_back(std::move(r));
    });
    return records;
}

std::string auth_list_to_jsonl(const std::vector<AuthListEntry>& entries) {
    std::ostringstream out;
    for (const AuthListEntry& e : entries) {
        ordered_json j;
        j["id"] = to_hex(ByteView(e.id.bytes));
        j["aid"] = e.aid.hex();
        j["k_s"] = to_hex(e.session_key.view());
        j["expires_at"] = e.expires_at.ms;
        out << j.dump() << '\n';
    }
    return out.str();
}

std::vector<AuthListEntry> auth_list_from_jsonl(std::string_view text) {
    std::vector<AuthListEntry> entries;
    for_each_line(text, [&](const ordered_json& j) {
        AuthListEntry e;
        e.id = VehicleId{from_hex(hex_field(j, "id"))};
        e.aid = Digest::from_hex(hex_field(j, "aid"));
        e.session_key = SymmetricKey::from_bytes(ByteView(from_hex(hex_field(j, "k_s"))));
        e.expires_at = Timestamp{j.at("expires_at").get<std::uint64_t>()};
        entries.push_back(std::move(e));
    });
    return entries;
}

std::string message_log_to_jsonl(const std::vector<MessageLogEntry>& entries) {
    std::ostringstream out;
    for (const MessageLogEntry& e : entries) {
        ordered_json j;
        j["t2"] = e.t2.ms;
        j["m"] = to_hex(ByteView(e.m));
        j["id"] = to_hex(ByteView(e.id.bytes));
        out << j.dump() << '\n';
    }
    return out.str();
}

std::vector<MessageLogEntry> message_log_from_jsonl(std::string_view text) {
    std::vector<MessageLogEntry> entries;
    for_each_line(text, [&](const ordered_json& j) {
        MessageLogEntry e;
        e.t2 = Timestamp{j.at("t2").get<std::uint64_t>()};
        e.m = from_hex(hex_field(j, "m"));
        e.id = VehicleId{from_hex(hex_field(j, "id"))};
        entries.push_back(std::move(e));
    });
    return entries;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(Err::kIoFailure, "cannot open " + path.string());
    }
    std::ostringstream content;
    content << in.rdbuf();
    if (in.bad()) {
        fail(Err::kIoFailure, "read error on " + path.string());
    }
    return content.str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail(Err::kIoFailure, "cannot create " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            fail(Err::kIoFailure, "write error on " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        fail(Err::kIoFailure, "rename failed for " + path.string() + ": " + ec.message());
    }
}

}  // namespace vasc
