// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vasc/bytes.hpp"
#include "vasc/proposed.hpp"

namespace vasc {

// Line-oriented JSON persistence: one record per line, byte fields hex
// encoded, absent optionals null. Parsing is strict; a malformed line
// raises ParseError naming its line number.

std::string registration_to_jsonl(const std::vector<proposed::RegistrationRecord>& records);
std::vector<proposed::RegistrationRecord> registration_from_jsonl(std::string_view text);

std::string auth_list_to_jsonl(const std::vector<proposed::AuthListEntry>& entries);
std::vector<proposed::AuthListEntry> auth_list_from_jsonl(std::string_view text);

std::string message_log_to_jsonl(const std::vector<proposed::MessageLogEntry>& entries);
std::vector<proposed::MessageLogEntry> message_log_from_jsonl(std::string_view text);

// Whole-file IO. Writes go to a sibling temp file first and rename into
// place, so readers never observe a torn file. Errors raise IoFailure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace vasc
