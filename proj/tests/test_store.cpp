// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "helpers.hpp"
#include "vasc/store.hpp"

using namespace vasc;
using namespace vasc::proposed;

TEST_CASE("registration records round-trip through jsonl") {
    std::vector<RegistrationRecord> records;
    records.push_back(RegistrationRecord{
        VehicleId{to_bytes("car-1")},
        Digest::from_hex("2a848b800bcb31cf87c0107fc1107ce0046749922eb3ed8d370a542b9bb5b77d"),
        std::nullopt, 1, false});
    records.push_back(RegistrationRecord{
        VehicleId{to_bytes("car-2")},
        Digest::from_hex("d7a93f1d90acd27d7fb925d6f7836e5ca449a75a9726b613bccc425542a1f2f5"),
        Digest::from_hex("2a848b800bcb31cf87c0107fc1107ce0046749922eb3ed8d370a542b9bb5b77d"),
        7, true});

    const std::string text = registration_to_jsonl(records);
    // One line per record; pinned field names in a stable order.
    CHECK_EQ(std::count(text.begin(), text.end(), '\n'), 2);
    CHECK(text.find("\"id\":\"6361722d31\"") != std::string::npos);
    CHECK(text.find("\"prev_aid\":null") != std::string::npos);
    CHECK(text.find("\"counter\":7") != std::string::npos);
    CHECK(text.find("\"revoked\":true") != std::string::npos);
    CHECK(text.find("\"expected_aid\":") != std::string::npos);

    const auto back = registration_from_jsonl(text);
    REQUIRE_EQ(back.size(), 2);
    CHECK_EQ(back[0].id, records[0].id);
    CHECK_EQ(back[0].expected_aid, records[0].expected_aid);
    CHECK_FALSE(back[0].prev_aid.has_value());
    CHECK_EQ(back[1].counter, 7);
    CHECK(back[1].revoked);
    CHECK_EQ(*back[1].prev_aid, *records[1].prev_aid);
}

TEST_CASE("auth list and message log round-trip through jsonl") {
    Rng rng(0xE0E0);
    std::vector<AuthListEntry> auth;
    auth.push_back(AuthListEntry{VehicleId{to_bytes("car-1")},
                                 hash_parts(HashDomain::kH, {}),
                                 SymmetricKey::from_bytes(ByteView(rng.key32())),
                                 Timestamp{600'123}});
    const std::string auth_text = auth_list_to_jsonl(auth);
    CHECK(auth_text.find("\"k_s\":") != std::string::npos);
    CHECK(auth_text.find("\"expires_at\":600123") != std::string::npos);
    const auto auth_back = auth_list_from_jsonl(auth_text);
    REQUIRE_EQ(auth_back.size(), 1);
    CHECK_EQ(auth_back[0].session_key, auth[0].session_key);
    CHECK_EQ(auth_back[0].aid, auth[0].aid);
    CHECK_EQ(auth_back[0].expires_at, auth[0].expires_at);

    std::vector<MessageLogEntry> log;
    log.push_back(MessageLogEntry{Timestamp{42}, to_bytes("payload"),
                                  VehicleId{to_bytes("car-1")}});
    const std::string log_text = message_log_to_jsonl(log);
    CHECK(log_text.find("\"t2\":42") != std::string::npos);
    const auto log_back = message_log_from_jsonl(log_text);
    REQUIRE_EQ(log_back.size(), 1);
    CHECK_EQ(log_back[0].m, log[0].m);
    CHECK_EQ(log_back[0].id, log[0].id);
}

TEST_CASE("malformed lines report their line number") {
    const std::string bad = registration_to_jsonl({}) + "\n{\"id\":\"zz\"}\n";
    try {
        (void)registration_from_jsonl(bad);
        FAIL("expected ParseError");
    } catch (const ProtocolError& e) {
        CHECK_EQ(err_name(e.code()), err_name(Err::kParseError));
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    CHECK_FAILS(registration_from_jsonl("not json\n"), Err::kParseError);
    CHECK_FAILS(registration_from_jsonl("{\"id\":\"00\"}\n"), Err::kParseError);
}

TEST_CASE("empty inputs and blank lines are tolerated") {
    CHECK(registration_from_jsonl("").empty());
    CHECK(registration_from_jsonl("\n\n").empty());
    CHECK_EQ(registration_to_jsonl({}), "");
}

TEST_CASE("atomic file writes land complete or not at all") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "vasc-store-test";
    fs::create_directories(dir);
    const fs::path file = dir / "data.jsonl";

    write_text_file_atomic(file, "first\n");
    CHECK_EQ(read_text_file(file), "first\n");
    write_text_file_atomic(file, "second\n");
    CHECK_EQ(read_text_file(file), "second\n");
    CHECK_FALSE(fs::exists(file.string() + ".tmp"));

    CHECK_FAILS(read_text_file(dir / "missing.jsonl"), Err::kIoFailure);
    fs::remove_all(dir);
}
