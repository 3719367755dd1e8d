// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/errors.hpp"

namespace vasc {

std::string_view err_name(Err code) {
    switch (code) {
        case Err::kDuplicateIdentity: return "DuplicateIdentity";
        case Err::kRevokedIdentity: return "RevokedIdentity";
        case Err::kIdentityMismatch: return "IdentityMismatch";
        case Err::kPasswordMismatch: return "PasswordMismatch";
        case Err::kNotLoggedIn: return "NotLoggedIn";
        case Err::kStaleTimestamp: return "StaleTimestamp";
        case Err::kUnknownPseudonym: return "UnknownPseudonym";
        case Err::kRevoked: return "Revoked";
        case Err::kBadAuthenticator: return "BadAuthenticator";
        case Err::kNoPendingRequest: return "NoPendingRequest";
        case Err::kBadResponseTag: return "BadResponseTag";
        case Err::kNoSession: return "NoSession";
        case Err::kNoMatchingSession: return "NoMatchingSession";
        case Err::kDuplicateMessage: return "DuplicateMessage";
        case Err::kBadNotificationSignature: return "BadNotificationSignature";
        case Err::kUnknownRsu: return "UnknownRsu";
        case Err::kNotFound: return "NotFound";
        case Err::kNotRegistered: return "NotRegistered";
        case Err::kAuthenticationFailure: return "AuthenticationFailure";
        case Err::kBadDidv: return "BadDIDV";
        case Err::kBadCv: return "BadCV";
        case Err::kBadConfirmation: return "BadConfirmation";
        case Err::kDuplicateTa: return "DuplicateTa";
        case Err::kSecureChannelViolation: return "SecureChannelViolation";
        case Err::kIndexOutOfRange: return "IndexOutOfRange";
        case Err::kMalformedMessage: return "MalformedMessage";
        case Err::kStateExists: return "StateExists";
        case Err::kStateLocked: return "StateLocked";
        case Err::kIoFailure: return "IoFailure";
        case Err::kParseError: return "ParseError";
        case Err::kScenarioParseError: return "ScenarioParseError";
        case Err::kAssertionFailed: return "AssertionFailed";
        case Err::kUnknownList: return "UnknownList";
        case Err::kConfigError: return "ConfigError";
    }
    return "UnknownError";
}

namespace {

std::string format_message(Err code, const std::string& detail) {
    std::string msg(err_name(code));
    if (!detail.empty()) {
        msg += ": ";
        msg += detail;
    }
    return msg;
}

}  // namespace

ProtocolError::ProtocolError(Err code, std::string detail)
    : std::runtime_error(format_message(code, detail)), code_(code) {}

void fail(Err code, std::string detail) {
    throw ProtocolError(code, std::move(detail));
}

}  // namespace vasc
