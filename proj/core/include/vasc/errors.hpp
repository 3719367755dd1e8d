// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vasc {

// Every way a protocol step, store operation, or scenario can be refused.
// Names are stable: they appear in persisted error logs and test assertions.
enum class Err {
    // Registration and card handling.
    kDuplicateIdentity,
    kRevokedIdentity,
    kIdentityMismatch,
    kPasswordMismatch,
    kNotLoggedIn,
    // Pseudonym authentication.
    kStaleTimestamp,
    kUnknownPseudonym,
    kRevoked,
    kBadAuthenticator,
    kNoPendingRequest,
    kBadResponseTag,
    // Traffic messages and notifications.
    kNoSession,
    kNoMatchingSession,
    kDuplicateMessage,
    kBadNotificationSignature,
    kUnknownRsu,
    kNotFound,
    // Baseline scheme.
    kNotRegistered,
    kAuthenticationFailure,
    kBadDidv,
    kBadCv,
    kBadConfirmation,
    // Simulation and wire handling.
    kDuplicateTa,
    kSecureChannelViolation,
    kIndexOutOfRange,
    kMalformedMessage,
    // Persistence and CLI.
    kStateExists,
    kStateLocked,
    kIoFailure,
    kParseError,
    kScenarioParseError,
    kAssertionFailed,
    kUnknownList,
    kConfigError,
};

// Canonical name without the k prefix, e.g. "StaleTimestamp".
std::string_view err_name(Err code);

class ProtocolError : public std::runtime_error {
  public:
    explicit ProtocolError(Err code, std::string detail = {});
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] void fail(Err code, std::string detail = {});

}  // namespace vasc
