// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vasc/sim.hpp"

// Scenario files drive a simulation from a script: one JSON object per
// line, {"at_ms": N, "action": "...", "args": {...}}. Blank lines and
// lines starting with '#' are skipped. at_ms must never decrease.
//
// Actions and their args:
//   add_rsu            {name}
//   add_obu            {name}
//   register           {obu, pw?, scheme?}        scheme: proposed|baseline
//   login              {obu, pw}
//   authenticate       {obu, rsu, scheme?}
//   send_message       {obu, data}
//   revoke             {obu}
//   emit_notification  {rsu}
//   replay             {index, deliver_at_ms?}
//   tamper             {index, offset, value, deliver_at_ms?}
//   inject             {dst, data, deliver_at_ms?}
//   expect             see below
//
// Every action may carry "expect_error": "<ErrorName>"; the step then
// passes exactly when it fails with that error. Byte arguments ("data")
// are UTF-8 text, or hex with a "hex:" prefix.
//
// expect forms (flat keys, combined in one step):
//   {entity, error}                  error code present in the entity log
//   {entity, no_errors}              entity log empty
//   {entity, stat, equals | min}     compare a counter; stat names match
//                                    the statistics fields
//   {obu, has_session}               session key present / absent
//   {keys_agree_obu, keys_agree_rsu} OBU session key appears in RSU list
//   {report_contains}                substring of the report so far
namespace vasc::scenario {

struct Step {
    std::size_t line_no = 0;
    std::uint64_t at_ms = 0;
    std::string action;
    std::map<std::string, std::string> str_args;
    std::map<std::string, std::uint64_t> int_args;
    std::map<std::string, bool> bool_args;
    // Raw byte arguments, already decoded from text or "hex:".
    std::map<std::string, Bytes> data_args;
};

// Throws ScenarioParseError naming the offending line.
std::vector<Step> parse_scenario(std::string_view text);

struct Failure {
    std::size_t line_no = 0;
    std::string message;
};

struct RunResult {
    std::vector<std::string> report_lines;
    std::vector<Failure> failures;
    sim::SimStats final_stats;

    bool ok() const { return failures.empty(); }
    std::string report_text() const;
};

// Executes the steps on the simulator, drains in-flight events, and
// appends "<origin> rejected: <Error> (<entity>)" lines for adversarial
// frames as entities refuse them. Expectation misses are collected, not
// thrown, so callers still get transcripts and statistics on failure.
RunResult run_scenario(sim::Simulator& sim, const std::vector<Step>& steps);

// Machine-readable projections for files written next to the report.
std::string stats_json(const sim::SimStats& stats);
std::string errors_jsonl(const sim::SimStats& stats);

}  // namespace vasc::scenario
