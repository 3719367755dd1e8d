// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include "vasc/scenario.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "vasc/errors.hpp"

namespace vasc::scenario {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Virtual time appended after the last step so in-flight deliveries,
// retries, and notification timers settle before the verdict.
constexpr std::uint64_t kDrainMs = 2000;

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
    fail(Err::kScenarioParseError, "line " + std::to_string(line_no) + ": " + why);
}

struct ArgSpec {
    std::set<std::string> required;
    std::set<std::string> optional;
};

const std::map<std::string, ArgSpec>& action_specs() {
    static const std::map<std::string, ArgSpec> specs = {
        {"add_rsu", {{"name"}, {}}},
        {"add_obu", {{"name"}, {}}},
        {"register", {{"obu"}, {"pw", "scheme"}}},
        {"login", {{"obu", "pw"}, {}}},
        {"authenticate", {{"obu", "rsu"}, {"scheme"}}},
        {"send_message", {{"obu", "data"}, {}}},
        {"revoke", {{"obu"}, {}}},
        {"emit_notification", {{"rsu"}, {}}},
        {"replay", {{"index"}, {"deliver_at_ms"}}},
        {"tamper", {{"index", "offset", "value"}, {"deliver_at_ms"}}},
        {"inject", {{"dst", "data"}, {"deliver_at_ms"}}},
        {"expect",
         {{},
          {"entity", "error", "no_errors", "stat", "equals", "min", "obu", "has_session",
           "keys_agree_obu", "keys_agree_rsu", "report_contains"}}},
    };
    return specs;
}

Bytes decode_data(std::size_t line_no, const std::string& text) {
    constexpr std::string_view kHexPrefix = "hex:";
    if (text.starts_with(kHexPrefix)) {
        try {
            return from_hex(std::string_view(text).substr(kHexPrefix.size()));
        } catch (const std::invalid_argument& err) {
            parse_fail(line_no, std::string("bad hex data: ") + err.what());
        }
    }
    return to_bytes(text);
}

Step parse_step(std::size_t line_no, const std::string& line) {
    json doc;
    try {
        doc = json::parse(line);
    } catch (const json::exception& err) {
        parse_fail(line_no, std::string("not a JSON object: ") + err.what());
    }
    if (!doc.is_object()) {
        parse_fail(line_no, "not a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "at_ms" && key != "action" && key != "args") {
            parse_fail(line_no, "unknown key '" + key + "'");
        }
    }
    if (!doc.contains("at_ms") || !doc["at_ms"].is_number_unsigned()) {
        parse_fail(line_no, "at_ms must be a non-negative integer");
    }
    if (!doc.contains("action") || !doc["action"].is_string()) {
        parse_fail(line_no, "action must be a string");
    }

    Step step;
    step.line_no = line_no;
    step.at_ms = doc["at_ms"].get<std::uint64_t>();
    step.action = doc["action"].get<std::string>();

    const auto spec_it = action_specs().find(step.action);
    if (spec_it == action_specs().end()) {
        parse_fail(line_no, "unknown action '" + step.action + "'");
    }
    const ArgSpec& spec = spec_it->second;

    json args = json::object();
    if (doc.contains("args")) {
        if (!doc["args"].is_object()) {
            parse_fail(line_no, "args must be an object");
        }
        args = doc["args"];
    }
    for (const auto& [key, value] : args.items()) {
        const bool known = spec.required.contains(key) || spec.optional.contains(key) ||
                           key == "expect_error";
        if (!known) {
            parse_fail(line_no,
                       "unknown argument '" + key + "' for action '" + step.action + "'");
        }
        if (value.is_string()) {
            step.str_args[key] = value.get<std::string>();
        } else if (value.is_number_unsigned()) {
            step.int_args[key] = value.get<std::uint64_t>();
        } else if (value.is_boolean()) {
            step.bool_args[key] = value.get<bool>();
        } else {
            parse_fail(line_no, "argument '" + key + "' must be a string, integer, or bool");
        }
    }
    for (const std::string& key : spec.required) {
        if (!step.str_args.contains(key) && !step.int_args.contains(key) &&
            !step.bool_args.contains(key)) {
            parse_fail(line_no,
                       "action '" + step.action + "' requires argument '" + key + "'");
        }
    }

    // Per-action shape checks beyond presence.
    if (step.action == "register") {
        const std::string scheme =
            step.str_args.contains("scheme") ? step.str_args["scheme"] : "proposed";
        if (scheme != "proposed" && scheme != "baseline") {
            parse_fail(line_no, "scheme must be 'proposed' or 'baseline'");
        }
        if (scheme == "proposed" && !step.str_args.contains("pw")) {
            parse_fail(line_no, "registering under the card scheme requires 'pw'");
        }
    }
    if (step.action == "authenticate" && step.str_args.contains("scheme")) {
        const std::string& scheme = step.str_args["scheme"];
        if (scheme != "proposed" && scheme != "baseline") {
            parse_fail(line_no, "scheme must be 'proposed' or 'baseline'");
        }
    }
    if (step.action == "tamper") {
        if (!step.int_args.contains("value") || step.int_args["value"] > 0xFF) {
            parse_fail(line_no, "tamper value must be a byte (0..255)");
        }
    }
    for (const char* int_key : {"index", "offset", "deliver_at_ms", "equals", "min"}) {
        if (step.str_args.contains(int_key) || step.bool_args.contains(int_key)) {
            parse_fail(line_no, std::string("argument '") + int_key + "' must be an integer");
        }
    }
    if (step.action == "expect") {
        const bool has_form = step.str_args.contains("error") ||
                              step.bool_args.contains("no_errors") ||
                              step.str_args.contains("stat") ||
                              step.bool_args.contains("has_session") ||
                              step.str_args.contains("keys_agree_obu") ||
                              step.str_args.contains("report_contains");
        if (!has_form) {
            parse_fail(line_no, "expect step asserts nothing");
        }
        if (step.str_args.contains("stat") &&
            !(step.int_args.contains("equals") || step.int_args.contains("min"))) {
            parse_fail(line_no, "stat expectation needs 'equals' or 'min'");
        }
        if (step.str_args.contains("keys_agree_obu") !=
            step.str_args.contains("keys_agree_rsu")) {
            parse_fail(line_no, "keys_agree needs both the obu and the rsu");
        }
    }
    if (step.str_args.contains("data")) {
        step.data_args["data"] = decode_data(line_no, step.str_args["data"]);
    }
    return step;
}

std::uint64_t stat_value(const sim::EntityStats& st, const std::string& name) {
    if (name == "deliveries") return st.deliveries;
    if (name == "drops") return st.drops;
    if (name == "auth_successes") return st.auth_successes;
    if (name == "auth_failures") return st.auth_failures;
    if (name == "messages_validated") return st.messages_validated;
    if (name == "messages_rejected") return st.messages_rejected;
    if (name == "peer_valid") return st.peer_valid;
    if (name == "peer_unknown") return st.peer_unknown;
    if (name == "errors") return st.errors.size();
    fail(Err::kAssertionFailed, "unknown statistic '" + name + "'");
}

// Tracks which error-log entries have been turned into report lines.
class OutcomeScanner {
  public:
    // Appends one line per new adversarial-origin log entry, in time order.
    void drain(sim::Simulator& sim, std::vector<std::string>& report_lines) {
        struct Row {
            std::uint64_t at_ms;
            std::string entity;
            std::string code;
            sim::FrameOrigin origin;
        };
        std::vector<Row> rows;
        const sim::SimStats snapshot = sim.stats();
        for (const auto& [entity, st] : snapshot.entities) {
            std::size_t& cursor = cursors_[entity];
            for (std::size_t i = cursor; i < st.errors.size(); ++i) {
                const sim::ErrorLogEntry& e = st.errors[i];
                if (e.origin != sim::FrameOrigin::kHonest) {
                    rows.push_back(Row{e.at_ms, entity, e.code, e.origin});
                }
            }
            cursor = st.errors.size();
        }
        std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
            if (a.at_ms != b.at_ms) return a.at_ms < b.at_ms;
            return a.entity < b.entity;
        });
        for (const Row& row : rows) {
            std::ostringstream line;
            line << sim::origin_name(row.origin) << " rejected: " << row.code << " ("
                 << row.entity << " at " << row.at_ms << "ms)";
            report_lines.push_back(line.str());
        }
    }

  private:
    std::map<std::string, std::size_t> cursors_;
};

std::string step_label(const Step& step) {
    std::ostringstream out;
    out << "line " << step.line_no << " @" << step.at_ms << "ms " << step.action;
    for (const char* key : {"name", "obu", "rsu", "dst", "entity", "stat"}) {
        const auto it = step.str_args.find(key);
        if (it != step.str_args.end()) {
            out << ' ' << it->second;
        }
    }
    return out.str();
}

void perform_action(sim::Simulator& sim, const Step& step) {
    auto str = [&](const char* key) { return step.str_args.at(key); };
    auto data = [&](const char* key) { return step.data_args.at(key); };
    auto integer = [&](const char* key) { return step.int_args.at(key); };
    auto deliver_at = [&]() {
        const auto it = step.int_args.find("deliver_at_ms");
        return Timestamp{it == step.int_args.end() ? step.at_ms : it->second};
    };
    const std::string scheme = step.str_args.contains("scheme")
                                   ? step.str_args.at("scheme")
                                   : std::string("proposed");

    if (step.action == "add_rsu") {
        sim.add_rsu(str("name"));
    } else if (step.action == "add_obu") {
        sim.add_obu(str("name"));
    } else if (step.action == "register") {
        if (scheme == "baseline") {
            sim.register_baseline(str("obu"));
        } else {
            sim.register_vehicle(str("obu"), ByteView(to_bytes(str("pw"))));
        }
    } else if (step.action == "login") {
        sim.login(str("obu"), ByteView(to_bytes(str("pw"))));
    } else if (step.action == "authenticate") {
        if (scheme == "baseline") {
            sim.authenticate_baseline(str("obu"), str("rsu"));
        } else {
            sim.authenticate(str("obu"), str("rsu"));
        }
    } else if (step.action == "send_message") {
        sim.send_traffic(str("obu"), ByteView(data("data")));
    } else if (step.action == "revoke") {
        sim.revoke(str("obu"));
    } else if (step.action == "emit_notification") {
        sim.emit_notification(str("rsu"));
    } else if (step.action == "replay") {
        sim.adversary_replay(integer("index"), deliver_at());
    } else if (step.action == "tamper") {
        sim.adversary_tamper(integer("index"), integer("offset"),
                             static_cast<std::uint8_t>(integer("value")), deliver_at());
    } else if (step.action == "inject") {
        sim.adversary_inject(data("data"), str("dst"), deliver_at());
    } else {
        fail(Err::kAssertionFailed, "unhandled action '" + step.action + "'");
    }
}

void evaluate_expect(sim::Simulator& sim, const Step& step,
                     const std::vector<std::string>& report_lines, RunResult& result) {
    std::vector<std::string> misses;

    if (step.str_args.contains("error") || step.bool_args.contains("no_errors") ||
        step.str_args.contains("stat")) {
        if (!step.str_args.contains("entity")) {
            misses.push_back("expectation names no entity");
        } else {
            const sim::EntityStats& st = sim.entity_stats(step.str_args.at("entity"));
            if (step.str_args.contains("error")) {
                const std::string& code = step.str_args.at("error");
                const bool found =
                    std::any_of(st.errors.begin(), st.errors.end(),
                                [&](const sim::ErrorLogEntry& e) { return e.code == code; });
                if (!found) {
                    misses.push_back("no '" + code + "' in the entity log");
                }
            }
            if (step.bool_args.contains("no_errors") && step.bool_args.at("no_errors") &&
                !st.errors.empty()) {
                misses.push_back("entity log is not empty (first: " + st.errors.front().code +
                                 ")");
            }
            if (step.str_args.contains("stat")) {
                const std::uint64_t value = stat_value(st, step.str_args.at("stat"));
                if (step.int_args.contains("equals") &&
                    value != step.int_args.at("equals")) {
                    misses.push_back(step.str_args.at("stat") + " is " +
                                     std::to_string(value) + ", expected " +
                                     std::to_string(step.int_args.at("equals")));
                }
                if (step.int_args.contains("min") && value < step.int_args.at("min")) {
                    misses.push_back(step.str_args.at("stat") + " is " +
                                     std::to_string(value) + ", expected at least " +
                                     std::to_string(step.int_args.at("min")));
                }
            }
        }
    }
    if (step.bool_args.contains("has_session")) {
        if (!step.str_args.contains("obu")) {
            misses.push_back("has_session names no obu");
        } else {
            const bool has = sim.obu_session_key(step.str_args.at("obu")).has_value();
            if (has != step.bool_args.at("has_session")) {
                misses.push_back(std::string("session key ") +
                                 (has ? "present" : "absent"));
            }
        }
    }
    if (step.str_args.contains("keys_agree_obu")) {
        if (!sim.session_known_to_rsu(step.str_args.at("keys_agree_obu"),
                                      step.str_args.at("keys_agree_rsu"))) {
            misses.push_back("session key not in the roadside unit's list");
        }
    }
    if (step.str_args.contains("report_contains")) {
        const std::string& needle = step.str_args.at("report_contains");
        const bool found = std::any_of(
            report_lines.begin(), report_lines.end(),
            [&](const std::string& line) { return line.find(needle) != std::string::npos; });
        if (!found) {
            misses.push_back("report does not contain \"" + needle + "\"");
        }
    }

    if (misses.empty()) {
        result.report_lines.push_back(step_label(step) + " ok");
    } else {
        for (const std::string& miss : misses) {
            result.failures.push_back(Failure{step.line_no, miss});
            result.report_lines.push_back(step_label(step) + " FAILED: " + miss);
        }
    }
}

}  // namespace

std::vector<Step> parse_scenario(std::string_view text) {
    std::vector<Step> steps;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::uint64_t last_at = 0;
    while (std::getline(in, line)) {
        line_no += 1;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        Step step = parse_step(line_no, line);
        if (!steps.empty() && step.at_ms < last_at) {
            parse_fail(line_no, "at_ms decreases; the clock cannot run backward");
        }
        last_at = step.at_ms;
        steps.push_back(std::move(step));
    }
    return steps;
}

std::string RunResult::report_text() const {
    std::string out;
    for (const std::string& line : report_lines) {
        out += line;
        out += '\n';
    }
    if (failures.empty()) {
        out += "scenario: PASS\n";
    } else {
        out += "scenario: FAIL (first failing line " +
               std::to_string(failures.front().line_no) + ": " +
               failures.front().message + ")\n";
    }
    return out;
}

RunResult run_scenario(sim::Simulator& sim, const std::vector<Step>& steps) {
    RunResult result;
    OutcomeScanner outcomes;
    for (const Step& step : steps) {
        sim.run_until(Timestamp{step.at_ms});
        outcomes.drain(sim, result.report_lines);
        if (step.action == "expect") {
            evaluate_expect(sim, step, result.report_lines, result);
            continue;
        }
        const auto expected_error = step.str_args.find("expect_error");
        try {
            perform_action(sim, step);
            if (expected_error != step.str_args.end()) {
                result.failures.push_back(
                    Failure{step.line_no, "expected error '" + expected_error->second +
                                              "' but the action succeeded"});
                result.report_lines.push_back(step_label(step) +
                                              " FAILED: expected an error");
            } else {
                result.report_lines.push_back(step_label(step) + " ok");
            }
        } catch (const ProtocolError& err) {
            const std::string code{err_name(err.code())};
            if (expected_error != step.str_args.end() && expected_error->second == code) {
                result.report_lines.push_back(step_label(step) +
                                              " failed as expected: " + code);
            } else {
                result.failures.push_back(
                    Failure{step.line_no, step.action + " failed: " + err.what()});
                result.report_lines.push_back(step_label(step) + " FAILED: " + code + " (" +
                                              err.what() + ")");
            }
        }
    }
    const std::uint64_t drain_to = sim.now().ms + kDrainMs;
    result.final_stats = sim.run_until(Timestamp{drain_to});
    outcomes.drain(sim, result.report_lines);
    return result;
}

std::string stats_json(const sim::SimStats& stats) {
    ordered_json doc;
    doc["deliveries"] = stats.deliveries;
    doc["drops"] = stats.drops;
    doc["auth_successes"] = stats.auth_successes;
    doc["auth_failures"] = stats.auth_failures;
    ordered_json entities = ordered_json::object();
    for (const auto& [name, st] : stats.entities) {
        ordered_json entry;
        entry["deliveries"] = st.deliveries;
        entry["drops"] = st.drops;
        entry["auth_successes"] = st.auth_successes;
        entry["auth_failures"] = st.auth_failures;
        entry["messages_validated"] = st.messages_validated;
        entry["messages_rejected"] = st.messages_rejected;
        entry["peer_valid"] = st.peer_valid;
        entry["peer_unknown"] = st.peer_unknown;
        entry["errors"] = st.errors.size();
        entities[name] = std::move(entry);
    }
    doc["entities"] = std::move(entities);
    return doc.dump(2) + "\n";
}

std::string errors_jsonl(const sim::SimStats& stats) {
    std::string out;
    for (const auto& [name, st] : stats.entities) {
        for (const sim::ErrorLogEntry& e : st.errors) {
            ordered_json line;
            line["entity"] = name;
            line["at_ms"] = e.at_ms;
            line["code"] = e.code;
            line["detail"] = e.detail;
            line["origin"] = std::string(sim::origin_name(e.origin));
            out += line.dump();
            out += '\n';
        }
    }
    return out;
}

}  // namespace vasc::scenario
