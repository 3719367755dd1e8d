// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0
//
// vasc: command-line front end for the simulated VANET authentication
// stack. Subcommands: setup, register, revoke, inspect, simulate, bench.
// Exit codes: 0 success, 1 protocol/assertion/runtime failure, 2 usage or
// configuration error. State lives in plain files under --state-dir and is
// guarded by a lock file; nothing here is production key management.

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vasc/baseline.hpp"
#include "vasc/bench.hpp"
#include "vasc/bytes.hpp"
#include "vasc/errors.hpp"
#include "vasc/group.hpp"
#include "vasc/proposed.hpp"
#include "vasc/rng.hpp"
#include "vasc/scenario.hpp"
#include "vasc/signature.hpp"
#include "vasc/sim.hpp"
#include "vasc/store.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace vasc {
namespace {

// ---------------------------------------------------------------------
// Configuration: built-in defaults, then the key=value config file, then
// command-line flags. Unknown config keys are refused.

struct CliConfig {
    fs::path state_dir = "vasc-state";
    sim::SimConfig sim;
    unsigned modulus_bits = 2048;
    std::string format = "csv";  // csv | json
};

std::uint64_t parse_config_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const auto* begin = value.data();
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        fail(Err::kConfigError, "config: key '" + key +
                                    "' needs an unsigned integer, got '" +
                                    value + "'");
    }
    return out;
}

double parse_config_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        fail(Err::kConfigError, "config: key '" + key +
                                    "' needs a number, got '" + value + "'");
    }
}

void apply_config_entry(CliConfig& cfg, const std::string& key,
                        const std::string& value) {
    if (key == "state_dir") {
        cfg.state_dir = value;
    } else if (key == "seed") {
        cfg.sim.seed = parse_config_u64(key, value);
    } else if (key == "modulus_bits") {
        cfg.modulus_bits = static_cast<unsigned>(parse_config_u64(key, value));
    } else if (key == "fp_target") {
        cfg.sim.notification_fp_target = parse_config_double(key, value);
    } else if (key == "format") {
        if (value != "csv" && value != "json") {
            fail(Err::kConfigError,
                 "config: format must be 'csv' or 'json', got '" + value + "'");
        }
        cfg.format = value;
    } else if (key == "wireless_latency_lo_ms") {
        cfg.sim.wireless_latency_ms.lo_ms = parse_config_u64(key, value);
    } else if (key == "wireless_latency_hi_ms") {
        cfg.sim.wireless_latency_ms.hi_ms = parse_config_u64(key, value);
    } else if (key == "wireless_drop_rate") {
        cfg.sim.wireless_drop_rate = parse_config_double(key, value);
    } else if (key == "secure_latency_lo_ms") {
        cfg.sim.secure_latency_ms.lo_ms = parse_config_u64(key, value);
    } else if (key == "secure_latency_hi_ms") {
        cfg.sim.secure_latency_ms.hi_ms = parse_config_u64(key, value);
    } else if (key == "freshness_window_ms") {
        cfg.sim.freshness_window_ms = parse_config_u64(key, value);
    } else if (key == "notification_period_ms") {
        cfg.sim.notification_period_ms = parse_config_u64(key, value);
    } else if (key == "retry_timeout_ms") {
        cfg.sim.retry_timeout_ms = parse_config_u64(key, value);
    } else if (key == "max_auth_retries") {
        cfg.sim.max_auth_retries =
            static_cast<std::uint32_t>(parse_config_u64(key, value));
    } else if (key == "auth_ttl_ms") {
        cfg.sim.auth_ttl_ms = parse_config_u64(key, value);
    } else {
        fail(Err::kConfigError, "config: unknown key '" + key + "'");
    }
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

void load_config_file(CliConfig& cfg, const fs::path& path) {
    const std::string text = read_text_file(path);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string raw =
            text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(Err::kConfigError,
                 "config: line " + std::to_string(line_no) +
                     " is not key=value: '" + line + "'");
        }
        apply_config_entry(cfg, trim(line.substr(0, eq)),
                           trim(line.substr(eq + 1)));
    }
}

// ---------------------------------------------------------------------
// State directory layout and helpers.

struct StatePaths {
    fs::path root;
    fs::path ta_master() const { return root / "ta_master.key"; }
    fs::path baseline_secrets() const { return root / "baseline_secrets.key"; }
    fs::path baseline_params() const { return root / "baseline_params.json"; }
    fs::path rsu_keys() const { return root / "rsu_keys.json"; }
    fs::path registration() const { return root / "registration.jsonl"; }
    fs::path auth_list() const { return root / "auth_list.jsonl"; }
    fs::path message_log() const { return root / "message_log.jsonl"; }
    fs::path lock() const { return root / ".lock"; }
};

// Exclusive advisory lock for the whole invocation; concurrent commands
// on one state directory are refused rather than interleaved.
class StateLock {
  public:
    explicit StateLock(const StatePaths& paths) {
        fd_ = ::open(paths.lock().c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ < 0) {
            fail(Err::kIoFailure,
                 "cannot open lock file " + paths.lock().string());
        }
        if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd_);
            fd_ = -1;
            fail(Err::kStateLocked,
                 "state directory is in use by another invocation");
        }
    }
    ~StateLock() {
        if (fd_ >= 0) ::close(fd_);
    }
    StateLock(const StateLock&) = delete;
    StateLock& operator=(const StateLock&) = delete;

  private:
    int fd_ = -1;
};

void restrict_to_owner(const fs::path& path) {
    std::error_code ec;
    fs::permissions(path,
                    fs::perms::owner_read | fs::perms::owner_write,
                    fs::perm_options::replace, ec);
    if (ec) {
        fail(Err::kIoFailure, "cannot restrict permissions on " + path.string());
    }
}

void require_state(const StatePaths& paths) {
    if (!fs::exists(paths.ta_master())) {
        fail(Err::kConfigError, "state directory " + paths.root.string() +
                                    " is not initialized; run setup first");
    }
}

std::array<std::uint8_t, 32> load_master(const StatePaths& paths) {
    const Bytes raw = [&] {
        try {
            return from_hex(trim(read_text_file(paths.ta_master())));
        } catch (const std::invalid_argument&) {
            fail(Err::kParseError,
                 paths.ta_master().string() + " is not valid hex");
        }
    }();
    if (raw.size() != 32) {
        fail(Err::kParseError,
             paths.ta_master().string() + " must hold exactly 32 bytes");
    }
    std::array<std::uint8_t, 32> key{};
    std::copy(raw.begin(), raw.end(), key.begin());
    return key;
}

std::pair<SystemParams, TaGroupSecrets> load_group(const StatePaths& paths) {
    try {
        const auto params_doc =
            nlohmann::json::parse(read_text_file(paths.baseline_params()));
        const auto secrets_doc =
            nlohmann::json::parse(read_text_file(paths.baseline_secrets()));
        SystemParams params;
        params.bits = params_doc.at("bits").get<unsigned>();
        params.p = bigint_from_hex(params_doc.at("p").get<std::string>());
        params.g = bigint_from_hex(params_doc.at("g").get<std::string>());
        params.y = bigint_from_hex(params_doc.at("y").get<std::string>());
        TaGroupSecrets secrets;
        secrets.x = bigint_from_hex(secrets_doc.at("x").get<std::string>());
        const Bytes s = from_hex(secrets_doc.at("s").get<std::string>());
        if (s.size() != secrets.s.size()) {
            fail(Err::kParseError, "baseline secret s must be 32 bytes");
        }
        std::copy(s.begin(), s.end(), secrets.s.begin());
        return {std::move(params), std::move(secrets)};
    } catch (const nlohmann::json::exception& err) {
        fail(Err::kParseError,
             std::string("cannot parse baseline parameter files: ") +
                 err.what());
    } catch (const std::invalid_argument& err) {
        fail(Err::kParseError,
             std::string("cannot parse baseline parameter files: ") +
                 err.what());
    }
}

std::vector<proposed::RegistrationRecord> load_registration(
    const StatePaths& paths) {
    return registration_from_jsonl(read_text_file(paths.registration()));
}

proposed::Ta make_ta(const CliConfig& cfg, const StatePaths& paths) {
    proposed::Ta ta(load_master(paths), cfg.sim.freshness_window_ms);
    ta.set_registration_list(load_registration(paths));
    return ta;
}

// ---------------------------------------------------------------------
// Subcommands.

int cmd_setup(const CliConfig& cfg) {
    const StatePaths paths{cfg.state_dir};
    if (fs::exists(paths.root) && !fs::is_empty(paths.root)) {
        fail(Err::kStateExists, "state directory " + paths.root.string() +
                                    " already holds files; refusing to "
                                    "overwrite");
    }
    fs::create_directories(paths.root);

    Rng rng(cfg.sim.seed);
    Rng master_rng = rng.fork("ta-master");
    const std::array<std::uint8_t, 32> master = master_rng.key32();
    Rng group_rng = rng.fork("group-setup");
    const auto [params, secrets] = group_setup(cfg.modulus_bits, group_rng);
    Rng sig_rng = rng.fork("rsu-signature");
    const SignatureKeyPair rsu_pair = signature_keypair(sig_rng);

    write_text_file_atomic(paths.ta_master(), to_hex(ByteView(master)) + "\n");
    restrict_to_owner(paths.ta_master());

    ordered_json secrets_doc;
    secrets_doc["x"] = bigint_to_hex(secrets.x);
    secrets_doc["s"] = to_hex(ByteView(secrets.s));
    write_text_file_atomic(paths.baseline_secrets(), secrets_doc.dump() + "\n");
    restrict_to_owner(paths.baseline_secrets());

    ordered_json params_doc;
    params_doc["bits"] = params.bits;
    params_doc["p"] = bigint_to_hex(params.p);
    params_doc["g"] = bigint_to_hex(params.g);
    params_doc["y"] = bigint_to_hex(params.y);
    write_text_file_atomic(paths.baseline_params(), params_doc.dump(2) + "\n");

    ordered_json rsu_doc;
    rsu_doc["rsu-1"] = {
        {"public_key", to_hex(ByteView(rsu_pair.public_key))},
        {"secret_key", to_hex(ByteView(rsu_pair.secret_key))},
    };
    write_text_file_atomic(paths.rsu_keys(), rsu_doc.dump(2) + "\n");
    restrict_to_owner(paths.rsu_keys());

    write_text_file_atomic(paths.registration(), "");
    write_text_file_atomic(paths.auth_list(), "");
    write_text_file_atomic(paths.message_log(), "");

    std::cout << "initialized state in " << paths.root.string() << " (seed "
              << cfg.sim.seed << ", " << cfg.modulus_bits
              << "-bit group)\n"
              << "NOT FOR PRODUCTION: secrets live in plain files here, for "
                 "simulation and testing only.\n";
    return 0;
}

int cmd_register(const CliConfig& cfg, const std::string& id,
                 const std::string& pw, const std::string& scheme) {
    const StatePaths paths{cfg.state_dir};
    require_state(paths);
    const StateLock lock(paths);
    const proposed::VehicleId vehicle{to_bytes(id)};

    if (scheme == "baseline") {
        auto [params, secrets] = load_group(paths);
        baseline::Ta ta(std::move(params), std::move(secrets),
                        cfg.sim.freshness_window_ms);
        const baseline::Card card = ta.register_vehicle(vehicle);
        ordered_json out;
        out["scheme"] = "baseline";
        out["id"] = id;
        out["registration_secret"] = to_hex(card.k.view());
        out["note"] = "derived from the group secrets; nothing persisted";
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (pw.empty()) {
        fail(Err::kConfigError, "registering under the card scheme needs a "
                                "password argument");
    }
    proposed::Ta ta = make_ta(cfg, paths);
    const auto [card, provision] =
        ta.register_vehicle(vehicle, ByteView(to_bytes(pw)));
    write_text_file_atomic(paths.registration(),
                           registration_to_jsonl(ta.registration_list()));

    ordered_json out;
    out["scheme"] = "proposed";
    out["id"] = id;
    out["card_password"] = pw;
    out["long_term_key"] = to_hex(provision.long_term_key.view());
    out["masked_key"] = to_hex(provision.masked_key.view());
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_revoke(const CliConfig& cfg, const std::string& id) {
    const StatePaths paths{cfg.state_dir};
    require_state(paths);
    const StateLock lock(paths);
    proposed::Ta ta = make_ta(cfg, paths);
    ta.revoke(proposed::VehicleId{to_bytes(id)});
    write_text_file_atomic(paths.registration(),
                           registration_to_jsonl(ta.registration_list()));
    std::cout << "revoked " << id << "\n";
    return 0;
}

void print_jsonl(const std::string& text, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        std::size_t pos = 0;
        while (pos < text.size()) {
            const auto nl = text.find('\n', pos);
            const std::string line =
                text.substr(pos, nl == std::string::npos ? nl : nl - pos);
            pos = nl == std::string::npos ? text.size() : nl + 1;
            if (line.empty()) continue;
            arr.push_back(nlohmann::ordered_json::parse(line));
        }
        std::cout << arr.dump(2) << "\n";
        return;
    }
    std::size_t index = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string line =
            text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        if (line.empty()) continue;
        const auto obj = nlohmann::ordered_json::parse(line);
        std::cout << index++ << ":";
        for (const auto& [key, value] : obj.items()) {
            std::cout << " " << key << "=" << value.dump();
        }
        std::cout << "\n";
    }
    if (index == 0) std::cout << "(empty)\n";
}

int cmd_inspect(const CliConfig& cfg, const std::string& list) {
    const StatePaths paths{cfg.state_dir};
    require_state(paths);
    const StateLock lock(paths);
    fs::path file;
    if (list == "registration") {
        file = paths.registration();
    } else if (list == "auth_list") {
        file = paths.auth_list();
    } else if (list == "message_log") {
        file = paths.message_log();
    } else if (list == "rsu_keys") {
        std::cout << read_text_file(paths.rsu_keys());
        return 0;
    } else {
        fail(Err::kUnknownList,
             "no list named '" + list +
                 "' (have registration, auth_list, message_log, rsu_keys)");
    }
    print_jsonl(read_text_file(file), cfg.format);
    return 0;
}

int cmd_simulate(const CliConfig& cfg, const fs::path& scenario_path,
                 fs::path out_dir) {
    const StatePaths paths{cfg.state_dir};
    require_state(paths);
    const StateLock lock(paths);

    const auto steps = scenario::parse_scenario(read_text_file(scenario_path));

    sim::Simulator simulator(cfg.sim);
    simulator.add_ta(load_master(paths));
    if (fs::exists(paths.baseline_params())) {
        auto [params, secrets] = load_group(paths);
        simulator.enable_baseline(std::move(params), std::move(secrets));
    }
    const auto preexisting = load_registration(paths);
    if (!preexisting.empty()) {
        simulator.ta().set_registration_list(preexisting);
    }

    const scenario::RunResult result = scenario::run_scenario(simulator, steps);

    if (out_dir.empty()) out_dir = paths.root / "last-run";
    fs::create_directories(out_dir);
    write_text_file_atomic(out_dir / "report.txt", result.report_text());
    write_text_file_atomic(out_dir / "transcript.jsonl",
                           sim::export_transcript(simulator.adversary_capture()));
    write_text_file_atomic(out_dir / "stats.json",
                           scenario::stats_json(result.final_stats));
    write_text_file_atomic(out_dir / "errors.jsonl",
                           scenario::errors_jsonl(result.final_stats));

    // Final protocol lists, snapshotted next to the run artifacts; the
    // state directory itself is never mutated by a simulation.
    write_text_file_atomic(
        out_dir / "registration.jsonl",
        registration_to_jsonl(simulator.ta().registration_list()));
    std::vector<proposed::AuthListEntry> auth_entries;
    std::vector<proposed::MessageLogEntry> log_entries;
    for (const std::string& name : simulator.rsu_names()) {
        const auto& rsu = simulator.rsu(name);
        auth_entries.insert(auth_entries.end(), rsu.auth_list().begin(),
                            rsu.auth_list().end());
        log_entries.insert(log_entries.end(), rsu.message_log().begin(),
                           rsu.message_log().end());
    }
    write_text_file_atomic(out_dir / "auth_list.jsonl",
                           auth_list_to_jsonl(auth_entries));
    write_text_file_atomic(out_dir / "message_log.jsonl",
                           message_log_to_jsonl(log_entries));

    std::cout << result.report_text();
    if (!result.ok()) {
        for (const scenario::Failure& failure : result.failures) {
            std::cerr << "AssertionFailed: line " << failure.line_no << ": "
                      << failure.message << "\n";
        }
        return 1;
    }
    return 0;
}

int cmd_bench(const CliConfig& cfg, bool paper_costs, std::size_t iterations,
              fs::path out_path, const fs::path& plot_path) {
    const StatePaths paths{cfg.state_dir};
    require_state(paths);
    const StateLock lock(paths);

    const bench::PrimitiveCosts costs =
        paper_costs ? bench::PrimitiveCosts::reference()
                    : bench::measure_primitives(iterations, cfg.modulus_bits,
                                                cfg.sim.seed);
    auto rows = bench::build_table(costs, true, 64, cfg.sim.seed);
    if (!paper_costs) {
        bench::measure_table(rows, iterations, cfg.modulus_bits, cfg.sim.seed);
    }

    std::cout << bench::render_table(rows, costs);

    if (out_path.empty()) {
        out_path = paths.root / ("bench." + cfg.format);
    }
    const auto format = cfg.format == "json" ? bench::OutputFormat::kJson
                                             : bench::OutputFormat::kCsv;
    bench::emit_results(rows, format, out_path);
    std::cout << "wrote " << out_path.string() << "\n";
    if (!plot_path.empty()) {
        write_text_file_atomic(plot_path, bench::to_plot_data(rows));
        std::cout << "wrote " << plot_path.string() << "\n";
    }
    return 0;
}

int exit_code_for(Err code) {
    switch (code) {
        case Err::kStateExists:
        case Err::kScenarioParseError:
        case Err::kConfigError:
        case Err::kUnknownList:
            return 2;
        default:
            return 1;
    }
}

}  // namespace
}  // namespace vasc

int main(int argc, char** argv) {
    using namespace vasc;

    CLI::App app{
        "vasc: anonymous VANET authentication on a simulated network"};
    app.require_subcommand(1);
    // Let global options (--state-dir, --seed, ...) appear after the
    // subcommand name as well as before it.
    app.fallthrough();

    std::string config_path;
    std::string state_dir_flag;
    std::string format_flag;
    std::int64_t seed_flag = -1;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--state-dir", state_dir_flag,
                   "state directory (default vasc-state)");
    app.add_option("--seed", seed_flag, "deterministic seed override");
    app.add_option("--format", format_flag, "output format: csv or json");

    auto* setup = app.add_subcommand(
        "setup", "generate keys, group parameters, and empty lists");
    unsigned modulus_bits_flag = 0;
    setup->add_option("--modulus-bits", modulus_bits_flag,
                      "baseline group size in bits");

    auto* reg = app.add_subcommand("register", "register a vehicle identity");
    std::string reg_id;
    std::string reg_pw;
    std::string reg_scheme = "proposed";
    reg->add_option("id", reg_id, "vehicle identity")->required();
    reg->add_option("pw", reg_pw, "card password (card scheme only)");
    reg->add_option("--scheme", reg_scheme, "proposed or baseline")
        ->check(CLI::IsMember({"proposed", "baseline"}));

    auto* revoke = app.add_subcommand("revoke", "revoke a registered vehicle");
    std::string revoke_id;
    revoke->add_option("id", revoke_id, "vehicle identity")->required();

    auto* inspect = app.add_subcommand("inspect", "print a persisted list");
    std::string inspect_list;
    inspect->add_option("list", inspect_list,
                        "registration | auth_list | message_log | rsu_keys")
        ->required();

    auto* simulate =
        app.add_subcommand("simulate", "run a scenario file deterministically");
    std::string scenario_path;
    std::string sim_out;
    simulate->add_option("scenario", scenario_path, "scenario .jsonl file")
        ->required();
    simulate->add_option("--out", sim_out,
                         "output directory (default <state>/last-run)");

    auto* bench_cmd = app.add_subcommand(
        "bench", "authentication-phase cost table and measurements");
    bool paper_costs = false;
    std::size_t bench_iterations = 1000;
    std::string bench_out;
    std::string bench_plot;
    bench_cmd->add_flag(
        "--paper-costs", paper_costs,
        "use the published reference timings instead of measuring");
    bench_cmd->add_option("--iterations", bench_iterations,
                          "samples per measured quantity (minimum 1000 for "
                          "primitive timings)");
    bench_cmd->add_option("--out", bench_out,
                          "machine-readable table path (default "
                          "<state>/bench.<format>)");
    bench_cmd->add_option("--plot", bench_plot,
                          "also write scheme,total_ms pairs to this path");
    bench_cmd->add_option("--modulus-bits", modulus_bits_flag,
                          "override measured group size in bits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        CliConfig cfg;
        if (!config_path.empty()) load_config_file(cfg, config_path);
        if (!state_dir_flag.empty()) cfg.state_dir = state_dir_flag;
        if (seed_flag >= 0) cfg.sim.seed = static_cast<std::uint64_t>(seed_flag);
        if (!format_flag.empty()) {
            if (format_flag != "csv" && format_flag != "json") {
                fail(Err::kConfigError,
                     "--format must be 'csv' or 'json', got '" + format_flag +
                         "'");
            }
            cfg.format = format_flag;
        }
        if (modulus_bits_flag != 0) cfg.modulus_bits = modulus_bits_flag;

        if (setup->parsed()) return cmd_setup(cfg);
        if (reg->parsed()) return cmd_register(cfg, reg_id, reg_pw, reg_scheme);
        if (revoke->parsed()) return cmd_revoke(cfg, revoke_id);
        if (inspect->parsed()) return cmd_inspect(cfg, inspect_list);
        if (simulate->parsed()) return cmd_simulate(cfg, scenario_path, sim_out);
        if (bench_cmd->parsed()) {
            return cmd_bench(cfg, paper_costs, bench_iterations, bench_out,
                             bench_plot);
        }
        fail(Err::kConfigError, "no subcommand given");
    } catch (const ProtocolError& err) {
        std::cerr << err.what() << "\n";
        return exit_code_for(err.code());
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
