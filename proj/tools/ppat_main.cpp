#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppat/attack_model.hpp"
#include "ppat/credential_store.hpp"
#include "ppat/dict_attack.hpp"
#include "ppat/protocol_sim.hpp"
#include "ppat/reports.hpp"
#include "ppat/rng.hpp"

namespace {

using namespace ppat;

// Exit codes: 0 success, 1 verification/assertion failure, 2 usage error,
// 3 I/O or input-integrity error.
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write to '" + path + "' failed");
}

Scenario parse_scenario(const std::string& s) {
    if (s == "A" || s == "a") return Scenario::WithoutReplacement;
    if (s == "B" || s == "b") return Scenario::WithReplacement;
    throw DomainError("scenario must be A or B");
}

Alphabet alphabet_by_name(const std::string& name) {
    if (name == "lowercase") return Alphabet::lowercase();
    if (name == "alnum36") return Alphabet::alphanumeric36();
    if (name == "numeric") return Alphabet::numeric10();
    if (name == "printable") return Alphabet::printable_ascii();
    throw DomainError("unknown alphabet '" + name + "'");
}

Backend backend_by_cli_name(const std::string& name) {
    if (name == "plaintext") return Backend::Plaintext;
    if (name == "hash-per-combination") return Backend::HashPerCombination;
    if (name == "encrypted") return Backend::EncryptedWithKeyService;
    throw DomainError("unknown backend '" + name + "'");
}

/// Reads the secret from PPAT_PASSWORD or, failing that, prompts on stdin.
/// Secrets never travel through argv.
std::string read_password_from_env_or_prompt() {
    if (const char* env = std::getenv("PPAT_PASSWORD")) return env;
    std::cerr << "Password: " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) throw IoError("no password on stdin");
    return line;
}

/// "2,5,8" -> indices; 1-based unless zero_based.
std::vector<std::uint32_t> parse_positions(const std::string& text, bool zero_based) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw DomainError("empty position in list '" + text + "'");
        unsigned long value = 0;
        try {
            std::size_t used = 0;
            value = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError("malformed position '" + item + "'");
        }
        if (!zero_based) {
            if (value == 0) throw DomainError("positions are 1-based; use --zero-based for 0-based");
            value -= 1;
        }
        out.push_back(static_cast<std::uint32_t>(value));
    }
    if (out.empty()) throw DomainError("no positions given");
    return out;
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// ---------------------------------------------------------------------------
// Subcommand state
// ---------------------------------------------------------------------------

struct RecordingArgs {
    std::uint32_t n = 0, m = 0;
    std::uint64_t k_max = 0;
    std::string scenario = "both";
    std::string out;
};

struct NextChallengeArgs {
    std::uint32_t n = 0, m = 0;
    std::uint64_t k_max = 0;
    std::string out;
};

struct ThresholdArgs {
    std::uint32_t n = 0, m = 0;
    std::string scenario;
    std::string target;
    std::string metric = "full-reconstruction";
    std::uint64_t cap = kDefaultThresholdCap;
    std::string out;
};

struct SimulateArgs {
    std::uint32_t n = 0, m = 0;
    std::uint64_t k = 0;
    std::string scenario;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string assert_tvd;
    std::string out;
};

struct EnrollArgs {
    std::uint32_t n = 0, m = 0;
    std::string backend;
    std::string record_path;
    std::string alphabet = "alnum36";
    std::string digest = "sha256";
    std::optional<std::uint64_t> seed;
    std::string key_store;
};

struct VerifyArgs {
    std::string record_path;
    std::string positions;
    std::string response;
    bool zero_based = false;
    std::string key_store;
};

struct DictFilterArgs {
    std::string wordlist;
    std::string password;
    std::string charset;
    std::optional<std::uint32_t> length;
    std::vector<std::string> position_specs;
    std::uint32_t known_positions = 2;
    std::string experiment = "B";
    std::uint32_t tolerance = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool equality = false;
    bool zero_based = false;
    bool timing = false;
    std::string out;
    std::string summary;
};

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

int cmd_recording(const RecordingArgs& args) {
    SchemeParams params{args.n, args.m};
    std::optional<Scenario> scenario;
    if (args.scenario != "both") scenario = parse_scenario(args.scenario);
    write_output(args.out, recording_csv(params, args.k_max, scenario));
    return kExitOk;
}

int cmd_next_challenge(const NextChallengeArgs& args) {
    SchemeParams params{args.n, args.m};
    write_output(args.out, next_challenge_csv(params, args.k_max));
    return kExitOk;
}

int cmd_threshold(const ThresholdArgs& args) {
    SchemeParams params{args.n, args.m};
    const Scenario scenario = parse_scenario(args.scenario);
    const ExactProb target(parse_rational(args.target));
    ThresholdMetric metric;
    if (args.metric == "full-reconstruction")
        metric = ThresholdMetric::FullReconstruction;
    else if (args.metric == "next-challenge")
        metric = ThresholdMetric::NextChallenge;
    else
        throw DomainError("metric must be full-reconstruction or next-challenge");
    try {
        write_output(args.out, threshold_json(scenario, params, target, metric, args.cap));
    } catch (const ThresholdNotReachedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_simulate(const SimulateArgs& args) {
    SchemeParams params{args.n, args.m};
    const Scenario scenario = parse_scenario(args.scenario);
    SimulationReport report =
        simulation_report(scenario, params, args.k, args.trials, args.seed, args.workers);
    write_output(args.out, report.text);
    if (!args.assert_tvd.empty()) {
        const Rational limit = parse_rational(args.assert_tvd);
        if (report.tvd > limit) {
            std::cerr << "error: total variation distance " << to_decimal_string(report.tvd, 6)
                      << " exceeds " << args.assert_tvd << "\n";
            return kExitCheckFailed;
        }
    }
    return kExitOk;
}

int cmd_enroll(const EnrollArgs& args) {
    SchemeParams params{args.n, args.m};
    params.validate();
    const Backend backend = backend_by_cli_name(args.backend);
    const Password password(read_password_from_env_or_prompt(), alphabet_by_name(args.alphabet));

    const std::uint64_t seed = args.seed.value_or(entropy_seed());
    SeededRng rng(seed);

    KeyService key_service;
    const bool key_store_exists =
        !args.key_store.empty() && std::filesystem::exists(args.key_store);
    if (backend == Backend::EncryptedWithKeyService) {
        if (args.key_store.empty())
            throw DomainError("encrypted backend needs --key-store");
        if (key_store_exists) key_service.load(args.key_store);
    }

    const CredentialRecord record =
        enroll(password, params, backend, rng,
               backend == Backend::EncryptedWithKeyService ? &key_service : nullptr, args.digest);
    write_output(args.record_path, serialize_record(record));
    if (backend == Backend::EncryptedWithKeyService) key_service.save(args.key_store);

    nlohmann::ordered_json doc;
    doc["command"] = "enroll";
    doc["backend"] = backend_name(backend);
    doc["n"] = params.n;
    doc["m"] = params.m;
    doc["record"] = args.record_path.empty() ? "<stdout>" : args.record_path;
    doc["seed"] = seed;
    if (backend == Backend::HashPerCombination) {
        doc["digest_algorithm"] = args.digest;
        doc["entries"] = record.entries.size();
        doc["digest_payload_bits"] = record.digest_payload_bits().str();
    }
    doc["storage_bits"] =
        storage_cost(params, backend, backend == Backend::HashPerCombination ? digest_bits(args.digest) : 0,
                     password.alphabet().size())
            .str();
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int cmd_verify(const VerifyArgs& args) {
    std::ifstream in(args.record_path, std::ios::binary);
    if (!in) throw IoError("cannot open record '" + args.record_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const CredentialRecord record = parse_record(buf.str());

    std::vector<std::uint32_t> raw_positions = parse_positions(args.positions, args.zero_based);
    auto [positions, characters] = canonicalize_pairing(std::move(raw_positions), args.response);

    const bool has_repeat =
        std::adjacent_find(positions.begin(), positions.end()) != positions.end();
    const Challenge challenge(has_repeat ? Scenario::WithReplacement
                                         : Scenario::WithoutReplacement,
                              std::move(positions), record.params);
    const Response response{std::move(characters)};

    KeyService key_service;
    const KeyService* ks = nullptr;
    if (record.backend == Backend::EncryptedWithKeyService) {
        if (args.key_store.empty())
            throw DomainError("this record needs --key-store to verify");
        key_service.load(args.key_store);
        ks = &key_service;
    }

    const bool ok = verify(record, challenge, response, ks);
    std::cout << (ok ? "accept" : "reject") << "\n";
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_dict_filter(const DictFilterArgs& args) {
    const Dictionary dictionary = load_dictionary_file(args.wordlist);

    FilterQuery query;
    query.experiment = experiment_from_letter(args.experiment.at(0));
    query.match = args.equality ? CharsetMatch::Equality : CharsetMatch::Subset;
    query.length_tolerance = args.tolerance;

    FilterSummaryOptions options;
    options.wordlist_name = args.wordlist;
    options.zero_based = args.zero_based;
    options.include_timing = args.timing;

    const bool wants_positions =
        query.experiment == ExperimentKind::A || query.experiment == ExperimentKind::C;
    const bool wants_length =
        query.experiment == ExperimentKind::B || query.experiment == ExperimentKind::C;

    if (!args.password.empty()) {
        if (!args.charset.empty() || args.length.has_value() || !args.position_specs.empty())
            throw DomainError("give either --password or explicit query fields, not both");
        query.leaked_charset = charset_of(args.password);
        if (wants_length) query.target_length = static_cast<std::uint32_t>(args.password.size());
        if (wants_positions) {
            if (args.known_positions == 0 || args.known_positions > args.password.size())
                throw DomainError("--known-positions must be within 1..password length");
            SeededRng rng(args.seed);
            std::vector<std::uint32_t> sampled;
            {
                std::vector<bool> chosen(args.password.size(), false);
                const auto n = static_cast<std::uint32_t>(args.password.size());
                for (std::uint32_t j = n - args.known_positions; j < n; ++j) {
                    const auto t = static_cast<std::uint32_t>(rng.uniform_below(j + 1));
                    if (chosen[t]) chosen[j] = true;
                    else chosen[t] = true;
                }
                for (std::uint32_t p = 0; p < n; ++p)
                    if (chosen[p]) sampled.push_back(p);
            }
            for (std::uint32_t p : sampled) query.known_positions.emplace_back(p, args.password[p]);
            options.seed = args.seed;
        }
    } else {
        if (args.charset.empty())
            throw DomainError("need --password or --charset");
        query.leaked_charset = CharSet::of(args.charset);
        if (args.length.has_value()) query.target_length = *args.length;
        for (const std::string& spec : args.position_specs) {
            const auto eq = spec.find('=');
            if (eq == std::string::npos || eq + 2 != spec.size())
                throw DomainError("position spec must look like INDEX=CHAR, got '" + spec + "'");
            const std::uint32_t index = parse_positions(spec.substr(0, eq), args.zero_based).at(0);
            query.known_positions.emplace_back(index, spec[eq + 1]);
        }
        std::sort(query.known_positions.begin(), query.known_positions.end());
    }

    const FilterReport report = filter(query, dictionary, args.threads);

    std::string survivors;
    for (std::string_view s : report.survivors) {
        survivors.append(s);
        survivors.push_back('\n');
    }
    write_output(args.out, survivors);

    const std::string summary = filter_summary_json(query, dictionary.stats(), report, options);
    if (args.summary.empty())
        std::cerr << summary;
    else
        write_output(args.summary, summary);

    if (args.timing)
        std::cerr << "scanned " << report.input_count << " entries in " << report.elapsed_seconds
                  << " s (" << static_cast<std::uint64_t>(report.entries_per_second)
                  << " entries/s)\n";
    return kExitOk;
}

int run(int argc, char** argv) {
    CLI::App app{"partial-password security analysis toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "read options from an INI/TOML file; command-line flags take precedence");

    RecordingArgs rec;
    auto* recording = app.add_subcommand(
        "recording", "exact recording-attack knowledge distributions as CSV");
    recording->add_option("--n", rec.n, "password length")->required();
    recording->add_option("--m", rec.m, "positions per challenge")->required();
    recording->add_option("--kmax", rec.k_max, "largest number of recorded pairs")->required();
    recording->add_option("--scenario", rec.scenario, "A, B or both (default both)")
        ->check(CLI::IsMember({"A", "a", "B", "b", "both"}));
    recording->add_option("--out", rec.out, "output file (default stdout)");

    NextChallengeArgs next;
    auto* next_challenge = app.add_subcommand(
        "next-challenge", "expected next-challenge success per k as CSV, both scenarios");
    next_challenge->add_option("--n", next.n, "password length")->required();
    next_challenge->add_option("--m", next.m, "positions per challenge")->required();
    next_challenge->add_option("--kmax", next.k_max, "largest number of recorded pairs")->required();
    next_challenge->add_option("--out", next.out, "output file (default stdout)");

    ThresholdArgs thr;
    auto* threshold = app.add_subcommand(
        "threshold", "smallest k at which a metric reaches a target probability");
    threshold->add_option("--n", thr.n, "password length")->required();
    threshold->add_option("--m", thr.m, "positions per challenge")->required();
    threshold->add_option("--scenario", thr.scenario, "A or B")->required();
    threshold->add_option("--target", thr.target, "target probability, e.g. 0.70 or 7/10")->required();
    threshold->add_option("--metric", thr.metric,
                          "full-reconstruction (default) or next-challenge");
    threshold->add_option("--cap", thr.cap, "step safety cap (default 10000)");
    threshold->add_option("--out", thr.out, "output file (default stdout)");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo recording sessions vs. the exact distribution");
    simulate->add_option("--n", sim.n, "password length")->required();
    simulate->add_option("--m", sim.m, "positions per challenge")->required();
    simulate->add_option("--k", sim.k, "recorded pairs per session")->required();
    simulate->add_option("--scenario", sim.scenario, "A or B")->required();
    simulate->add_option("--trials", sim.trials, "session count (default 100000)");
    simulate->add_option("--seed", sim.seed, "master seed (default 0)");
    simulate->add_option("--workers", sim.workers, "worker threads (default 1)");
    simulate->add_option("--assert-tvd", sim.assert_tvd,
                         "exit 1 unless TVD <= this bound (e.g. 0.01)");
    simulate->add_option("--out", sim.out, "output file (default stdout)");

    EnrollArgs enr;
    auto* enroll_cmd = app.add_subcommand(
        "enroll", "store a credential record (password from PPAT_PASSWORD or prompt)");
    enroll_cmd->add_option("--n", enr.n, "password length")->required();
    enroll_cmd->add_option("--m", enr.m, "positions per challenge")->required();
    enroll_cmd->add_option("--backend", enr.backend, "plaintext, hash-per-combination or encrypted")
        ->required()
        ->check(CLI::IsMember({"plaintext", "hash-per-combination", "encrypted"}));
    enroll_cmd->add_option("--record", enr.record_path, "record file to write")->required();
    enroll_cmd->add_option("--alphabet", enr.alphabet,
                           "lowercase, alnum36 (default), numeric or printable")
        ->check(CLI::IsMember({"lowercase", "alnum36", "numeric", "printable"}));
    enroll_cmd->add_option("--digest", enr.digest, "digest algorithm (default sha256)");
    enroll_cmd->add_option("--seed", enr.seed, "deterministic salt/key seed (default: entropy)");
    enroll_cmd->add_option("--key-store", enr.key_store,
                           "key service state file (encrypted backend)");

    VerifyArgs ver;
    auto* verify_cmd = app.add_subcommand("verify", "check a response against a stored record");
    verify_cmd->add_option("--record", ver.record_path, "record file")->required();
    verify_cmd->add_option("--positions", ver.positions, "challenged positions, e.g. 2,5,8")
        ->required();
    verify_cmd->add_option("--response", ver.response, "characters answering those positions")
        ->required();
    verify_cmd->add_flag("--zero-based", ver.zero_based, "positions are 0-based");
    verify_cmd->add_option("--key-store", ver.key_store,
                           "key service state file (encrypted backend)");

    DictFilterArgs dict;
    auto* dict_filter = app.add_subcommand(
        "dict-filter", "reduce a wordlist using leaked characters, positions and length");
    dict_filter->add_option("--wordlist", dict.wordlist, "newline-delimited candidate file")
        ->required();
    dict_filter->add_option("--password", dict.password,
                            "derive the query from this target password");
    dict_filter->add_option("--charset", dict.charset, "explicit leaked character set");
    dict_filter->add_option("--length", dict.length, "explicit target length");
    dict_filter->add_option("--position", dict.position_specs,
                            "explicit known position, INDEX=CHAR (repeatable)");
    dict_filter->add_option("--known-positions", dict.known_positions,
                            "how many positions to sample from --password (default 2)");
    dict_filter->add_option("--experiment", dict.experiment, "A, B or C")
        ->required()
        ->check(CLI::IsMember({"A", "a", "B", "b", "C", "c"}));
    dict_filter->add_option("--tolerance", dict.tolerance, "length tolerance (default 0)");
    dict_filter->add_option("--seed", dict.seed, "seed for position sampling (default 0)");
    dict_filter->add_option("--threads", dict.threads, "scan workers (default 1)");
    dict_filter->add_flag("--equality", dict.equality,
                          "require charset equality instead of containment (comparison mode)");
    dict_filter->add_flag("--zero-based", dict.zero_based, "positions are 0-based");
    dict_filter->add_flag("--timing", dict.timing, "add timing to the summary and stderr");
    dict_filter->add_option("--out", dict.out, "survivor file (default stdout)");
    dict_filter->add_option("--summary", dict.summary, "summary file (default stderr)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (app.got_subcommand(recording)) return cmd_recording(rec);
    if (app.got_subcommand(next_challenge)) return cmd_next_challenge(next);
    if (app.got_subcommand(threshold)) return cmd_threshold(thr);
    if (app.got_subcommand(simulate)) return cmd_simulate(sim);
    if (app.got_subcommand(enroll_cmd)) return cmd_enroll(enr);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(ver);
    if (app.got_subcommand(dict_filter)) return cmd_dict_filter(dict);
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const IntegrityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
