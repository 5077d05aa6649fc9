#include "ppat/dict_attack.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <deque>
#include <fstream>
#include <istream>
#include <thread>
#include <unordered_set>

namespace ppat {

// ============================================================================
// CharSet
// ============================================================================

CharSet CharSet::of(std::string_view text) {
    CharSet set;
    for (char c : text) set.insert(static_cast<unsigned char>(c));
    return set;
}

std::size_t CharSet::size() const {
    std::size_t total = 0;
    for (std::uint64_t word : bits_) total += static_cast<std::size_t>(std::popcount(word));
    return total;
}

std::string CharSet::to_string() const {
    std::string out;
    for (unsigned c = 0; c < 256; ++c)
        if (contains(static_cast<unsigned char>(c))) out += static_cast<char>(c);
    return out;
}

// ============================================================================
// Loading
// ============================================================================

namespace {

bool is_valid_utf8(std::string_view bytes) {
    std::size_t i = 0;
    const std::size_t n = bytes.size();
    while (i < n) {
        const auto b0 = static_cast<unsigned char>(bytes[i]);
        std::size_t len;
        unsigned char lo = 0x80, hi = 0xBF;
        if (b0 < 0x80) {
            ++i;
            continue;
        } else if (b0 < 0xC2) {
            return false; // continuation byte or overlong lead
        } else if (b0 < 0xE0) {
            len = 2;
        } else if (b0 < 0xF0) {
            len = 3;
            if (b0 == 0xE0) lo = 0xA0;
            if (b0 == 0xED) hi = 0x9F; // exclude surrogates
        } else if (b0 < 0xF5) {
            len = 4;
            if (b0 == 0xF0) lo = 0x90;
            if (b0 == 0xF4) hi = 0x8F;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (std::size_t j = 1; j < len; ++j) {
            const auto b = static_cast<unsigned char>(bytes[i + j]);
            const unsigned char l = (j == 1) ? lo : 0x80;
            const unsigned char h = (j == 1) ? hi : 0xBF;
            if (b < l || b > h) return false;
        }
        i += len;
    }
    return true;
}

} // namespace

Dictionary load_dictionary(std::istream& in, std::string source_name) {
    DictionaryStats stats;
    stats.source = std::move(source_name);

    // Entries go into a deque first: element addresses are stable there, so
    // the dedup set can hold views instead of copies of every string.
    std::deque<std::string> staged;
    std::unordered_set<std::string_view> seen;

    std::string line;
    while (std::getline(in, line)) {
        ++stats.line_count;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || !is_valid_utf8(line)) {
            ++stats.skipped_count;
            continue;
        }
        if (seen.count(line)) {
            ++stats.duplicate_count;
            continue;
        }
        staged.push_back(line);
        seen.insert(staged.back());
    }
    if (in.bad())
        throw IoError("read failure in '" + stats.source + "' after " +
                      std::to_string(stats.line_count) + " lines (" +
                      std::to_string(staged.size()) + " entries loaded)");

    seen.clear();
    std::vector<std::string> entries;
    entries.reserve(staged.size());
    for (auto& s : staged) entries.push_back(std::move(s));
    return Dictionary(std::move(entries), std::move(stats));
}

Dictionary load_dictionary_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open wordlist '" + path.string() + "'");
    return load_dictionary(in, path.string());
}

// ============================================================================
// Filtering
// ============================================================================

char experiment_letter(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::A: return 'A';
        case ExperimentKind::B: return 'B';
        case ExperimentKind::C: return 'C';
    }
    throw DomainError("unknown experiment tag");
}

ExperimentKind experiment_from_letter(char letter) {
    switch (letter) {
        case 'A': case 'a': return ExperimentKind::A;
        case 'B': case 'b': return ExperimentKind::B;
        case 'C': case 'c': return ExperimentKind::C;
    }
    throw DomainError(std::string("unknown experiment '") + letter + "'");
}

void FilterQuery::validate() const {
    const bool wants_positions =
        experiment == ExperimentKind::A || experiment == ExperimentKind::C;
    const bool wants_length = experiment == ExperimentKind::B || experiment == ExperimentKind::C;
    if (wants_positions && known_positions.empty())
        throw DomainError("experiment " + std::string(1, experiment_letter(experiment)) +
                          " needs known positions");
    if (!wants_positions && !known_positions.empty())
        throw DomainError("experiment B takes no known positions");
    if (wants_length && !target_length.has_value())
        throw DomainError("experiment " + std::string(1, experiment_letter(experiment)) +
                          " needs a target length");
}

Rational FilterReport::reduction_ratio() const {
    if (input_count == 0) return Rational(0);
    return Rational(BigInt(survivors.size()), BigInt(input_count));
}

namespace {

bool survives(const FilterQuery& query, std::string_view candidate) {
    const bool wants_positions =
        query.experiment == ExperimentKind::A || query.experiment == ExperimentKind::C;
    const bool wants_length =
        query.experiment == ExperimentKind::B || query.experiment == ExperimentKind::C;

    if (wants_length) {
        const auto len = static_cast<std::uint64_t>(candidate.size());
        const std::uint64_t target = *query.target_length;
        const std::uint64_t d = len > target ? len - target : target - len;
        if (d > query.length_tolerance) return false;
    }
    if (wants_positions) {
        for (const auto& [index, expected] : query.known_positions) {
            if (index >= candidate.size() || candidate[index] != expected) return false;
        }
    }
    const CharSet present = charset_of(candidate);
    if (query.match == CharsetMatch::Equality) return present == query.leaked_charset;
    return query.leaked_charset.subset_of(present);
}

} // namespace

FilterReport filter(const FilterQuery& query, const Dictionary& dictionary, unsigned workers) {
    query.validate();
    if (workers == 0) workers = 1;
    const auto& entries = dictionary.entries();

    const auto started = std::chrono::steady_clock::now();

    std::vector<std::vector<std::string_view>> partial(workers);
    auto scan_range = [&](unsigned worker, std::size_t begin, std::size_t end) {
        auto& out = partial[worker];
        for (std::size_t i = begin; i < end; ++i)
            if (survives(query, entries[i])) out.emplace_back(entries[i]);
    };

    if (workers == 1 || entries.size() < 2 * workers) {
        scan_range(0, 0, entries.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (entries.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(static_cast<std::size_t>(w) * chunk, entries.size());
            const std::size_t end = std::min(begin + chunk, entries.size());
            pool.emplace_back(scan_range, w, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    FilterReport report;
    report.input_count = entries.size();
    std::size_t total = 0;
    for (const auto& p : partial) total += p.size();
    report.survivors.reserve(total);
    for (const auto& p : partial)
        report.survivors.insert(report.survivors.end(), p.begin(), p.end());

    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
    report.elapsed_seconds = elapsed.count();
    report.entries_per_second =
        report.elapsed_seconds > 0 ? static_cast<double>(report.input_count) / report.elapsed_seconds
                                   : 0.0;
    return report;
}

// ============================================================================
// Experiment suite
// ============================================================================

ExperimentSuiteResult experiment_suite(const Password& password, const Dictionary& dictionary,
                                       std::uint32_t known_position_count, SeededRng& rng,
                                       unsigned workers, std::uint32_t length_tolerance) {
    if (known_position_count == 0 || known_position_count > password.length())
        throw DomainError("known position count must be within 1.." +
                          std::to_string(password.length()));

    // Floyd's uniform subset over the password positions.
    std::vector<std::uint32_t> sampled;
    {
        std::unordered_set<std::uint32_t> chosen;
        const std::uint32_t n = password.length();
        for (std::uint32_t j = n - known_position_count; j < n; ++j) {
            const auto t = static_cast<std::uint32_t>(rng.uniform_below(j + 1));
            if (!chosen.insert(t).second) chosen.insert(j);
        }
        sampled.assign(chosen.begin(), chosen.end());
        std::sort(sampled.begin(), sampled.end());
    }

    std::vector<std::pair<std::uint32_t, char>> known;
    known.reserve(sampled.size());
    for (std::uint32_t p : sampled) known.emplace_back(p, password.at(p));

    const CharSet leaked = charset_of(password.characters());

    FilterQuery query_a;
    query_a.leaked_charset = leaked;
    query_a.known_positions = known;
    query_a.experiment = ExperimentKind::A;

    FilterQuery query_b;
    query_b.leaked_charset = leaked;
    query_b.target_length = password.length();
    query_b.length_tolerance = length_tolerance;
    query_b.experiment = ExperimentKind::B;

    FilterQuery query_c;
    query_c.leaked_charset = leaked;
    query_c.known_positions = known;
    query_c.target_length = password.length();
    query_c.length_tolerance = length_tolerance;
    query_c.experiment = ExperimentKind::C;

    ExperimentSuiteResult result;
    result.sampled_positions = std::move(sampled);
    result.report_a = filter(query_a, dictionary, workers);
    result.report_b = filter(query_b, dictionary, workers);
    result.report_c = filter(query_c, dictionary, workers);
    return result;
}

} // namespace ppat
