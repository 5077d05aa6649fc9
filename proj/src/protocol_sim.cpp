#include "ppat/protocol_sim.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

namespace ppat {

// ============================================================================
// Alphabet / Password
// ============================================================================

Alphabet::Alphabet(std::string_view symbols) : symbols_(symbols) {
    if (symbols_.empty()) throw DomainError("alphabet must not be empty");
    std::set<char> seen;
    for (char c : symbols_)
        if (!seen.insert(c).second)
            throw DomainError("alphabet contains duplicate symbol '" + std::string(1, c) + "'");
}

Alphabet Alphabet::lowercase() { return Alphabet("abcdefghijklmnopqrstuvwxyz"); }

Alphabet Alphabet::alphanumeric36() { return Alphabet("abcdefghijklmnopqrstuvwxyz0123456789"); }

Alphabet Alphabet::numeric10() { return Alphabet("0123456789"); }

Alphabet Alphabet::printable_ascii() {
    std::string s;
    for (char c = 0x20; c <= 0x7e; ++c) s += c;
    return Alphabet(s);
}

bool Alphabet::contains(char c) const { return symbols_.find(c) != std::string::npos; }

Password::Password(std::string characters, Alphabet alphabet)
    : characters_(std::move(characters)), alphabet_(std::move(alphabet)) {
    if (characters_.empty()) throw DomainError("password must not be empty");
    for (char c : characters_)
        if (!alphabet_.contains(c))
            throw DomainError("password character '" + std::string(1, c) +
                              "' is not in the declared alphabet");
}

char Password::at(std::uint32_t position) const {
    if (position >= characters_.size())
        throw DomainError("password position " + std::to_string(position) + " out of range");
    return characters_[position];
}

// ============================================================================
// Challenge / Response
// ============================================================================

Challenge::Challenge(Scenario scenario, std::vector<std::uint32_t> positions, SchemeParams params)
    : scenario_(scenario), positions_(std::move(positions)) {
    params.validate();
    if (positions_.size() != params.m)
        throw ProtocolError("challenge must carry exactly m=" + std::to_string(params.m) +
                            " positions, got " + std::to_string(positions_.size()));
    for (std::uint32_t p : positions_)
        if (p >= params.n)
            throw ProtocolError("challenge position " + std::to_string(p) +
                                " out of range for n=" + std::to_string(params.n));
    std::sort(positions_.begin(), positions_.end());
    if (scenario_ == Scenario::WithoutReplacement &&
        std::adjacent_find(positions_.begin(), positions_.end()) != positions_.end())
        throw ProtocolError("without-replacement challenge has a repeated position");
}

std::pair<std::vector<std::uint32_t>, std::string>
canonicalize_pairing(std::vector<std::uint32_t> positions, std::string characters) {
    if (positions.size() != characters.size())
        throw ProtocolError("positions and characters differ in length");
    std::vector<std::size_t> order(positions.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return positions[a] < positions[b]; });
    std::vector<std::uint32_t> sorted_positions;
    std::string sorted_characters;
    sorted_positions.reserve(positions.size());
    sorted_characters.reserve(characters.size());
    for (std::size_t idx : order) {
        sorted_positions.push_back(positions[idx]);
        sorted_characters.push_back(characters[idx]);
    }
    for (std::size_t i = 1; i < sorted_positions.size(); ++i)
        if (sorted_positions[i] == sorted_positions[i - 1] &&
            sorted_characters[i] != sorted_characters[i - 1])
            throw ProtocolError("repeated position " + std::to_string(sorted_positions[i]) +
                                " answered with two different characters");
    return {std::move(sorted_positions), std::move(sorted_characters)};
}

// ============================================================================
// Challenge generation
// ============================================================================

namespace {

// Floyd's uniform m-subset of {0..n-1}.
std::vector<std::uint32_t> sample_subset(std::uint32_t n, std::uint32_t m, SeededRng& rng) {
    std::set<std::uint32_t> chosen;
    for (std::uint32_t j = n - m; j < n; ++j) {
        const auto t = static_cast<std::uint32_t>(rng.uniform_below(j + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

} // namespace

Challenge generate_challenge(Scenario scenario, SchemeParams params, SeededRng& rng,
                             ChallengeModel model) {
    params.validate();
    if (scenario == Scenario::WithoutReplacement)
        return Challenge(scenario, sample_subset(params.n, params.m, rng), params);

    std::vector<std::uint32_t> positions;
    positions.reserve(params.m);
    if (model == ChallengeModel::UniformMultiset) {
        // Uniform m-subset of {0..n+m-2}, collapsed: the standard bijection
        // between m-subsets and size-m multisets over n elements.
        std::vector<std::uint32_t> subset = sample_subset(params.n + params.m - 1, params.m, rng);
        for (std::uint32_t t = 0; t < params.m; ++t) positions.push_back(subset[t] - t);
    } else {
        for (std::uint32_t t = 0; t < params.m; ++t)
            positions.push_back(static_cast<std::uint32_t>(rng.uniform_below(params.n)));
    }
    return Challenge(scenario, std::move(positions), params);
}

Response respond(const Password& password, const Challenge& challenge) {
    std::string chars;
    chars.reserve(challenge.size());
    for (std::uint32_t p : challenge.positions()) chars += password.at(p);
    return Response{std::move(chars)};
}

bool verify_response(const Password& password, const Challenge& challenge,
                     const Response& response) {
    if (response.characters.size() != challenge.size())
        throw ProtocolError("response length " + std::to_string(response.characters.size()) +
                            " does not match challenge size " + std::to_string(challenge.size()));
    for (std::uint32_t p : challenge.positions())
        if (p >= password.length())
            throw ProtocolError("challenge position " + std::to_string(p) +
                                " out of range for this password");
    for (std::uint32_t j = 0; j < challenge.size(); ++j)
        if (response.characters[j] != password.at(challenge.positions()[j])) return false;
    return true;
}

// ============================================================================
// ProtocolSession
// ============================================================================

ProtocolSession::ProtocolSession(Password password, std::uint32_t challenge_size,
                                 Scenario scenario, RetryPolicy policy, std::uint64_t seed,
                                 ChallengeModel model)
    : password_(std::move(password)),
      params_{password_.length(), challenge_size},
      scenario_(scenario),
      policy_(policy),
      model_(model),
      rng_(seed) {
    params_.validate();
}

const Challenge& ProtocolSession::current_challenge() {
    if (!pending_) pending_ = generate_challenge(scenario_, params_, rng_, model_);
    return *pending_;
}

bool ProtocolSession::submit(const Response& response) {
    if (!pending_) throw ProtocolError("no outstanding challenge");
    const bool ok = verify_response(password_, *pending_, response);
    if (ok || policy_ == RetryPolicy::FreshChallenge) pending_.reset();
    return ok;
}

// ============================================================================
// Monte Carlo oracle
// ============================================================================

EmpiricalDistribution::EmpiricalDistribution(Scenario scenario, SchemeParams params,
                                             std::uint64_t recorded_pairs, std::uint64_t seed,
                                             std::vector<std::uint64_t> counts)
    : scenario_(scenario),
      params_(params),
      recorded_pairs_(recorded_pairs),
      seed_(seed),
      trials_(0),
      counts_(std::move(counts)) {
    params_.validate();
    if (counts_.size() != static_cast<std::size_t>(params_.n) + 1)
        throw DomainError("empirical distribution must have n+1 buckets");
    for (std::uint64_t c : counts_) trials_ += c;
    if (trials_ == 0) throw DomainError("empirical distribution needs at least one trial");
}

Rational EmpiricalDistribution::probability(std::uint32_t i) const {
    if (i >= counts_.size()) throw DomainError("bucket index out of range");
    return Rational(BigInt(counts_[i]), BigInt(trials_));
}

Rational EmpiricalDistribution::tv_distance(const KnowledgeDistribution& exact) const {
    if (exact.probs().size() != counts_.size())
        throw DomainError("total variation distance needs matching supports");
    Rational acc = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        Rational d = probability(static_cast<std::uint32_t>(i)) -
                     exact.prob(static_cast<std::uint32_t>(i)).value();
        if (d < 0) d = -d;
        acc += d;
    }
    return acc / 2;
}

namespace {

std::uint32_t run_single_trial(Scenario scenario, const SchemeParams& params,
                               std::uint64_t recorded_pairs, std::uint64_t trial_seed,
                               ChallengeModel model, std::vector<std::uint8_t>& seen_scratch) {
    SeededRng rng(trial_seed);
    std::fill(seen_scratch.begin(), seen_scratch.end(), std::uint8_t{0});
    std::uint32_t distinct = 0;
    for (std::uint64_t c = 0; c < recorded_pairs; ++c) {
        const Challenge challenge = generate_challenge(scenario, params, rng, model);
        for (std::uint32_t p : challenge.positions()) {
            if (!seen_scratch[p]) {
                seen_scratch[p] = 1;
                ++distinct;
            }
        }
    }
    return distinct;
}

} // namespace

EmpiricalDistribution simulate_recording(Scenario scenario, SchemeParams params,
                                         std::uint64_t recorded_pairs, std::uint64_t trials,
                                         std::uint64_t seed, unsigned workers,
                                         ChallengeModel model) {
    params.validate();
    if (trials == 0) throw DomainError("simulate_recording needs at least one trial");
    if (workers == 0) workers = 1;

    const std::size_t buckets = static_cast<std::size_t>(params.n) + 1;
    std::vector<std::vector<std::uint64_t>> partial(workers,
                                                    std::vector<std::uint64_t>(buckets, 0));

    auto run_range = [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint8_t> seen(params.n, 0);
        for (std::uint64_t t = begin; t < end; ++t) {
            const std::uint32_t distinct = run_single_trial(
                scenario, params, recorded_pairs, SeededRng::derive(seed, t), model, seen);
            ++partial[worker][distinct];
        }
    };

    if (workers == 1) {
        run_range(0, 0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, trials);
            const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, trials);
            pool.emplace_back(run_range, w, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    std::vector<std::uint64_t> counts(buckets, 0);
    for (const auto& p : partial)
        for (std::size_t i = 0; i < buckets; ++i) counts[i] += p[i];
    return EmpiricalDistribution(scenario, params, recorded_pairs, seed, std::move(counts));
}

// ============================================================================
// Exhaustive oracle
// ============================================================================

namespace {

void all_subsets(std::uint32_t n, std::uint32_t m, std::uint32_t start,
                 std::vector<std::uint32_t>& prefix, std::vector<std::vector<std::uint32_t>>& out) {
    if (prefix.size() == m) {
        out.push_back(prefix);
        return;
    }
    for (std::uint32_t p = start; p + (m - prefix.size()) <= n; ++p) {
        prefix.push_back(p);
        all_subsets(n, m, p + 1, prefix, out);
        prefix.pop_back();
    }
}

void all_multisets(std::uint32_t n, std::uint32_t m, std::uint32_t start,
                   std::vector<std::uint32_t>& prefix,
                   std::vector<std::vector<std::uint32_t>>& out) {
    if (prefix.size() == m) {
        out.push_back(prefix);
        return;
    }
    for (std::uint32_t p = start; p < n; ++p) {
        prefix.push_back(p);
        all_multisets(n, m, p, prefix, out);
        prefix.pop_back();
    }
}

void tally_sequences(const std::vector<std::vector<std::uint32_t>>& challenges,
                     std::uint64_t depth_left, std::vector<std::uint8_t>& seen,
                     std::uint32_t distinct, std::vector<std::uint64_t>& counts) {
    if (depth_left == 0) {
        ++counts[distinct];
        return;
    }
    std::vector<std::uint32_t> newly;
    for (const auto& challenge : challenges) {
        newly.clear();
        for (std::uint32_t p : challenge) {
            if (!seen[p]) {
                seen[p] = 1;
                newly.push_back(p);
            }
        }
        tally_sequences(challenges, depth_left - 1, seen,
                        distinct + static_cast<std::uint32_t>(newly.size()), counts);
        for (std::uint32_t p : newly) seen[p] = 0;
    }
}

} // namespace

KnowledgeDistribution enumerate_exact(Scenario scenario, SchemeParams params,
                                      std::uint64_t recorded_pairs, std::uint64_t budget) {
    params.validate();

    std::vector<std::vector<std::uint32_t>> challenges;
    std::vector<std::uint32_t> prefix;
    if (scenario == Scenario::WithoutReplacement)
        all_subsets(params.n, params.m, 0, prefix, challenges);
    else
        all_multisets(params.n, params.m, 0, prefix, challenges);

    BigInt total = 1;
    for (std::uint64_t i = 0; i < recorded_pairs; ++i) {
        total *= static_cast<std::uint64_t>(challenges.size());
        if (total > budget)
            throw BudgetExceededError("enumeration needs " + std::to_string(challenges.size()) +
                                      "^" + std::to_string(recorded_pairs) +
                                      " sequences, over the budget of " + std::to_string(budget));
    }

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(params.n) + 1, 0);
    std::vector<std::uint8_t> seen(params.n, 0);
    tally_sequences(challenges, recorded_pairs, seen, 0, counts);

    std::vector<ExactProb> probs;
    probs.reserve(counts.size());
    for (std::uint64_t c : counts) probs.push_back(ExactProb::from_ratio(BigInt(c), total));
    return KnowledgeDistribution(scenario, params, recorded_pairs, std::move(probs));
}

} // namespace ppat
