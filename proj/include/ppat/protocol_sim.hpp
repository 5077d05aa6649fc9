#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppat/attack_model.hpp"
#include "ppat/errors.hpp"
#include "ppat/rng.hpp"

namespace ppat {

// ============================================================================
// Protocol domain types
// ============================================================================

/// Ordered set of distinct characters a password may use.
class Alphabet {
public:
    explicit Alphabet(std::string_view symbols);

    static Alphabet lowercase();       ///< a-z
    static Alphabet alphanumeric36();  ///< a-z plus 0-9
    static Alphabet numeric10();       ///< 0-9
    static Alphabet printable_ascii(); ///< 0x20..0x7e

    bool contains(char c) const;
    std::size_t size() const { return symbols_.size(); }
    const std::string& symbols() const { return symbols_; }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.symbols_ == b.symbols_;
    }

private:
    std::string symbols_;
};

/// The pre-shared secret: an ordered character sequence over an alphabet.
class Password {
public:
    Password(std::string characters, Alphabet alphabet);

    std::uint32_t length() const { return static_cast<std::uint32_t>(characters_.size()); }
    char at(std::uint32_t position) const;
    const std::string& characters() const { return characters_; }
    const Alphabet& alphabet() const { return alphabet_; }

private:
    std::string characters_;
    Alphabet alphabet_;
};

/// The m positions a login attempt asks for, kept in canonical ascending
/// order. Positions are 0-based internally; presentation layers convert.
class Challenge {
public:
    /// Validates count, range and (without replacement) distinctness, then
    /// sorts into canonical form.
    Challenge(Scenario scenario, std::vector<std::uint32_t> positions, SchemeParams params);

    Scenario scenario() const { return scenario_; }
    const std::vector<std::uint32_t>& positions() const { return positions_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(positions_.size()); }

    friend bool operator==(const Challenge& a, const Challenge& b) {
        return a.scenario_ == b.scenario_ && a.positions_ == b.positions_;
    }

private:
    Scenario scenario_;
    std::vector<std::uint32_t> positions_;
};

/// The characters answering a challenge, aligned index-for-index with the
/// challenge's canonical position order.
struct Response {
    std::string characters;
};

/// Sorts a raw (position, character) pairing into canonical ascending
/// position order, keeping the alignment. Throws ProtocolError on length
/// mismatch or when a repeated position carries two different characters.
std::pair<std::vector<std::uint32_t>, std::string>
canonicalize_pairing(std::vector<std::uint32_t> positions, std::string characters);

// ============================================================================
// Protocol operations
// ============================================================================

/// With replacement, which distribution the challenge multisets follow.
enum class ChallengeModel {
    /// Every size-m position multiset equally likely (the analyzed model).
    UniformMultiset,
    /// Positions drawn i.i.d. uniformly. Model mismatch: repeat-heavy
    /// multisets become rarer than under UniformMultiset, so the recording
    /// distributions here do not apply. Comparison mode only.
    IidPositions,
};

/// Draws a challenge. Without replacement: uniform over the C(n,m)
/// m-subsets. With replacement: per the chosen model, default uniform over
/// the multiset_coeff(n,m) multisets. Deterministic given the rng state.
Challenge generate_challenge(Scenario scenario, SchemeParams params, SeededRng& rng,
                             ChallengeModel model = ChallengeModel::UniformMultiset);

/// The honest responder: characters of `password` at the challenged
/// positions.
Response respond(const Password& password, const Challenge& challenge);

/// Accept iff every response character equals the password character at the
/// aligned position. Length mismatch or out-of-range positions raise
/// ProtocolError rather than rejecting.
bool verify_response(const Password& password, const Challenge& challenge,
                     const Response& response);

/// What the server does after a failed attempt.
enum class RetryPolicy {
    FreshChallenge,  ///< draw a new challenge (default)
    RepeatChallenge, ///< present the same challenge again
};

/// A minimal stateful login endpoint: issues challenges, verifies responses,
/// applies the retry policy. Useful for protocol-level experiments.
class ProtocolSession {
public:
    ProtocolSession(Password password, std::uint32_t challenge_size, Scenario scenario,
                    RetryPolicy policy, std::uint64_t seed,
                    ChallengeModel model = ChallengeModel::UniformMultiset);

    const Challenge& current_challenge();

    /// Verifies against the outstanding challenge. Accept clears it (a fresh
    /// one is drawn on the next call); reject applies the retry policy.
    bool submit(const Response& response);

private:
    Password password_;
    SchemeParams params_;
    Scenario scenario_;
    RetryPolicy policy_;
    ChallengeModel model_;
    SeededRng rng_;
    std::optional<Challenge> pending_;
};

// ============================================================================
// Oracles
// ============================================================================

/// Empirical counterpart of KnowledgeDistribution: how many of `trials`
/// independent recording sessions ended knowing exactly i positions.
class EmpiricalDistribution {
public:
    EmpiricalDistribution(Scenario scenario, SchemeParams params, std::uint64_t recorded_pairs,
                          std::uint64_t seed, std::vector<std::uint64_t> counts);

    Scenario scenario() const { return scenario_; }
    const SchemeParams& params() const { return params_; }
    std::uint64_t recorded_pairs() const { return recorded_pairs_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t trials() const { return trials_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

    /// Exact rational count(i) / trials.
    Rational probability(std::uint32_t i) const;

    /// Total variation distance to an exact distribution, as an exact
    /// rational.
    Rational tv_distance(const KnowledgeDistribution& exact) const;

private:
    Scenario scenario_;
    SchemeParams params_;
    std::uint64_t recorded_pairs_;
    std::uint64_t seed_;
    std::uint64_t trials_;
    std::vector<std::uint64_t> counts_;
};

/// Monte Carlo oracle: `trials` independent sessions of `recorded_pairs`
/// challenges each, counting distinct positions seen. Per-trial sub-seeds
/// come from SeededRng::derive(seed, trial), so the result is identical for
/// any worker count.
EmpiricalDistribution simulate_recording(Scenario scenario, SchemeParams params,
                                         std::uint64_t recorded_pairs, std::uint64_t trials,
                                         std::uint64_t seed, unsigned workers = 1,
                                         ChallengeModel model = ChallengeModel::UniformMultiset);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Exhaustive oracle: iterates every length-k challenge sequence with equal
/// weight and tallies the distinct-position count exactly. Refuses with
/// BudgetExceededError when (number of challenges)^k exceeds the budget.
KnowledgeDistribution enumerate_exact(Scenario scenario, SchemeParams params,
                                      std::uint64_t recorded_pairs,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

} // namespace ppat
