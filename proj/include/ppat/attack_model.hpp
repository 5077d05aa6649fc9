#pragma once

#include <cstdint>
#include <vector>

#include "ppat/combinatorics.hpp"
#include "ppat/errors.hpp"

namespace ppat {

/// How the server draws the m challenge positions.
enum class Scenario {
    WithoutReplacement, ///< positions distinct within a challenge
    WithReplacement,    ///< positions may repeat within a challenge
};

/// Single-letter tag used in CSV output and logs: 'A' without replacement,
/// 'B' with replacement.
char scenario_letter(Scenario scenario);

/// Password length n and challenge size m.
struct SchemeParams {
    std::uint32_t n = 0;
    std::uint32_t m = 0;

    /// Throws InvalidParamsError unless 1 <= m <= n.
    void validate() const;

    friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

/// Exact distribution of X, the number of distinct password positions an
/// observer knows after recording k challenge-response pairs.
class KnowledgeDistribution {
public:
    KnowledgeDistribution(Scenario scenario, SchemeParams params, std::uint64_t recorded_pairs,
                          std::vector<ExactProb> probs);

    Scenario scenario() const { return scenario_; }
    const SchemeParams& params() const { return params_; }
    std::uint64_t recorded_pairs() const { return recorded_pairs_; }

    /// P(X = i); i must be within 0..n.
    const ExactProb& prob(std::uint32_t i) const;
    const std::vector<ExactProb>& probs() const { return probs_; }

    /// P(X = n): the whole password is known.
    const ExactProb& full_reconstruction() const { return probs_.back(); }

    /// Exact sum of the probability vector (1 when the recursion is sound).
    Rational sum() const;

    /// Total variation distance to another distribution over the same support.
    Rational tv_distance(const KnowledgeDistribution& other) const;

    friend bool operator==(const KnowledgeDistribution& a, const KnowledgeDistribution& b) {
        return a.scenario_ == b.scenario_ && a.params_.n == b.params_.n &&
               a.params_.m == b.params_.m && a.recorded_pairs_ == b.recorded_pairs_ &&
               a.probs_ == b.probs_;
    }

private:
    Scenario scenario_;
    SchemeParams params_;
    std::uint64_t recorded_pairs_;
    std::vector<ExactProb> probs_; // index i = 0..n
};

// ============================================================================
// Recording attack
// ============================================================================

/// Exact distribution of X after k recorded pairs.
///
/// Without replacement, with c = C(n, m) equiprobable challenges:
///
///   p_k(X=i) = (1/c) * sum_{j=0..m} C(i-j, m-j) * C(n-(i-j), j) * p_{k-1}(X=i-j)
///
/// for m <= i <= n, k >= 1. With replacement the challenge space is the
/// multiset_coeff(n, m) equiprobable position multisets and the first factor
/// becomes multiset_coeff(i, m-j), for 1 <= i <= n. Base case p_0(X=0) = 1.
/// Out-of-range coefficients evaluate to 0, which enforces the support
/// bounds without explicit case analysis.
KnowledgeDistribution recording_distribution(Scenario scenario, SchemeParams params,
                                             std::uint64_t recorded_pairs);

/// Incremental walker over k = 0, 1, 2, ...; advancing costs one recursion
/// step instead of recomputing the whole table.
class RecordingSeries {
public:
    RecordingSeries(Scenario scenario, SchemeParams params);

    std::uint64_t recorded_pairs() const { return k_; }
    const KnowledgeDistribution& current() const { return current_; }
    void advance();

private:
    Scenario scenario_;
    SchemeParams params_;
    std::uint64_t k_;
    std::vector<Rational> row_;
    KnowledgeDistribution current_;
};

// ============================================================================
// Next-challenge attack
// ============================================================================

/// Probability that a fresh challenge lies entirely within i known
/// positions: C(i,m)/C(n,m) without replacement, the multiset analogue with
/// replacement. i must be within 0..n.
ExactProb next_challenge_prob(Scenario scenario, SchemeParams params, std::uint32_t known_positions);

/// Expected next-challenge success after k recorded pairs: the mean of
/// next_challenge_prob weighted by recording_distribution. The sum runs over
/// i = m..n without replacement and i = 1..n with replacement.
ExactProb expected_success(Scenario scenario, SchemeParams params, std::uint64_t recorded_pairs);

/// Same weighting applied to an already-computed distribution.
ExactProb expected_success(const KnowledgeDistribution& dist);

// ============================================================================
// Threshold search
// ============================================================================

enum class ThresholdMetric {
    FullReconstruction, ///< P(X = n)
    NextChallenge,      ///< expected next-challenge success
};

inline constexpr std::uint64_t kDefaultThresholdCap = 10'000;

/// Raised when the metric failed to reach the target within the step cap;
/// carries the last value seen.
class ThresholdNotReachedError : public Error {
public:
    ThresholdNotReachedError(std::uint64_t cap, Rational last_value)
        : Error("target not reached within " + std::to_string(cap) + " steps; last value " +
                to_ratio_string(last_value)),
          cap_(cap),
          last_value_(std::move(last_value)) {}

    std::uint64_t cap() const { return cap_; }
    const Rational& last_value() const { return last_value_; }

private:
    std::uint64_t cap_;
    Rational last_value_;
};

/// Smallest k at which the metric reaches `target` (exact >= comparison).
/// Both metrics are non-decreasing in k, so the scan terminates; the cap is
/// a safety net that turns non-convergence into ThresholdNotReachedError.
/// Requires 0 < target < 1.
std::uint64_t threshold_k(Scenario scenario, SchemeParams params, const ExactProb& target,
                          ThresholdMetric metric, std::uint64_t step_cap = kDefaultThresholdCap);

} // namespace ppat
