#include "ppat/attack_model.hpp"

#include <utility>

namespace ppat {

char scenario_letter(Scenario scenario) {
    return scenario == Scenario::WithoutReplacement ? 'A' : 'B';
}

void SchemeParams::validate() const {
    if (n == 0) throw InvalidParamsError("password length n must be at least 1");
    if (m == 0 || m > n)
        throw InvalidParamsError("challenge size m must satisfy 1 <= m <= n (got m=" +
                                 std::to_string(m) + ", n=" + std::to_string(n) + ")");
}

KnowledgeDistribution::KnowledgeDistribution(Scenario scenario, SchemeParams params,
                                             std::uint64_t recorded_pairs,
                                             std::vector<ExactProb> probs)
    : scenario_(scenario), params_(params), recorded_pairs_(recorded_pairs), probs_(std::move(probs)) {
    params_.validate();
    if (probs_.size() != static_cast<std::size_t>(params_.n) + 1)
        throw DomainError("knowledge distribution must have n+1 entries");
}

const ExactProb& KnowledgeDistribution::prob(std::uint32_t i) const {
    if (i >= probs_.size())
        throw DomainError("knowledge index " + std::to_string(i) + " exceeds n=" +
                          std::to_string(params_.n));
    return probs_[i];
}

Rational KnowledgeDistribution::sum() const {
    Rational total = 0;
    for (const auto& p : probs_) total += p.value();
    return total;
}

Rational KnowledgeDistribution::tv_distance(const KnowledgeDistribution& other) const {
    if (other.probs_.size() != probs_.size())
        throw DomainError("total variation distance needs matching supports");
    Rational acc = 0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        Rational d = probs_[i].value() - other.probs_[i].value();
        if (d < 0) d = -d;
        acc += d;
    }
    return acc / 2;
}

namespace {

std::vector<Rational> base_row(std::uint32_t n) {
    std::vector<Rational> row(static_cast<std::size_t>(n) + 1, Rational(0));
    row[0] = 1;
    return row;
}

std::vector<Rational> step_row(Scenario scenario, const SchemeParams& params,
                               const std::vector<Rational>& prev) {
    const std::uint32_t n = params.n;
    const std::uint32_t m = params.m;
    const Rational denom(scenario == Scenario::WithoutReplacement
                             ? binom(n, m)
                             : multiset_coeff(n, m));
    std::vector<Rational> next(static_cast<std::size_t>(n) + 1, Rational(0));
    const std::uint32_t lo = scenario == Scenario::WithoutReplacement ? m : 1;
    for (std::uint32_t i = lo; i <= n; ++i) {
        Rational acc = 0;
        for (std::uint32_t j = 0; j <= m && j <= i; ++j) {
            const Rational& prev_p = prev[i - j];
            if (prev_p == 0) continue;
            BigInt weight = scenario == Scenario::WithoutReplacement
                                ? binom(i - j, m - j)
                                : multiset_coeff(i, m - j);
            if (weight == 0) continue;
            weight *= binom(n - (i - j), j);
            if (weight == 0) continue;
            acc += prev_p * Rational(weight);
        }
        if (acc != 0) next[i] = acc / denom;
    }
    return next;
}

KnowledgeDistribution wrap_row(Scenario scenario, SchemeParams params, std::uint64_t k,
                               const std::vector<Rational>& row) {
    std::vector<ExactProb> probs;
    probs.reserve(row.size());
    for (const auto& r : row) probs.emplace_back(r);
    return KnowledgeDistribution(scenario, params, k, std::move(probs));
}

} // namespace

KnowledgeDistribution recording_distribution(Scenario scenario, SchemeParams params,
                                             std::uint64_t recorded_pairs) {
    params.validate();
    std::vector<Rational> row = base_row(params.n);
    for (std::uint64_t k = 1; k <= recorded_pairs; ++k) row = step_row(scenario, params, row);
    return wrap_row(scenario, params, recorded_pairs, row);
}

RecordingSeries::RecordingSeries(Scenario scenario, SchemeParams params)
    : scenario_(scenario),
      params_(params),
      k_(0),
      row_((params.validate(), base_row(params.n))),
      current_(wrap_row(scenario, params, 0, row_)) {}

void RecordingSeries::advance() {
    row_ = step_row(scenario_, params_, row_);
    ++k_;
    current_ = wrap_row(scenario_, params_, k_, row_);
}

ExactProb next_challenge_prob(Scenario scenario, SchemeParams params,
                              std::uint32_t known_positions) {
    params.validate();
    if (known_positions > params.n)
        throw DomainError("known position count exceeds password length");
    if (scenario == Scenario::WithoutReplacement)
        return ExactProb::from_ratio(binom(known_positions, params.m), binom(params.n, params.m));
    return ExactProb::from_ratio(multiset_coeff(known_positions, params.m),
                                 multiset_coeff(params.n, params.m));
}

ExactProb expected_success(const KnowledgeDistribution& dist) {
    const SchemeParams& params = dist.params();
    const std::uint32_t lo = dist.scenario() == Scenario::WithoutReplacement ? params.m : 1;
    Rational acc = 0;
    for (std::uint32_t i = lo; i <= params.n; ++i) {
        const Rational& weight = dist.prob(i).value();
        if (weight == 0) continue;
        acc += weight * next_challenge_prob(dist.scenario(), params, i).value();
    }
    return ExactProb(acc);
}

ExactProb expected_success(Scenario scenario, SchemeParams params, std::uint64_t recorded_pairs) {
    return expected_success(recording_distribution(scenario, params, recorded_pairs));
}

std::uint64_t threshold_k(Scenario scenario, SchemeParams params, const ExactProb& target,
                          ThresholdMetric metric, std::uint64_t step_cap) {
    params.validate();
    if (target.is_zero() || target >= ExactProb(Rational(1)))
        throw DomainError("threshold target must satisfy 0 < target < 1");

    RecordingSeries series(scenario, params);
    Rational last = 0;
    for (std::uint64_t k = 0; k <= step_cap; ++k) {
        const KnowledgeDistribution& dist = series.current();
        last = metric == ThresholdMetric::FullReconstruction
                   ? dist.full_reconstruction().value()
                   : expected_success(dist).value();
        if (last >= target.value()) return k;
        series.advance();
    }
    throw ThresholdNotReachedError(step_cap, last);
}

} // namespace ppat
