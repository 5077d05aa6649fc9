#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppat/attack_model.hpp"
#include "ppat/dict_attack.hpp"
#include "ppat/protocol_sim.hpp"

namespace ppat {

// Machine-readable emitters behind the CLI. Every function here is a pure
// function of its arguments, so identical run configurations produce
// identical bytes.

/// CSV of the recording-attack distributions for k = 0..k_max, support rows
/// only (probability > 0), sorted by (scenario, k, i). Columns:
/// scenario,n,m,k,i,probability,probability_exact. With both scenarios
/// requested the k = 0 row is scenario-independent and appears once with
/// scenario "-".
std::string recording_csv(SchemeParams params, std::uint64_t k_max,
                          std::optional<Scenario> scenario);

/// CSV of expected next-challenge success for k = 0..k_max, both scenarios.
/// Columns: scenario,n,m,k,expected_success,expected_success_exact.
std::string next_challenge_csv(SchemeParams params, std::uint64_t k_max);

/// JSON document for a threshold search; propagates
/// ThresholdNotReachedError.
std::string threshold_json(Scenario scenario, SchemeParams params, const ExactProb& target,
                           ThresholdMetric metric,
                           std::uint64_t step_cap = kDefaultThresholdCap);

struct SimulationReport {
    std::string text; ///< JSON document
    Rational tvd;     ///< exact total variation distance to the exact law
};

/// Runs the Monte Carlo oracle against the exact distribution and renders
/// both plus their total variation distance.
SimulationReport simulation_report(Scenario scenario, SchemeParams params, std::uint64_t k,
                                   std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

struct FilterSummaryOptions {
    std::string wordlist_name;
    std::optional<std::uint64_t> seed;  ///< present when positions were sampled
    bool zero_based = false;            ///< position rendering
    bool include_timing = false;        ///< timing fields are not run-stable
};

/// JSON sidecar summary for one dictionary filter run.
std::string filter_summary_json(const FilterQuery& query, const DictionaryStats& stats,
                                const FilterReport& report, const FilterSummaryOptions& options);

} // namespace ppat
