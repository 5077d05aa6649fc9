#include "ppat/reports.hpp"

#include <sstream>

#include <json.hpp>

namespace ppat {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* metric_name(ThresholdMetric metric) {
    return metric == ThresholdMetric::FullReconstruction ? "full_reconstruction"
                                                         : "next_challenge";
}

void append_recording_rows(std::ostringstream& out, Scenario scenario, SchemeParams params,
                           std::uint64_t k_max, bool skip_k0, bool dash_k0) {
    RecordingSeries series(scenario, params);
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        if (k > 0) series.advance();
        if (k == 0 && skip_k0) continue;
        const KnowledgeDistribution& dist = series.current();
        for (std::uint32_t i = 0; i <= params.n; ++i) {
            const ExactProb& p = dist.prob(i);
            if (p.is_zero()) continue;
            const char tag = (k == 0 && dash_k0) ? '-' : scenario_letter(scenario);
            out << tag << ',' << params.n << ',' << params.m << ',' << k << ',' << i << ','
                << to_decimal_string(p.value()) << ',' << to_ratio_string(p.value()) << '\n';
        }
    }
}

bool is_printable_ascii(const std::string& s) {
    for (char c : s)
        if (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) > 0x7e)
            return false;
    return true;
}

std::string to_hex(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(s.size() * 2);
    for (char c : s) {
        const auto b = static_cast<unsigned char>(c);
        out += digits[b >> 4];
        out += digits[b & 0xF];
    }
    return out;
}

} // namespace

std::string recording_csv(SchemeParams params, std::uint64_t k_max,
                          std::optional<Scenario> scenario) {
    params.validate();
    std::ostringstream out;
    out << "scenario,n,m,k,i,probability,probability_exact\n";
    if (scenario.has_value()) {
        append_recording_rows(out, *scenario, params, k_max, false, false);
    } else {
        // The k = 0 distribution does not depend on the scenario; emit it
        // once, tagged "-", then the per-scenario curves.
        append_recording_rows(out, Scenario::WithoutReplacement, params, 0, false, true);
        if (k_max > 0) {
            append_recording_rows(out, Scenario::WithoutReplacement, params, k_max, true, false);
            append_recording_rows(out, Scenario::WithReplacement, params, k_max, true, false);
        }
    }
    return out.str();
}

std::string next_challenge_csv(SchemeParams params, std::uint64_t k_max) {
    params.validate();
    std::ostringstream out;
    out << "scenario,n,m,k,expected_success,expected_success_exact\n";
    for (Scenario scenario : {Scenario::WithoutReplacement, Scenario::WithReplacement}) {
        RecordingSeries series(scenario, params);
        for (std::uint64_t k = 0; k <= k_max; ++k) {
            if (k > 0) series.advance();
            const Rational value = expected_success(series.current()).value();
            out << scenario_letter(scenario) << ',' << params.n << ',' << params.m << ',' << k
                << ',' << to_decimal_string(value) << ',' << to_ratio_string(value) << '\n';
        }
    }
    return out.str();
}

std::string threshold_json(Scenario scenario, SchemeParams params, const ExactProb& target,
                           ThresholdMetric metric, std::uint64_t step_cap) {
    const std::uint64_t k = threshold_k(scenario, params, target, metric, step_cap);
    const Rational value = metric == ThresholdMetric::FullReconstruction
                               ? recording_distribution(scenario, params, k)
                                     .full_reconstruction()
                                     .value()
                               : expected_success(scenario, params, k).value();

    ordered_json doc;
    doc["command"] = "threshold";
    doc["scenario"] = std::string(1, scenario_letter(scenario));
    doc["n"] = params.n;
    doc["m"] = params.m;
    doc["metric"] = metric_name(metric);
    doc["target"] = to_ratio_string(target.value());
    doc["target_decimal"] = to_decimal_string(target.value());
    doc["k"] = k;
    doc["value"] = to_ratio_string(value);
    doc["value_decimal"] = to_decimal_string(value);
    return doc.dump(2) + "\n";
}

SimulationReport simulation_report(Scenario scenario, SchemeParams params, std::uint64_t k,
                                   std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    const EmpiricalDistribution empirical =
        simulate_recording(scenario, params, k, trials, seed, workers);
    const KnowledgeDistribution exact = recording_distribution(scenario, params, k);
    const Rational tvd = empirical.tv_distance(exact);

    ordered_json doc;
    doc["command"] = "simulate";
    doc["scenario"] = std::string(1, scenario_letter(scenario));
    doc["n"] = params.n;
    doc["m"] = params.m;
    doc["k"] = k;
    doc["trials"] = trials;
    doc["seed"] = seed;
    ordered_json counts = ordered_json::array();
    ordered_json empirical_probs = ordered_json::array();
    ordered_json exact_probs = ordered_json::array();
    for (std::uint32_t i = 0; i <= params.n; ++i) {
        counts.push_back(empirical.counts()[i]);
        empirical_probs.push_back(to_decimal_string(empirical.probability(i)));
        exact_probs.push_back(to_decimal_string(exact.prob(i).value()));
    }
    doc["counts"] = std::move(counts);
    doc["empirical"] = std::move(empirical_probs);
    doc["exact"] = std::move(exact_probs);
    doc["tvd"] = to_ratio_string(tvd);
    doc["tvd_decimal"] = to_decimal_string(tvd);
    return SimulationReport{doc.dump(2) + "\n", tvd};
}

std::string filter_summary_json(const FilterQuery& query, const DictionaryStats& stats,
                                const FilterReport& report, const FilterSummaryOptions& options) {
    ordered_json doc;
    doc["command"] = "dict-filter";
    doc["wordlist"] = options.wordlist_name;
    doc["lines"] = stats.line_count;
    doc["skipped"] = stats.skipped_count;
    doc["duplicates"] = stats.duplicate_count;
    doc["entries"] = report.input_count;
    doc["experiment"] = std::string(1, experiment_letter(query.experiment));
    doc["charset_match"] = query.match == CharsetMatch::Subset ? "subset" : "equality";

    const std::string charset = query.leaked_charset.to_string();
    if (is_printable_ascii(charset)) doc["charset"] = charset;
    doc["charset_hex"] = to_hex(charset);

    if (query.target_length.has_value()) {
        doc["target_length"] = *query.target_length;
        doc["length_tolerance"] = query.length_tolerance;
    }
    if (!query.known_positions.empty()) {
        doc["position_base"] = options.zero_based ? 0 : 1;
        ordered_json positions = ordered_json::array();
        for (const auto& [index, character] : query.known_positions) {
            ordered_json item;
            item["position"] = options.zero_based ? index : index + 1;
            item["character"] = std::string(1, character);
            positions.push_back(std::move(item));
        }
        doc["known_positions"] = std::move(positions);
    }
    if (options.seed.has_value()) doc["seed"] = *options.seed;

    doc["survivors"] = report.survivor_count();
    doc["reduction_ratio"] = to_ratio_string(report.reduction_ratio());
    doc["reduction_ratio_decimal"] = to_decimal_string(report.reduction_ratio(), 6);
    if (options.include_timing) {
        doc["elapsed_seconds"] = report.elapsed_seconds;
        doc["entries_per_second"] = report.entries_per_second;
    }
    return doc.dump(2) + "\n";
}

} // namespace ppat
