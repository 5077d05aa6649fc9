#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppat/combinatorics.hpp"
#include "ppat/errors.hpp"
#include "ppat/protocol_sim.hpp"
#include "ppat/rng.hpp"

namespace ppat {

// ============================================================================
// Character sets
// ============================================================================

/// A set of byte values, stored as a 256-bit bitmap. Matching is byte-exact
/// and case-sensitive; no Unicode normalization is applied anywhere.
class CharSet {
public:
    CharSet() = default;

    static CharSet of(std::string_view text);

    void insert(unsigned char c) { bits_[c >> 6] |= std::uint64_t{1} << (c & 63); }
    bool contains(unsigned char c) const {
        return (bits_[c >> 6] >> (c & 63)) & 1;
    }
    bool subset_of(const CharSet& other) const {
        for (int i = 0; i < 4; ++i)
            if (bits_[i] & ~other.bits_[i]) return false;
        return true;
    }
    std::size_t size() const;
    bool empty() const { return size() == 0; }

    /// The member bytes in ascending order.
    std::string to_string() const;

    friend bool operator==(const CharSet&, const CharSet&) = default;

private:
    std::array<std::uint64_t, 4> bits_{};
};

/// The set of distinct characters appearing in a candidate word.
inline CharSet charset_of(std::string_view candidate) { return CharSet::of(candidate); }

// ============================================================================
// Dictionary
// ============================================================================

struct DictionaryStats {
    std::string source;
    std::uint64_t line_count = 0;      ///< lines seen in the input
    std::uint64_t skipped_count = 0;   ///< invalid UTF-8 or empty lines
    std::uint64_t duplicate_count = 0; ///< repeats of an earlier entry
};

/// An ordered candidate list: input order preserved, duplicates dropped
/// (first occurrence kept), every entry non-empty.
class Dictionary {
public:
    Dictionary(std::vector<std::string> entries, DictionaryStats stats)
        : entries_(std::move(entries)), stats_(std::move(stats)) {}

    const std::vector<std::string>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    const DictionaryStats& stats() const { return stats_; }

private:
    std::vector<std::string> entries_;
    DictionaryStats stats_;
};

/// Loads one candidate per line. Trailing line terminators are stripped;
/// lines that are empty or not valid UTF-8 are counted and skipped, never
/// aborting the load. A stream failure mid-read raises IoError carrying the
/// progress so far.
Dictionary load_dictionary(std::istream& in, std::string source_name = "<stream>");
Dictionary load_dictionary_file(const std::filesystem::path& path);

// ============================================================================
// Filtering
// ============================================================================

enum class ExperimentKind {
    A, ///< leaked charset + known positions
    B, ///< leaked charset + known length
    C, ///< leaked charset + known positions + known length
};

char experiment_letter(ExperimentKind kind);
ExperimentKind experiment_from_letter(char letter);

/// How the leaked charset constrains a candidate. Subset is the shipped
/// semantics; Equality additionally requires that the candidate uses no
/// character outside the leak (a stricter reading, kept behind this switch
/// for comparison runs).
enum class CharsetMatch { Subset, Equality };

struct FilterQuery {
    CharSet leaked_charset;
    /// (0-based index, expected character), used by experiments A and C.
    std::vector<std::pair<std::uint32_t, char>> known_positions;
    /// Target length L+1, used by experiments B and C.
    std::optional<std::uint32_t> target_length;
    std::uint32_t length_tolerance = 0;
    ExperimentKind experiment = ExperimentKind::B;
    CharsetMatch match = CharsetMatch::Subset;

    /// A needs positions (length ignored); B needs a length and no
    /// positions; C needs both. Violations raise DomainError.
    void validate() const;
};

/// Outcome of one scan. Survivor views point into the dictionary and stay
/// valid for its lifetime; order equals input order.
struct FilterReport {
    std::vector<std::string_view> survivors;
    std::uint64_t input_count = 0;
    double elapsed_seconds = 0.0;
    double entries_per_second = 0.0;

    std::uint64_t survivor_count() const { return survivors.size(); }
    /// survivors / input as an exact ratio (0 for an empty dictionary).
    Rational reduction_ratio() const;
};

/// A candidate x survives iff the leaked charset is contained in (or, under
/// Equality, equal to) charset_of(x), every known position is in range and
/// matches, and | |x| - target_length | <= length_tolerance, each clause
/// only where the experiment requires it. Stable single-pass scan; with
/// `workers` > 1 the input is partitioned into contiguous ranges and the
/// merged report is identical to the sequential one.
FilterReport filter(const FilterQuery& query, const Dictionary& dictionary,
                    unsigned workers = 1);

// ============================================================================
// Experiment suite
// ============================================================================

struct ExperimentSuiteResult {
    std::vector<std::uint32_t> sampled_positions; ///< ascending, 0-based
    FilterReport report_a;
    FilterReport report_b;
    FilterReport report_c;
};

/// Derives the leaked charset from the password, samples
/// `known_position_count` distinct positions with the seeded rng, and runs
/// experiments A, B and C against the dictionary.
ExperimentSuiteResult experiment_suite(const Password& password, const Dictionary& dictionary,
                                       std::uint32_t known_position_count, SeededRng& rng,
                                       unsigned workers = 1,
                                       std::uint32_t length_tolerance = 0);

} // namespace ppat
