#pragma once

#include <cstdint>
#include <random>

#include "ppat/errors.hpp"

namespace ppat {

/// Deterministic seeded random source.
///
/// Wraps std::mt19937_64 (whose output sequence is pinned by the standard)
/// and draws bounded integers by unbiased rejection sampling, so identical
/// seeds yield identical draws on every platform and standard library.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw DomainError("uniform_below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    /// Sub-seed for the `counter`-th independent stream of `master`.
    ///
    /// splitmix64 over master + counter * golden-gamma; the per-stream
    /// derivation is what keeps parallel trial execution order-independent.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t counter) {
        std::uint64_t z = master + (counter + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace ppat
