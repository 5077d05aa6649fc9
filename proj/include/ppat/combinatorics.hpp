#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ppat/errors.hpp"

namespace ppat {

/// Arbitrary-precision non-negative integer used for every coefficient and
/// count. Arithmetic never wraps.
using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always kept in lowest terms.
using Rational = boost::multiprecision::cpp_rational;

// ============================================================================
// Exact coefficients
// ============================================================================

/// Binomial coefficient C(n, k). Returns 0 when k > n. Exact, memoized per
/// (n, k); the cache is read-consistent under concurrent callers.
BigInt binom(std::uint64_t n, std::uint64_t k);

/// Multiset coefficient: the number of size-k multisets over n elements,
/// C(n+k-1, k). By convention multiset_coeff(n, 0) = 1 for every n and
/// multiset_coeff(0, k) = 0 for k >= 1.
BigInt multiset_coeff(std::uint64_t n, std::uint64_t k);

// ============================================================================
// Exact probabilities
// ============================================================================

/// A rational probability, stored in lowest terms, guaranteed in [0, 1].
class ExactProb {
public:
    /// Zero probability.
    ExactProb() : value_(0) {}

    /// Throws DomainError unless 0 <= v <= 1.
    explicit ExactProb(Rational v);

    /// Builds num/den; den must be positive and the ratio within [0, 1].
    static ExactProb from_ratio(const BigInt& num, const BigInt& den);

    const Rational& value() const { return value_; }
    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    friend bool operator==(const ExactProb& a, const ExactProb& b) { return a.value_ == b.value_; }
    friend bool operator!=(const ExactProb& a, const ExactProb& b) { return a.value_ != b.value_; }
    friend bool operator<(const ExactProb& a, const ExactProb& b) { return a.value_ < b.value_; }
    friend bool operator<=(const ExactProb& a, const ExactProb& b) { return a.value_ <= b.value_; }
    friend bool operator>(const ExactProb& a, const ExactProb& b) { return a.value_ > b.value_; }
    friend bool operator>=(const ExactProb& a, const ExactProb& b) { return a.value_ >= b.value_; }

private:
    Rational value_;
};

/// a + b; throws DomainError if the sum exceeds 1.
ExactProb prob_add(const ExactProb& a, const ExactProb& b);

/// a - b; throws DomainError if b > a.
ExactProb prob_sub(const ExactProb& a, const ExactProb& b);

/// a * b; always stays in [0, 1].
ExactProb prob_mul(const ExactProb& a, const ExactProb& b);

/// a / b; throws DivisionByZeroError when b = 0 and DomainError when the
/// quotient exceeds 1.
ExactProb prob_div(const ExactProb& a, const ExactProb& b);

// ============================================================================
// Exact <-> text
// ============================================================================

/// Renders a non-negative rational as a decimal string with `significant`
/// significant digits, rounding half away from zero. Values below 1e-4 use
/// scientific notation (d.dd...e-EE); zero renders as "0".
std::string to_decimal_string(const Rational& value, int significant = 12);

/// Canonical "numerator/denominator" form, lowest terms.
std::string to_ratio_string(const Rational& value);

/// Parses "7/10" or a plain decimal such as "0.70" into an exact rational.
/// Throws DomainError on malformed or negative input.
Rational parse_rational(std::string_view text);

} // namespace ppat
