#include "ppat/combinatorics.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

namespace ppat {

namespace {

BigInt binom_uncached(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    // r * (n-k+t) is always divisible by t at step t.
    for (std::uint64_t t = 1; t <= k; ++t) {
        result *= n - k + t;
        result /= t;
    }
    return result;
}

std::map<std::pair<std::uint64_t, std::uint64_t>, BigInt>& binom_cache() {
    static std::map<std::pair<std::uint64_t, std::uint64_t>, BigInt> cache;
    return cache;
}

std::shared_mutex& binom_cache_mutex() {
    static std::shared_mutex mu;
    return mu;
}

} // namespace

BigInt binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    const std::pair<std::uint64_t, std::uint64_t> key{n, std::min(k, n - k)};
    {
        std::shared_lock lock(binom_cache_mutex());
        auto it = binom_cache().find(key);
        if (it != binom_cache().end()) return it->second;
    }
    BigInt value = binom_uncached(key.first, key.second);
    {
        std::unique_lock lock(binom_cache_mutex());
        binom_cache().emplace(key, value);
    }
    return value;
}

BigInt multiset_coeff(std::uint64_t n, std::uint64_t k) {
    if (k == 0) return 1;
    if (n == 0) return 0;
    if (n - 1 > std::numeric_limits<std::uint64_t>::max() - k)
        throw DomainError("multiset_coeff: arguments too large");
    return binom(n + k - 1, k);
}

// ============================================================================
// ExactProb
// ============================================================================

ExactProb::ExactProb(Rational v) : value_(std::move(v)) {
    if (value_ < 0 || value_ > 1)
        throw DomainError("probability outside [0, 1]: " + to_ratio_string(value_));
}

ExactProb ExactProb::from_ratio(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZeroError();
    if (den < 0) throw DomainError("probability denominator must be positive");
    return ExactProb(Rational(num, den));
}

ExactProb prob_add(const ExactProb& a, const ExactProb& b) {
    return ExactProb(a.value() + b.value());
}

ExactProb prob_sub(const ExactProb& a, const ExactProb& b) {
    if (b.value() > a.value())
        throw DomainError("probability subtraction would go negative");
    return ExactProb(a.value() - b.value());
}

ExactProb prob_mul(const ExactProb& a, const ExactProb& b) {
    return ExactProb(a.value() * b.value());
}

ExactProb prob_div(const ExactProb& a, const ExactProb& b) {
    if (b.is_zero()) throw DivisionByZeroError();
    return ExactProb(a.value() / b.value());
}

// ============================================================================
// Formatting and parsing
// ============================================================================

namespace {

BigInt pow10(int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= 10;
    return r;
}

} // namespace

std::string to_decimal_string(const Rational& value, int significant) {
    if (value < 0) throw DomainError("to_decimal_string expects a non-negative value");
    if (significant < 1) throw DomainError("need at least one significant digit");
    if (value == 0) return "0";

    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);

    // Decimal exponent e with 10^e <= value < 10^(e+1).
    int e = 0;
    if (value >= 1) {
        BigInt ip = num / den;
        for (BigInt t = ip / 10; t != 0; t /= 10) ++e;
    } else {
        BigInt scaled_num = num * 10;
        e = -1;
        while (scaled_num < den) {
            scaled_num *= 10;
            --e;
        }
    }

    // Round num/den * 10^(significant-1-e) half away from zero.
    const int shift = significant - 1 - e;
    BigInt n2 = num;
    BigInt d2 = den;
    if (shift >= 0)
        n2 *= pow10(shift);
    else
        d2 *= pow10(-shift);
    BigInt digits_int = (2 * n2 + d2) / (2 * d2);

    std::string digits = digits_int.str();
    if (static_cast<int>(digits.size()) > significant) {
        // 0.999... rounded up to the next power of ten.
        digits.resize(significant);
        ++e;
    }

    if (e < -4) {
        std::string out;
        out += digits[0];
        if (significant > 1) {
            out += '.';
            out += digits.substr(1);
        }
        out += "e-";
        out += std::to_string(-e);
        return out;
    }
    if (e < 0) {
        std::string out = "0.";
        out.append(static_cast<std::size_t>(-e - 1), '0');
        out += digits;
        return out;
    }
    if (e >= significant - 1) {
        std::string out = digits;
        out.append(static_cast<std::size_t>(e - (significant - 1)), '0');
        return out;
    }
    std::string out = digits.substr(0, static_cast<std::size_t>(e + 1));
    out += '.';
    out += digits.substr(static_cast<std::size_t>(e + 1));
    return out;
}

std::string to_ratio_string(const Rational& value) {
    return boost::multiprecision::numerator(value).str() + "/" +
           boost::multiprecision::denominator(value).str();
}

Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> void {
        throw DomainError("malformed rational: '" + std::string(text) + "'");
    };
    // Trim surrounding whitespace.
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) fail();

    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        const std::string num_s(text.substr(0, slash));
        const std::string den_s(text.substr(slash + 1));
        if (num_s.empty() || den_s.empty()) fail();
        for (char c : num_s)
            if (!std::isdigit(static_cast<unsigned char>(c))) fail();
        for (char c : den_s)
            if (!std::isdigit(static_cast<unsigned char>(c))) fail();
        BigInt den(den_s);
        if (den == 0) throw DivisionByZeroError();
        return Rational(BigInt(num_s), den);
    }

    const auto dot = text.find('.');
    std::string int_part(text.substr(0, dot == std::string_view::npos ? text.size() : dot));
    std::string frac_part(dot == std::string_view::npos ? "" : text.substr(dot + 1));
    if (int_part.empty() && frac_part.empty()) fail();
    for (char c : int_part)
        if (!std::isdigit(static_cast<unsigned char>(c))) fail();
    for (char c : frac_part)
        if (!std::isdigit(static_cast<unsigned char>(c))) fail();

    BigInt num = int_part.empty() ? BigInt(0) : BigInt(int_part);
    BigInt den = 1;
    for (char c : frac_part) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return Rational(num, den);
}

} // namespace ppat
