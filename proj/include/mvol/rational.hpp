#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mvol/error.hpp"

namespace mvol {

/// Exact rational scalar. GMP keeps values canonical after every operation.
using Rational = mpq_class;

/// Arbitrary precision integer, used by the fraction-free kernels.
using Integer = mpz_class;

using Vector = std::vector<Rational>;

/**
 * Parses "k", "-k", "p/q" or "-p/q" (decimal digits only) into a canonical
 * rational. Throws ParseError on anything else, including a zero denominator.
 */
inline Rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!digits(num) || !digits(den))
        throw ParseError("not a rational literal: \"" + std::string(text) + "\"");
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0)
        throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    if (text.front() == '-') n = -n;
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// Canonical text form: "k" when integral, otherwise "p/q" in lowest terms.
inline std::string to_string(const Rational& r) {
    return r.get_str(10);
}

inline std::string to_string(const Integer& z) {
    return z.get_str(10);
}

inline bool is_integer(const Rational& r) {
    return r.get_den() == 1;
}

/// Lexicographic order on coordinate vectors.
inline bool lex_less(const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline Rational dot(const Vector& a, const Vector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vector operator+(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vector operator*(const Rational& s, const Vector& a) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline Rational power(const Rational& base, unsigned exponent) {
    Rational r = 1;
    for (unsigned i = 0; i < exponent; ++i) r *= base;
    return r;
}

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace mvol
