#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "toric/errors.hpp"

namespace toric {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always stored reduced with a positive denominator
/// (the backend normalizes on every operation).
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) { return Rational(x); }

inline Rational rational_pow(const Rational& base, std::int64_t exponent) {
    if (exponent < 0) {
        if (base == 0) throw Error("rational_pow: zero base with negative exponent");
        return Rational(pow(denominator(base), static_cast<unsigned>(-exponent)),
                        pow(numerator(base), static_cast<unsigned>(-exponent)));
    }
    return Rational(pow(numerator(base), static_cast<unsigned>(exponent)),
                    pow(denominator(base), static_cast<unsigned>(exponent)));
}

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt c = 1;
    for (unsigned i = 0; i < k; ++i) {
        c *= n - i;
        c /= i + 1;  // divides exactly: c is always a binomial prefix
    }
    return c;
}

/// Formats as "num/den", denominator always present (canonical form for
/// basis dumps and explicit normalization maps).
inline std::string to_fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p/q" or a bare integer "p". Throws ValidationError on malformed
/// input or zero denominator.
inline Rational parse_fraction(std::string_view text) {
    const auto bad = [&] { throw ValidationError("malformed rational: '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
        const BigInt num{std::string(text.substr(0, slash))};
        const BigInt den{std::string(text.substr(slash + 1))};
        if (den == 0) bad();
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational();  // unreachable
}

}  // namespace toric
