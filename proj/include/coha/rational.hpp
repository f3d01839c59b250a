#pragma once

// Exact integer and rational scalars (GMP) plus the string forms used in documents.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coha
{

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (exact division, residual, ...).
class InternalError : public Error
{
public:
    using Error::Error;
};

/// Parses "n", "-p/q" or a decimal such as "0.25" into a canonical rational.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) {
        throw Error("empty rational literal");
    }
    auto dot = s.find('.');
    Rational r;
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos || s.find('.', dot + 1) != std::string::npos) {
            throw Error("malformed rational literal '" + s + "'");
        }
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const auto frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+") {
            throw Error("malformed rational literal '" + s + "'");
        }
        Integer num;
        if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) {
            throw Error("malformed rational literal '" + s + "'");
        }
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        r = Rational(num, den);
    } else {
        if (s[0] == '+') {
            s.erase(0, 1);
        }
        if (r.set_str(s, 10) != 0) {
            throw Error("malformed rational literal '" + std::string(text) + "'");
        }
        if (r.get_den() == 0) {
            throw Error("zero denominator in '" + std::string(text) + "'");
        }
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational &r)
{
    return r.get_str();
}

inline std::string to_string(const Integer &z)
{
    return z.get_str();
}

inline bool is_integer(const Rational &r)
{
    return r.get_den() == 1;
}

/// Möbius function on positive integers.
inline int mobius(long n)
{
    if (n < 1) {
        throw Error("mobius: argument must be positive");
    }
    int result = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) {
                return 0;
            }
            result = -result;
        }
    }
    if (n > 1) {
        result = -result;
    }
    return result;
}

inline Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

} // namespace coha
