#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bellid {

/// Exact rational scalar. GMP keeps numerator/denominator canonical
/// (gcd 1, positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" with "/q" omitted when q == 1.
std::string to_string(const Rational& value);

/// Accepts "p", "p/q", "-p/q" (whitespace around is ignored). Throws
/// Error(InvalidParameter) on anything else or on a zero denominator.
Rational parse_rational(std::string_view text);

/// num/den in canonical form (mpq_class's two-argument constructor is not).
inline Rational ratio(const Integer& num, const Integer& den)
{
    Rational out(num, den);
    out.canonicalize();
    return out;
}

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

/// value^exponent; a negative exponent inverts (throws on 0^-e).
Rational power(const Rational& value, long exponent);

inline Rational falling_ratio(unsigned long n, unsigned long k)
{
    // n! / (n-k)!
    Integer out = 1;
    for (unsigned long i = 0; i < k; ++i) {
        out *= n - i;
    }
    return Rational(out);
}

} // namespace bellid
