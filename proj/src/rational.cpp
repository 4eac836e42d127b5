#include "bellid/rational.hpp"

#include "bellid/errors.hpp"

#include <cctype>

namespace bellid {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InsufficientPrefix: return "InsufficientPrefix";
    case ErrorKind::NonZeroRemainder: return "NonZeroRemainder";
    case ErrorKind::FamilyTooShort: return "FamilyTooShort";
    case ErrorKind::ZeroAlpha: return "ZeroAlpha";
    case ErrorKind::ZeroFirstMoment: return "ZeroFirstMoment";
    case ErrorKind::ZeroGamma: return "ZeroGamma";
    case ErrorKind::UnboundedSum: return "UnboundedSum";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    }
    return "Unknown";
}

std::string to_string(const Rational& value)
{
    return value.get_str(10);
}

namespace {

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

Integer parse_integer(std::string_view s)
{
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    return Integer(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto s = trim(text);
    const auto slash = s.find('/');
    const auto num = s.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
        throw Error(ErrorKind::InvalidParameter, "not a rational literal: \"" + std::string(text) + "\"");
    }
    Integer d = parse_integer(den);
    if (d == 0) {
        throw Error(ErrorKind::InvalidParameter, "zero denominator in \"" + std::string(text) + "\"");
    }
    Rational out(parse_integer(num), d);
    out.canonicalize();
    return out;
}

Integer factorial(unsigned long n)
{
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

Integer binomial(unsigned long n, unsigned long k)
{
    if (k > n) {
        return 0;
    }
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

Rational power(const Rational& value, long exponent)
{
    if (exponent < 0) {
        if (value == 0) {
            throw Error(ErrorKind::InvalidParameter, "zero raised to a negative power");
        }
        Rational inv = 1 / value;
        return power(inv, -exponent);
    }
    const auto e = static_cast<unsigned long>(exponent);
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), value.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), value.get_den_mpz_t(), e);
    return out;
}

} // namespace bellid
