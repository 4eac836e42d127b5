#pragma once

#include "bellid/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace bellid {

/// Dense univariate polynomial over the rationals, constant term first.
///
/// Trailing zero coefficients are stripped after every operation, so the
/// zero polynomial is the empty coefficient list and two polynomials are
/// equal iff their coefficient lists are.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    Poly(std::initializer_list<Rational> coeffs);

    static Poly constant(const Rational& c);
    static Poly monomial(std::size_t degree, const Rational& c = 1);
    /// x + c
    static Poly linear(const Rational& c);

    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    [[nodiscard]] long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    [[nodiscard]] std::span<const Rational> coeffs() const noexcept { return coeffs_; }
    /// Coefficient of x^i; zero past the degree.
    [[nodiscard]] Rational coeff(std::size_t i) const;

    [[nodiscard]] Rational operator()(const Rational& x) const;

    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);
    Poly& operator*=(const Rational& c);

    friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
    friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
    friend Poly operator*(const Poly& lhs, const Poly& rhs);
    friend Poly operator*(Poly lhs, const Rational& c) { return lhs *= c; }
    friend Poly operator*(const Rational& c, Poly rhs) { return rhs *= c; }
    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void normalize();

    std::vector<Rational> coeffs_;
};

/// q(x) = p(x + c).
Poly poly_shift(const Poly& p, const Rational& c);

/// p^{(j)}(c); zero when j exceeds the degree.
Rational poly_derive_eval(const Poly& p, std::size_t j, const Rational& c);

/// Formal derivative.
Poly poly_derivative(const Poly& p);

/// h with p = q * h. Throws Error(NonZeroRemainder) if q does not divide p,
/// Error(InvalidParameter) if q is zero.
Poly poly_divide_exact(const Poly& p, const Poly& q);

/// k-th derivative at z = 0 of e^{alpha z} p(c + z), i.e.
/// sum_j C(k,j) alpha^{k-j} p^{(j)}(c), truncated at min(k, deg p).
Rational exp_shift_deriv(const Poly& p, std::size_t k, const Rational& alpha, const Rational& c);

/// Coefficients as "p/q" strings, constant term first.
std::vector<std::string> to_strings(const Poly& p);
std::string to_string(const Poly& p);

} // namespace bellid
