#include "bellid/poly.hpp"

#include "bellid/errors.hpp"

#include <algorithm>
#include <utility>

namespace bellid {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    normalize();
}

Poly::Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs)
{
    normalize();
}

Poly Poly::constant(const Rational& c)
{
    return Poly({c});
}

Poly Poly::monomial(std::size_t degree, const Rational& c)
{
    std::vector<Rational> coeffs(degree + 1);
    coeffs[degree] = c;
    return Poly(std::move(coeffs));
}

Poly Poly::linear(const Rational& c)
{
    return Poly({c, Rational(1)});
}

void Poly::normalize()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

Rational Poly::coeff(std::size_t i) const
{
    return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Rational Poly::operator()(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

Poly& Poly::operator+=(const Poly& rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] += rhs.coeffs_[i];
    }
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] -= rhs.coeffs_[i];
    }
    normalize();
    return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs)
{
    if (lhs.is_zero() || rhs.is_zero()) {
        return {};
    }
    std::vector<Rational> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        if (lhs.coeffs_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& rhs)
{
    *this = *this * rhs;
    return *this;
}

Poly& Poly::operator*=(const Rational& c)
{
    for (auto& a : coeffs_) {
        a *= c;
    }
    normalize();
    return *this;
}

Poly poly_shift(const Poly& p, const Rational& c)
{
    // Taylor: coefficient m of p(x + c) is sum_{i>=m} C(i,m) p_i c^{i-m}.
    const auto coeffs = p.coeffs();
    const std::size_t n = coeffs.size();
    std::vector<Rational> out(n);
    std::vector<Rational> cpow(n, Rational(1));
    for (std::size_t i = 1; i < n; ++i) {
        cpow[i] = cpow[i - 1] * c;
    }
    for (std::size_t m = 0; m < n; ++m) {
        Rational acc = 0;
        for (std::size_t i = m; i < n; ++i) {
            acc += Rational(binomial(i, m)) * coeffs[i] * cpow[i - m];
        }
        out[m] = acc;
    }
    return Poly(std::move(out));
}

Rational poly_derive_eval(const Poly& p, std::size_t j, const Rational& c)
{
    const auto coeffs = p.coeffs();
    if (j >= coeffs.size()) {
        return 0;
    }
    // sum_{i>=j} p_i i!/(i-j)! c^{i-j}, Horner in c.
    Rational acc = 0;
    for (std::size_t i = coeffs.size(); i-- > j;) {
        acc *= c;
        acc += coeffs[i] * falling_ratio(i, j);
    }
    return acc;
}

Poly poly_derivative(const Poly& p)
{
    const auto coeffs = p.coeffs();
    if (coeffs.size() <= 1) {
        return {};
    }
    std::vector<Rational> out(coeffs.size() - 1);
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        out[i - 1] = coeffs[i] * static_cast<unsigned long>(i);
    }
    return Poly(std::move(out));
}

Poly poly_divide_exact(const Poly& p, const Poly& q)
{
    if (q.is_zero()) {
        throw Error(ErrorKind::InvalidParameter, "division by the zero polynomial");
    }
    if (p.is_zero()) {
        return {};
    }
    if (p.degree() < q.degree()) {
        throw Error(ErrorKind::NonZeroRemainder, to_string(p) + " is not divisible by " + to_string(q));
    }
    std::vector<Rational> rem(p.coeffs().begin(), p.coeffs().end());
    const auto qc = q.coeffs();
    const std::size_t dq = qc.size() - 1;
    std::vector<Rational> quot(rem.size() - dq);
    for (std::size_t i = quot.size(); i-- > 0;) {
        const Rational lead = rem[i + dq] / qc[dq];
        quot[i] = lead;
        for (std::size_t j = 0; j <= dq; ++j) {
            rem[i + j] -= lead * qc[j];
        }
    }
    if (std::any_of(rem.begin(), rem.end(), [](const Rational& r) { return r != 0; })) {
        throw Error(ErrorKind::NonZeroRemainder, to_string(p) + " is not divisible by " + to_string(q));
    }
    return Poly(std::move(quot));
}

Rational exp_shift_deriv(const Poly& p, std::size_t k, const Rational& alpha, const Rational& c)
{
    if (p.is_zero()) {
        return 0;
    }
    const std::size_t top = std::min<std::size_t>(k, static_cast<std::size_t>(p.degree()));
    Rational acc = 0;
    for (std::size_t j = 0; j <= top; ++j) {
        const Rational dj = poly_derive_eval(p, j, c);
        if (dj == 0) {
            continue;
        }
        acc += Rational(binomial(k, j)) * power(alpha, static_cast<long>(k - j)) * dj;
    }
    return acc;
}

std::vector<std::string> to_strings(const Poly& p)
{
    std::vector<std::string> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        out.push_back(to_string(c));
    }
    if (out.empty()) {
        out.emplace_back("0");
    }
    return out;
}

std::string to_string(const Poly& p)
{
    std::string out = "[";
    bool first = true;
    for (const auto& s : to_strings(p)) {
        out += first ? "" : ", ";
        out += s;
        first = false;
    }
    return out + "]";
}

} // namespace bellid
