#pragma once

#include "bellid/poly.hpp"
#include "bellid/rational.hpp"
#include "bellid/sequences.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace bellid {

/// f_0 .. f_N of a binomial-type sequence, possibly a-deformed.
struct BinomialFamily {
    std::vector<Poly> polys;
    Rational deformation = 0;
    std::string kind;

    /// N, the largest materialized index.
    [[nodiscard]] std::size_t order() const noexcept { return polys.empty() ? 0 : polys.size() - 1; }
    /// f_n; Error(FamilyTooShort) past the order.
    [[nodiscard]] const Poly& f(std::size_t n) const;
    /// Df_1(0), the first moment.
    [[nodiscard]] Rational first_moment() const;
};

namespace family_kind {
struct Monomial {};
struct FallingFactorial {};
struct RisingFactorial {};
struct Abel {
    Rational a;
};
struct Touchard {};
struct FromMoments {
    MomentSequence moments;
};
} // namespace family_kind

using FamilyKind = std::variant<family_kind::Monomial, family_kind::FallingFactorial, family_kind::RisingFactorial,
                                family_kind::Abel, family_kind::Touchard, family_kind::FromMoments>;

/// "monomial", "falling", "rising", "touchard", "abel:<p/q>", "moments:<rule>"
/// where <rule> is one of the sequence rule names. The moment sequence of
/// "moments:" is materialized to `order` terms.
FamilyKind parse_family_kind(std::string_view text, std::size_t order);
std::string to_string(const FamilyKind& kind);

/// f_n(x) = sum_{k=1}^n B_{n,k}(x_1, x_2, ...) x^k, f_0 = 1.
BinomialFamily family_from_moments(const MomentSequence& x, std::size_t order);

/// x_n = f_n'(0) for n = 1..N.
MomentSequence moments_of(const BinomialFamily& fam);

/// f_n(x; a) = x/(an + x) f_n(an + x), realized as x * shift(f_n / x, a n).
/// Throws Error(NonZeroRemainder) if some f_n (n >= 1) has f_n(0) != 0.
BinomialFamily abelize(const BinomialFamily& fam, const Rational& a);

BinomialFamily builtin_family(const FamilyKind& kind, std::size_t order);

struct BinomialViolation {
    std::size_t n;
    Rational p;
    Rational q;
};

struct BinomialVerdict {
    bool pass = true;
    std::optional<BinomialViolation> first_violation;
};

/// Checks f_n(p+q) = sum_k C(n,k) f_k(p) f_{n-k}(q) for every n <= N at
/// every point. The points must cover a full grid with at least N+1 distinct
/// abscissae on each axis (then agreement is a polynomial identity);
/// otherwise Error(InvalidParameter).
BinomialVerdict check_binomial_type(const BinomialFamily& fam, const std::vector<std::pair<Rational, Rational>>& points);

/// (N+1)^2 grid points with N+1 distinct abscissae per axis.
std::vector<std::pair<Rational, Rational>> degree_complete_grid(std::size_t order);

/// p_n(t) = t sum_{k=1}^n Y(n,k) (bn + t)^{k-1}, p_0 = 1.
BinomialFamily remark_family(const std::function<Rational(std::size_t, std::size_t)>& y, const Rational& b,
                             std::size_t order);

} // namespace bellid
