#include "support.hpp"

#include "bellid/bell.hpp"
#include "bellid/errors.hpp"
#include "bellid/family.hpp"

#include <doctest.h>

using namespace bellid;
using testing::Q;

namespace {

std::vector<FamilyKind> builtin_kinds(std::size_t order)
{
    return {family_kind::Monomial{},
            family_kind::FallingFactorial{},
            family_kind::RisingFactorial{},
            family_kind::Abel{Q("1")},
            family_kind::Abel{Q("-3/4")},
            family_kind::Touchard{},
            family_kind::FromMoments{MomentSequence::from_rule(SequenceRule::Factorial, order)}};
}

} // namespace

TEST_CASE("family_from_moments examples")
{
    const auto mono = family_from_moments(MomentSequence::from_rule(SequenceRule::Delta, 6), 6);
    for (std::size_t n = 0; n <= 6; ++n) CHECK(mono.f(n) == Poly::monomial(n));
    const auto touchard = family_from_moments(MomentSequence::from_rule(SequenceRule::Ones, 2), 2);
    CHECK(touchard.f(2) == Poly{Q("0"), Q("1"), Q("1")});
    const auto lah = family_from_moments(MomentSequence::from_rule(SequenceRule::Factorial, 2), 2);
    CHECK(lah.f(2) == Poly{Q("0"), Q("2"), Q("1")});
    CHECK_THROWS_AS(family_from_moments(MomentSequence::from_rule(SequenceRule::Ones, 2), 3), Error);
}

TEST_CASE("coefficients are Bell values")
{
    testing::RationalSampler rng(31);
    const MomentSequence x(rng.many(8));
    const auto fam = family_from_moments(x, 8);
    for (std::size_t n = 1; n <= 8; ++n) {
        CHECK(fam.f(n).coeff(0) == 0);
        for (std::size_t k = 1; k <= n; ++k) CHECK(fam.f(n).coeff(k) == bell_partial(x, n, k));
    }
    CHECK(moments_of(fam) == x);
}

TEST_CASE("moments of builtins")
{
    CHECK(moments_of(builtin_family(family_kind::Monomial{}, 4)) == MomentSequence({Q("1"), Q("0"), Q("0"), Q("0")}));
    // [x]_n has f_n'(0) = (-1)^{n-1} (n-1)!
    CHECK(moments_of(builtin_family(family_kind::FallingFactorial{}, 4)) ==
          MomentSequence({Q("1"), Q("-1"), Q("2"), Q("-6")}));
    CHECK(moments_of(builtin_family(family_kind::Touchard{}, 4)) == MomentSequence::from_rule(SequenceRule::Ones, 4));
    for (const auto& kind : builtin_kinds(8)) {
        const auto fam = builtin_family(kind, 8);
        const auto rebuilt = family_from_moments(moments_of(fam), 8);
        CHECK(rebuilt.polys == fam.polys);
    }
}

TEST_CASE("builtin family shapes")
{
    const auto falling = builtin_family(family_kind::FallingFactorial{}, 3);
    CHECK(falling.f(3) == Poly{Q("0"), Q("2"), Q("-3"), Q("1")});
    const auto rising = builtin_family(family_kind::RisingFactorial{}, 3);
    CHECK(rising.f(3) == Poly{Q("0"), Q("2"), Q("3"), Q("1")});
    const auto abel = builtin_family(family_kind::Abel{Q("2")}, 3);
    // x (x + 6)^2
    CHECK(abel.f(3) == Poly{Q("0"), Q("36"), Q("12"), Q("1")});
    CHECK_THROWS_AS((void)falling.f(4), Error);
    CHECK(falling.first_moment() == 1);
}

TEST_CASE("parse_family_kind")
{
    CHECK(to_string(parse_family_kind("touchard", 3)) == "touchard");
    CHECK(to_string(parse_family_kind("abel:-2/3", 3)) == "abel:-2/3");
    CHECK(to_string(parse_family_kind("moments:m!", 3)) == "moments:m!");
    CHECK_THROWS_AS(parse_family_kind("moments:zz", 3), Error);
    CHECK_THROWS_AS(parse_family_kind("hermite", 3), Error);
}

TEST_CASE("abelize")
{
    const auto mono = builtin_family(family_kind::Monomial{}, 6);
    CHECK(abelize(mono, 0).polys == mono.polys);
    // deforming monomials gives Abel polynomials
    CHECK(abelize(mono, Q("2")).polys == builtin_family(family_kind::Abel{Q("2")}, 6).polys);
    // deformations compose additively
    const auto touchard = builtin_family(family_kind::Touchard{}, 6);
    CHECK(abelize(abelize(touchard, Q("1/2")), Q("-1/3")).polys == abelize(touchard, Q("1/6")).polys);
    BinomialFamily bad;
    bad.polys = {Poly::constant(1), Poly{Q("1"), Q("1")}};
    CHECK_THROWS_AS(abelize(bad, 1), Error);
}

TEST_CASE("binomial-type validation")
{
    const auto grid = degree_complete_grid(8);
    for (const auto& kind : builtin_kinds(8)) {
        const auto fam = builtin_family(kind, 8);
        CHECK_MESSAGE(check_binomial_type(fam, grid).pass, fam.kind);
        for (const auto& a : {Q("0"), Q("1"), Q("-2/3"), Q("5")}) {
            CHECK_MESSAGE(check_binomial_type(abelize(fam, a), grid).pass, fam.kind, " a=", to_string(a));
        }
    }
}

TEST_CASE("binomial-type validation catches a broken family")
{
    auto fam = builtin_family(family_kind::Touchard{}, 8);
    fam.polys[5] += Poly::monomial(2);
    const auto verdict = check_binomial_type(fam, degree_complete_grid(8));
    CHECK_FALSE(verdict.pass);
    REQUIRE(verdict.first_violation);
    CHECK(verdict.first_violation->n == 5);
}

TEST_CASE("grid must be degree complete")
{
    const auto fam = builtin_family(family_kind::Monomial{}, 4);
    CHECK_THROWS_AS(check_binomial_type(fam, degree_complete_grid(3)), Error);
    auto grid = degree_complete_grid(4);
    grid.pop_back();
    CHECK_THROWS_AS(check_binomial_type(fam, grid), Error);
}

TEST_CASE("remark family from a fixed-point solution is binomial")
{
    // Y(n,k) = C(n-1,k-1) n!/k! (Lah) solves the partial-Bell equation for y = m!
    const auto y = [](std::size_t n, std::size_t k) { return bell_partial(MomentSequence::from_rule(SequenceRule::Factorial, n), n, k); };
    for (const auto& b : {Q("0"), Q("1"), Q("-1/2")}) {
        const auto fam = remark_family(y, b, 8);
        CHECK(check_binomial_type(fam, degree_complete_grid(8)).pass);
    }
}
