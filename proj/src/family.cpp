#include "bellid/family.hpp"

#include "bellid/bell.hpp"
#include "bellid/errors.hpp"

#include <set>
#include <utility>

namespace bellid {

const Poly& BinomialFamily::f(std::size_t n) const
{
    if (n >= polys.size()) {
        throw Error(ErrorKind::FamilyTooShort, "f_" + std::to_string(n) + " requested from family '" + kind +
                                                   "' materialized to order " + std::to_string(order()));
    }
    return polys[n];
}

Rational BinomialFamily::first_moment() const
{
    return f(1).coeff(1);
}

FamilyKind parse_family_kind(std::string_view text, std::size_t order)
{
    if (text == "monomial") return family_kind::Monomial{};
    if (text == "falling") return family_kind::FallingFactorial{};
    if (text == "rising") return family_kind::RisingFactorial{};
    if (text == "touchard") return family_kind::Touchard{};
    if (text.starts_with("abel:")) {
        return family_kind::Abel{parse_rational(text.substr(5))};
    }
    if (text.starts_with("moments:")) {
        const auto rule = parse_sequence_rule(text.substr(8));
        if (!rule) {
            throw Error(ErrorKind::InvalidParameter, "unknown moment rule in family \"" + std::string(text) + "\"");
        }
        return family_kind::FromMoments{MomentSequence::from_rule(*rule, order)};
    }
    throw Error(ErrorKind::InvalidParameter, "unknown family \"" + std::string(text) + "\"");
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace

std::string to_string(const FamilyKind& kind)
{
    return std::visit(overloaded{
                          [](const family_kind::Monomial&) -> std::string { return "monomial"; },
                          [](const family_kind::FallingFactorial&) -> std::string { return "falling"; },
                          [](const family_kind::RisingFactorial&) -> std::string { return "rising"; },
                          [](const family_kind::Touchard&) -> std::string { return "touchard"; },
                          [](const family_kind::Abel& k) { return "abel:" + to_string(k.a); },
                          [](const family_kind::FromMoments& k) {
                              return "moments:" + k.moments.label().value_or("custom");
                          },
                      },
                      kind);
}

BinomialFamily family_from_moments(const MomentSequence& x, std::size_t order)
{
    if (x.size() < order) {
        throw Error(ErrorKind::InsufficientPrefix, "family of order " + std::to_string(order) + " needs " +
                                                       std::to_string(order) + " moments, got " +
                                                       std::to_string(x.size()));
    }
    BellTriangle tri(x);
    BinomialFamily fam;
    fam.kind = "moments:" + x.label().value_or("custom");
    fam.polys.reserve(order + 1);
    fam.polys.push_back(Poly::constant(1));
    for (std::size_t n = 1; n <= order; ++n) {
        std::vector<Rational> coeffs(n + 1);
        for (std::size_t k = 1; k <= n; ++k) {
            coeffs[k] = tri.cell(n, k);
        }
        fam.polys.emplace_back(std::move(coeffs));
    }
    return fam;
}

MomentSequence moments_of(const BinomialFamily& fam)
{
    std::vector<Rational> out;
    for (std::size_t n = 1; n <= fam.order(); ++n) {
        out.push_back(fam.polys[n].coeff(1));
    }
    return MomentSequence(std::move(out));
}

BinomialFamily abelize(const BinomialFamily& fam, const Rational& a)
{
    BinomialFamily out;
    out.kind = fam.kind;
    out.deformation = fam.deformation + a;
    out.polys.reserve(fam.polys.size());
    const Poly x = Poly::monomial(1);
    for (std::size_t n = 0; n < fam.polys.size(); ++n) {
        if (n == 0) {
            out.polys.push_back(Poly::constant(1));
            continue;
        }
        const Poly h = poly_divide_exact(fam.polys[n], x);
        out.polys.push_back(x * poly_shift(h, a * static_cast<unsigned long>(n)));
    }
    return out;
}

BinomialFamily builtin_family(const FamilyKind& kind, std::size_t order)
{
    BinomialFamily fam;
    fam.kind = to_string(kind);
    fam.polys.reserve(order + 1);

    const auto product_family = [&](int step) {
        Poly p = Poly::constant(1);
        fam.polys.push_back(p);
        for (std::size_t n = 1; n <= order; ++n) {
            // multiply by (x + step (n-1))
            p *= Poly::linear(Rational(step) * static_cast<unsigned long>(n - 1));
            fam.polys.push_back(p);
        }
    };

    std::visit(overloaded{
                   [&](const family_kind::Monomial&) {
                       for (std::size_t n = 0; n <= order; ++n) {
                           fam.polys.push_back(Poly::monomial(n));
                       }
                   },
                   [&](const family_kind::FallingFactorial&) { product_family(-1); },
                   [&](const family_kind::RisingFactorial&) { product_family(1); },
                   [&](const family_kind::Abel& k) {
                       // x (an + x)^{n-1}
                       fam.polys.push_back(Poly::constant(1));
                       for (std::size_t n = 1; n <= order; ++n) {
                           Poly p = Poly::monomial(1);
                           const Poly base = Poly::linear(k.a * static_cast<unsigned long>(n));
                           for (std::size_t i = 1; i < n; ++i) {
                               p *= base;
                           }
                           fam.polys.push_back(std::move(p));
                       }
                   },
                   [&](const family_kind::Touchard&) {
                       const auto s2 = classical_table(TriangleKind::Stirling2, order);
                       for (std::size_t n = 0; n <= order; ++n) {
                           fam.polys.emplace_back(s2[n]);
                       }
                   },
                   [&](const family_kind::FromMoments& k) {
                       auto built = family_from_moments(k.moments, order);
                       fam.polys = std::move(built.polys);
                   },
               },
               kind);
    return fam;
}

BinomialVerdict check_binomial_type(const BinomialFamily& fam, const std::vector<std::pair<Rational, Rational>>& points)
{
    const std::size_t order = fam.order();
    std::set<Rational> ps;
    std::set<Rational> qs;
    std::set<std::pair<Rational, Rational>> seen;
    for (const auto& pt : points) {
        ps.insert(pt.first);
        qs.insert(pt.second);
        seen.insert(pt);
    }
    if (ps.size() < order + 1 || qs.size() < order + 1 || seen.size() < ps.size() * qs.size()) {
        throw Error(ErrorKind::InvalidParameter,
                    "binomial-type grid must be a full product with at least " + std::to_string(order + 1) +
                        " distinct abscissae per axis");
    }

    BinomialVerdict verdict;
    for (std::size_t n = 0; n <= order; ++n) {
        for (const auto& [p, q] : points) {
            Rational rhs = 0;
            for (std::size_t k = 0; k <= n; ++k) {
                rhs += Rational(binomial(n, k)) * fam.polys[k](p) * fam.polys[n - k](q);
            }
            if (fam.polys[n](p + q) != rhs) {
                verdict.pass = false;
                verdict.first_violation = BinomialViolation{n, p, q};
                return verdict;
            }
        }
    }
    return verdict;
}

std::vector<std::pair<Rational, Rational>> degree_complete_grid(std::size_t order)
{
    std::vector<std::pair<Rational, Rational>> out;
    out.reserve((order + 1) * (order + 1));
    for (std::size_t i = 0; i <= order; ++i) {
        // p_i = (2i - N)/3, q_j = (j + 1)/(j + 2) - 1/2
        const Rational p = ratio(Integer(static_cast<long>(2 * i) - static_cast<long>(order)), 3);
        for (std::size_t j = 0; j <= order; ++j) {
            const Rational q = ratio(static_cast<unsigned long>(j + 1), static_cast<unsigned long>(j + 2)) - Rational(1, 2);
            out.emplace_back(p, q);
        }
    }
    return out;
}

BinomialFamily remark_family(const std::function<Rational(std::size_t, std::size_t)>& y, const Rational& b,
                             std::size_t order)
{
    BinomialFamily fam;
    fam.kind = "remark";
    fam.deformation = b;
    fam.polys.push_back(Poly::constant(1));
    const Poly t = Poly::monomial(1);
    for (std::size_t n = 1; n <= order; ++n) {
        const Poly base = Poly::linear(b * static_cast<unsigned long>(n));
        Poly power_k = Poly::constant(1); // (bn + t)^{k-1}
        Poly sum;
        for (std::size_t k = 1; k <= n; ++k) {
            sum += y(n, k) * power_k;
            power_k *= base;
        }
        fam.polys.push_back(t * sum);
    }
    return fam;
}

} // namespace bellid
