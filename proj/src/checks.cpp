#include "bellid/checks.hpp"

#include "bellid/bell.hpp"
#include "bellid/errors.hpp"
#include "bellid/verify.hpp"

namespace bellid {

namespace {

Rational pw(const Rational& v, std::size_t e)
{
    return power(v, static_cast<long>(e));
}

Rational c_nk(std::size_t n, std::size_t k)
{
    return Rational(binomial(n, k));
}

// B_{n,k}(w) against rhs(n,k) on the triangle.
IdentityReport bell_identity(std::string id, ParamList params, const std::vector<Rational>& w, std::size_t n_max,
                             const CellFn& rhs)
{
    auto tri = std::make_shared<BellTriangle>(MomentSequence(w));
    return compare_cells(std::move(id), std::move(params), n_max, std::nullopt,
                         [tri](std::size_t n, std::size_t k) -> Rational { return tri->cell(n, k); }, rhs);
}

IdentityReport errored(std::string id, ParamList params, std::size_t n_max, std::optional<std::size_t> s_max,
                       const std::exception& e)
{
    IdentityReport r;
    r.identity = std::move(id);
    r.params = std::move(params);
    r.n_max = n_max;
    r.s_max = s_max;
    r.status = Status::Error;
    r.error = e.what();
    return r;
}

ParamList s1_params(const BinomialFamily& fam, const S1Point& pt)
{
    return {{"family", fam.kind},          {"a", to_string(fam.deformation)}, {"x", to_string(pt.x)},
            {"y", to_string(pt.y)},        {"alpha", to_string(pt.alpha)},    {"beta", to_string(pt.beta)},
            {"lambda", to_string(pt.lambda)}};
}

} // namespace

std::string_view to_string(S1Identity which) noexcept
{
    switch (which) {
    case S1Identity::P2: return "p2";
    case S1Identity::P2Printed: return "p2-printed";
    case S1Identity::P3: return "p3";
    case S1Identity::P4: return "p4";
    }
    return "p2";
}

IdentityReport check_s1(S1Identity which, const BinomialFamily& fam, const S1Point& pt, std::size_t n_max)
{
    const std::string id(to_string(which));
    ParamList params = s1_params(fam, pt);
    try {
        const auto& [x, y, al, be, la] = pt;
        auto f = [&](std::size_t m) -> const Poly& { return fam.f(m); };
        auto d1 = [&](std::size_t m, const Rational& c) { return poly_derive_eval(fam.f(m), 1, c); };
        // evaluation points (beta - lambda) j + lambda k
        auto at = [&](std::size_t j, std::size_t k) -> Rational { return (be - la) * Rational(j) + la * Rational(k); };

        std::vector<Rational> w;
        CellFn rhs;
        for (std::size_t m = 1; m <= n_max; ++m) {
            const Rational mm(m);
            switch (which) {
            case S1Identity::P2:
                w.push_back(mm * (y * (al * f(m - 1)(la) + d1(m - 1, la)) + x * (al * f(m - 1)(be) + d1(m - 1, be))));
                break;
            case S1Identity::P2Printed: w.push_back(mm * (al * y * f(m - 1)(la) + x * d1(m - 1, be))); break;
            case S1Identity::P3: w.push_back(y * d1(m, la) + x * d1(m, be)); break;
            case S1Identity::P4: w.push_back(mm * (y * f(m - 1)(la) + x * f(m - 1)(be))); break;
            }
        }
        switch (which) {
        case S1Identity::P2:
        case S1Identity::P2Printed:
            rhs = [&fam, pt, at](std::size_t n, std::size_t k) -> Rational {
                Rational tot = 0;
                for (std::size_t j = 0; j <= k; ++j) {
                    tot += c_nk(k, j) * exp_shift_deriv(fam.f(n - k), k, pt.alpha, at(j, k)) * pw(pt.x, j) *
                           pw(pt.y, k - j);
                }
                return c_nk(n, k) * tot;
            };
            break;
        case S1Identity::P3:
            rhs = [&fam, pt, at](std::size_t n, std::size_t k) -> Rational {
                Rational tot = 0;
                for (std::size_t j = 0; j <= k; ++j) {
                    tot += c_nk(k, j) * poly_derive_eval(fam.f(n), k, at(j, k)) * pw(pt.x, j) * pw(pt.y, k - j);
                }
                return tot / Rational(factorial(k));
            };
            break;
        case S1Identity::P4:
            rhs = [&fam, pt, at](std::size_t n, std::size_t k) -> Rational {
                Rational tot = 0;
                for (std::size_t j = 0; j <= k; ++j) {
                    tot += c_nk(k, j) * fam.f(n - k)(at(j, k)) * pw(pt.x, j) * pw(pt.y, k - j);
                }
                return c_nk(n, k) * tot;
            };
            break;
        }
        return bell_identity(id, std::move(params), w, n_max, rhs);
    } catch (const std::exception& e) {
        return errored(id, std::move(params), n_max, std::nullopt, e);
    }
}

std::vector<IdentityReport> check_s1_identities(const BinomialFamily& fam, const S1Point& pt, std::size_t n_max)
{
    std::vector<IdentityReport> out;
    for (auto which : {S1Identity::P2, S1Identity::P2Printed, S1Identity::P3, S1Identity::P4}) {
        out.push_back(check_s1(which, fam, pt, n_max));
    }
    return out;
}

Rational appell_value(const std::vector<Rational>& a, std::size_t n, const Rational& x, const Rational& y,
                      const Rational& z)
{
    Rational tot = 0;
    const Rational sum = x + y + z;
    for (std::size_t j = 0; j <= n && j < a.size(); ++j) {
        if (j == n) {
            tot += a[j];
            continue;
        }
        const Rational jj(j);
        tot += c_nk(n, j) * a[j] * ((x + y) * jj + sum) * pw(x * jj + y * Rational(n) + sum, n - 1 - j);
    }
    return tot;
}

namespace {

IdentityReport appell_one(std::string id, const std::vector<Rational>& a, const Rational& x, const Rational& y,
                          const Rational& z, std::size_t n_max)
{
    std::string list = "[";
    for (std::size_t i = 0; i < a.size(); ++i) list += (i ? "," : "") + to_string(a[i]);
    ParamList params{{"a", list + "]"}, {"x", to_string(x)}, {"y", to_string(y)}, {"z", to_string(z)}};
    try {
        std::vector<Rational> w, weighted;
        for (std::size_t m = 1; m <= n_max; ++m) {
            w.push_back(Rational(m) * appell_value(a, m - 1, x, y, z));
            weighted.push_back(m - 1 < a.size() ? Rational(m) * a[m - 1] : Rational(0));
        }
        auto base = std::make_shared<BellTriangle>(MomentSequence(weighted));
        return bell_identity(std::move(id), std::move(params), w, n_max, [=](std::size_t n, std::size_t k) -> Rational {
            Rational tot = 0;
            const Rational kz = Rational(k) * z;
            for (std::size_t j = k; j <= n; ++j) {
                const Rational jj(j);
                const Rational fac =
                    j == n ? Rational(1) : pw(jj * x + Rational(n) * y + kz, n - j - 1) * ((x + y) * jj + kz);
                tot += c_nk(n, j) * base->cell(j, k) * fac;
            }
            return tot;
        });
    } catch (const std::exception& e) {
        return errored(std::move(id), std::move(params), n_max, std::nullopt, e);
    }
}

} // namespace

std::vector<IdentityReport> appell_check(const std::vector<Rational>& a, const Rational& x, const Rational& y,
                                         const Rational& z, std::size_t n_max)
{
    return {appell_one("appell", a, x, y, z, n_max), appell_one("appell-plain", a, 0, 0, z, n_max)};
}

std::vector<Rational> hessenberg_dets(const std::vector<Rational>& phi, const Rational& x, std::size_t n_max)
{
    if (phi.size() < n_max) {
        throw Error(ErrorKind::InsufficientPrefix, "Hessenberg determinants up to order " + std::to_string(n_max) +
                                                       " need " + std::to_string(n_max) + " values of phi, got " +
                                                       std::to_string(phi.size()));
    }
    std::vector<Rational> P{Rational(1)};
    for (std::size_t n = 1; n <= n_max; ++n) {
        // expand along the last column: entry (i, n) times the product of the
        // subdiagonal i, i+1, ..., n-1 below it
        Rational tot = 0;
        for (std::size_t i = 1; i <= n; ++i) {
            Rational h = phi[n - i];
            if (i == n) h += x;
            Rational prod = 1;
            for (std::size_t j = i; j < n; ++j) prod *= Rational(j);
            const Rational term = h * prod * P[i - 1];
            tot += (n - i) % 2 == 0 ? term : Rational(-term);
        }
        P.push_back(tot);
    }
    return P;
}

IdentityReport hessenberg_check(const std::vector<Rational>& phi, const Rational& x, std::size_t n_max)
{
    std::string list = "[";
    for (std::size_t i = 0; i < phi.size(); ++i) list += (i ? "," : "") + to_string(phi[i]);
    ParamList params{{"phi", list + "]"}, {"x", to_string(x)}};
    try {
        const auto px = hessenberg_dets(phi, x, n_max);
        const auto p0 = hessenberg_dets(phi, 0, n_max);
        std::vector<Rational> w, w0;
        for (std::size_t m = 1; m <= n_max; ++m) {
            w.push_back(Rational(m) * px[m - 1]);
            w0.push_back(Rational(m) * p0[m - 1]);
        }
        auto base = std::make_shared<BellTriangle>(MomentSequence(w0));
        return bell_identity("hessenberg", std::move(params), w, n_max, [=](std::size_t n, std::size_t k) -> Rational {
            Rational tot = 0;
            for (std::size_t j = k; j <= n; ++j) {
                tot += c_nk(n, j) * base->cell(j, k) * pw(Rational(k) * x, n - j);
            }
            return tot;
        });
    } catch (const std::exception& e) {
        return errored("hessenberg", std::move(params), n_max, std::nullopt, e);
    }
}

namespace {

void require_unit_weight(unsigned u, unsigned v)
{
    if (u + v != 1) {
        throw Error(ErrorKind::InvalidParameter, "collapse check needs u + v = 1 (u = " + std::to_string(u) +
                                                     ", v = " + std::to_string(v) + ")");
    }
}

} // namespace

IdentityReport collapse_check(const ysource::Thm3& src, unsigned r, unsigned s, std::size_t n_max)
{
    const std::string id = "collapse-thm3";
    try {
        require_unit_weight(src.u, src.v);
        ysource::Thm3 g = src;
        g.aux = AuxSequence({Rational(1)});
        const YBuilder y3(g, r, s);
        const YBuilder y1(ysource::Thm1{src.fam, src.beta + src.lambda, src.alpha}, r, s);
        const Rational x = src.x;
        return compare_cells(id, y3.params(), n_max, std::nullopt, y3, [=](std::size_t n, std::size_t k) -> Rational {
            return pw(x, r * (n - k) + s * k) * y1(n, k);
        });
    } catch (const std::exception& e) {
        return errored(id, {}, n_max, std::nullopt, e);
    }
}

IdentityReport collapse_check(const ysource::Thm3Alpha0& src, unsigned r, unsigned s, std::size_t n_max)
{
    const std::string id = "collapse-thm3-alpha0";
    try {
        require_unit_weight(src.u, src.v);
        ysource::Thm3Alpha0 g = src;
        g.aux = AuxSequence({Rational(1)});
        const YBuilder y3(g, r, s);
        const YBuilder y1(ysource::Thm1Alpha0{src.fam, src.beta + src.lambda}, r, s);
        const Rational x = src.x;
        return compare_cells(id, y3.params(), n_max, std::nullopt, y3, [=](std::size_t n, std::size_t k) -> Rational {
            return pw(x, r * (n - k) + s * k) * y1(n, k);
        });
    } catch (const std::exception& e) {
        return errored(id, {}, n_max, std::nullopt, e);
    }
}

IdentityReport collapse_check(const zsource::Thm4& src, unsigned r, std::size_t n_max, std::size_t s_max)
{
    const std::string id = "collapse-thm4";
    try {
        require_unit_weight(src.u, src.v);
        zsource::Thm4 g = src;
        g.aux = AuxSequence({Rational(1)});
        const ZBuilder z4(g, r);
        const ZBuilder z2(zsource::Thm2{src.fam, src.beta + src.lambda, src.alpha}, r);
        const Rational x = src.x;
        return compare_cells(id, z4.params(), n_max, s_max, z4,
                             [=](std::size_t n, std::size_t s) -> Rational { return pw(x, n * r) * z2(n, s); });
    } catch (const std::exception& e) {
        return errored(id, {}, n_max, s_max, e);
    }
}

IdentityReport collapse_check(const zsource::Thm4Alpha0& src, unsigned r, std::size_t n_max, std::size_t s_max)
{
    const std::string id = "collapse-thm4-alpha0";
    try {
        require_unit_weight(src.u, src.v);
        zsource::Thm4Alpha0 g = src;
        g.aux = AuxSequence({Rational(1)});
        const ZBuilder z4(g, r);
        const ZBuilder z2(zsource::Thm2Alpha0{src.fam, src.beta + src.lambda}, r);
        const Rational x = src.x;
        return compare_cells(id, z4.params(), n_max, s_max, z4,
                             [=](std::size_t n, std::size_t s) -> Rational { return pw(x, n * r) * z2(n, s); });
    } catch (const std::exception& e) {
        return errored(id, {}, n_max, s_max, e);
    }
}

IdentityReport specialization_z1_z2(const MomentSequence& moments, const Rational& x, unsigned r, unsigned s,
                                    std::size_t n_max)
{
    const std::string id = "specialize-z1-z2";
    try {
        const YBuilder z1(ysource::CorZ1{moments, Rational(r + 1) * x, x, Reading::Derived}, r, s);
        const YBuilder z2(ysource::CorZ2{moments, x}, r, s);
        return compare_cells(id, z1.params(), n_max, std::nullopt, z1, z2);
    } catch (const std::exception& e) {
        return errored(id, {}, n_max, std::nullopt, e);
    }
}

IdentityReport specialization_z3_z4(const MomentSequence& moments, const Rational& x, unsigned r, Reading reading,
                                    std::size_t n_max, std::size_t s_max)
{
    const std::string id = reading == Reading::Printed ? "specialize-z3-z4-printed" : "specialize-z3-z4";
    try {
        const Rational wide = Rational(r + 1) * x;
        const auto src = reading == Reading::Printed ? zsource::CorZ3{moments, wide, x} : zsource::CorZ3{moments, x, wide};
        const ZBuilder z3(src, r);
        const ZBuilder z4(zsource::CorZ4{moments, x}, r);
        return compare_cells(id, z3.params(), n_max, s_max, z3, z4);
    } catch (const std::exception& e) {
        return errored(id, {}, n_max, s_max, e);
    }
}

} // namespace bellid
