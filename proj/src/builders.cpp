#include "bellid/builders.hpp"

#include "bellid/bell.hpp"
#include "bellid/errors.hpp"
#include "bellid/poly.hpp"

#include <algorithm>
#include <functional>

namespace bellid {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

[[noreturn]] void invalid(const std::string& what)
{
    throw Error(ErrorKind::InvalidParameter, what);
}

// sk/T off the diagonal, 1 on it.
Rational diag_factor(std::size_t n, std::size_t k, unsigned s, std::size_t T)
{
    if (n == k) return 1;
    return ratio(Integer(static_cast<unsigned long>(s) * k), Integer(static_cast<unsigned long>(T)));
}

Rational inv_factorial(std::size_t n)
{
    return ratio(1, factorial(n));
}

Rational c_nk(std::size_t n, std::size_t k)
{
    return Rational(binomial(n, k));
}

Rational pow_u(const Rational& v, std::size_t e)
{
    return power(v, static_cast<long>(e));
}

std::shared_ptr<BellTriangle> aux_triangle(const AuxSequence& aux)
{
    return std::make_shared<BellTriangle>(std::function<Rational(std::size_t)>([aux](std::size_t m) { return aux.a(m); }));
}

std::string fam_kind(const BinomialFamily& fam)
{
    return fam.kind;
}

} // namespace

std::string_view to_string(Reading reading) noexcept
{
    return reading == Reading::Printed ? "printed" : "derived";
}

Reading parse_reading(std::string_view text)
{
    if (text == "printed") return Reading::Printed;
    if (text == "derived") return Reading::Derived;
    invalid("reading must be \"printed\" or \"derived\", got \"" + std::string(text) + "\"");
}

// ---------------------------------------------------------------- orders

namespace {

std::size_t max_cell(std::size_t n_max, const std::function<long(long, long)>& idx)
{
    long best = 0;
    for (long n = 1; n <= static_cast<long>(n_max); ++n) {
        for (long k = 1; k <= n; ++k) {
            best = std::max(best, idx(n, k));
        }
    }
    return static_cast<std::size_t>(best);
}

std::size_t max_cell_z(std::size_t n_max, std::size_t s_max, const std::function<long(long, long)>& idx)
{
    long best = 0;
    for (long n = 1; n <= static_cast<long>(n_max); ++n) {
        for (long s = 0; s <= static_cast<long>(s_max); ++s) {
            best = std::max(best, idx(n, s));
        }
    }
    return static_cast<std::size_t>(best);
}

} // namespace

std::size_t required_family_order(const YSource& src, unsigned r, unsigned s, std::size_t n_max)
{
    const long R = r, S = s;
    auto T = [=](long n, long k) { return R * (n - k) + S * k; };
    auto plain = [&](long n, long k) { return n - k; };
    return std::visit(
        overloaded{
            [&](const ysource::Prop4&) -> std::size_t { return 0; },
            [&](const ysource::CorZ1&) -> std::size_t { return 0; },
            [&](const ysource::CorZ2&) -> std::size_t { return 0; },
            [&](const ysource::Thm1Alpha0&) { return max_cell(n_max, [&](long n, long k) { return T(n, k) + n - k; }); },
            [&](const ysource::Thm3Alpha0& p) {
                const long w = p.u + p.v;
                return max_cell(n_max, [&](long n, long k) { return w * T(n, k) + n - k; });
            },
            [&](const ysource::CorZ8B& p) {
                const long w = p.reading == Reading::Printed ? p.v : p.u + p.v;
                return max_cell(n_max, [&](long n, long k) { return w * T(n, k) + n - k; });
            },
            [&](const ysource::CorZ88& p) {
                if (p.which == 2) return max_cell(n_max, [&](long n, long k) { return n + (S - 1) * k; });
                return max_cell(n_max, plain);
            },
            [&](const auto&) { return max_cell(n_max, plain); },
        },
        src);
}

std::size_t required_family_order(const ZSource& src, unsigned r, std::size_t n_max, std::size_t s_max)
{
    const long Rr = r;
    auto R = [=](long n, long s) { return n * Rr + s; };
    auto plain = [](long n, long) { return n; };
    return std::visit(
        overloaded{
            [&](const zsource::Prop8&) -> std::size_t { return 0; },
            [&](const zsource::CorZ3&) -> std::size_t { return 0; },
            [&](const zsource::CorZ4&) -> std::size_t { return 0; },
            [&](const zsource::Thm2Alpha0&) { return max_cell_z(n_max, s_max, [&](long n, long s) { return R(n, s) + n; }); },
            [&](const zsource::Thm4Alpha0& p) {
                const long w = p.u + p.v;
                return max_cell_z(n_max, s_max, [&](long n, long s) { return n + w * R(n, s); });
            },
            [&](const zsource::CorZ12B& p) {
                const long w = p.reading == Reading::Printed ? p.u + p.v : p.v;
                return max_cell_z(n_max, s_max, [&](long n, long s) { return n + w * R(n, s); });
            },
            [&](const auto&) { return max_cell_z(n_max, s_max, plain); },
        },
        src);
}

std::size_t required_moment_count(const YSource& src, std::size_t n_max)
{
    const bool moments = std::holds_alternative<ysource::Prop4>(src) || std::holds_alternative<ysource::CorZ1>(src) ||
                         std::holds_alternative<ysource::CorZ2>(src);
    return moments ? n_max : 0;
}

std::size_t required_moment_count(const ZSource& src, std::size_t n_max)
{
    const bool moments = std::holds_alternative<zsource::Prop8>(src) || std::holds_alternative<zsource::CorZ3>(src) ||
                         std::holds_alternative<zsource::CorZ4>(src);
    return moments ? n_max + 1 : 0;
}

// ---------------------------------------------------------------- gammas

Rational thm4_gamma(const zsource::Thm4& src)
{
    return pow_u(src.alpha, src.v) * src.aux.phi(src.x * pow_u(src.alpha, src.u));
}

Rational thm4_gamma(const zsource::Thm4Alpha0& src)
{
    const Rational x1 = src.fam.first_moment();
    if (src.u >= 1) {
        return src.aux.a(1) * src.x * pow_u(x1, src.u + src.v);
    }
    return pow_u(x1, src.v) * src.aux.phi(src.x);
}

Rational z12a_gamma(const zsource::CorZ12A& src)
{
    return pow_u(src.alpha, src.v) * (src.x * pow_u(src.alpha, src.u) + src.y);
}

Rational z12b_gamma(const zsource::CorZ12B& src)
{
    const Rational x1v = pow_u(src.fam.first_moment(), src.v);
    const bool u_pos = src.u >= 1;
    // the derived reading swaps the two cases of the printed one
    const bool y_only = src.reading == Reading::Derived ? u_pos : !u_pos;
    return y_only ? Rational(src.y * x1v) : Rational((src.x + src.y) * x1v);
}

// ---------------------------------------------------------------- Y

struct YCore {
    std::string name;
    YSource source;
    unsigned r = 0;
    unsigned s = 0;
    ParamList extra;
    std::shared_ptr<BellTriangle> tri;
};

struct YBuilder::State {
    std::shared_ptr<const YCore> core;
    Rational scale = 1;
    bool scaled = false;
    std::map<std::pair<std::size_t, std::size_t>, Rational> overrides;
};

namespace {

std::string y_name(const YSource& src)
{
    return std::visit(overloaded{
                          [](const ysource::Prop4&) { return std::string("prop4"); },
                          [](const ysource::Thm1&) { return std::string("thm1"); },
                          [](const ysource::Thm1Alpha0&) { return std::string("thm1-alpha0"); },
                          [](const ysource::RS0&) { return std::string("rs0"); },
                          [](const ysource::Thm3&) { return std::string("thm3"); },
                          [](const ysource::Thm3Alpha0&) { return std::string("thm3-alpha0"); },
                          [](const ysource::CorP1&) { return std::string("p1"); },
                          [](const ysource::CorZ1&) { return std::string("z1"); },
                          [](const ysource::CorZ2&) { return std::string("z2"); },
                          [](const ysource::CorZ8A&) { return std::string("z8a"); },
                          [](const ysource::CorZ8B&) { return std::string("z8b"); },
                          [](const ysource::CorZ88& p) { return "z88-y" + std::to_string(p.which); },
                      },
                      src);
}

void require_vu(unsigned u, unsigned v)
{
    if (v < u) invalid("v >= u is required (u = " + std::to_string(u) + ", v = " + std::to_string(v) + ")");
}

void validate_y(const YSource& src, unsigned r, unsigned s)
{
    const bool rs0 = std::holds_alternative<ysource::RS0>(src);
    if (rs0 && (r != 0 || s != 0)) invalid("rs0 takes r = s = 0");
    if (!rs0 && r + s < 1) invalid("r + s >= 1 is required (r = 0, s = 0 only with rs0)");
    std::visit(overloaded{
                   [](const ysource::Thm3& p) {
                       if (!p.aux.finite()) {
                           throw Error(ErrorKind::UnboundedSum, "thm3 needs an aux sequence with finite support");
                       }
                   },
                   [](const ysource::Thm3Alpha0& p) {
                       if (!p.aux.finite() && p.u == 0) {
                           throw Error(ErrorKind::UnboundedSum,
                                       "thm3-alpha0 with u = 0 needs an aux sequence with finite support");
                       }
                   },
                   [](const ysource::CorZ8A& p) { require_vu(p.u, p.v); },
                   [](const ysource::CorZ8B& p) { require_vu(p.u, p.v); },
                   [r](const ysource::CorZ88& p) {
                       if (r != 0) invalid("z88 sequences take r = 0");
                       if (p.which < 1 || p.which > 3) invalid("z88 index must be 1, 2 or 3");
                   },
                   [](const auto&) {},
               },
               src);
}

void add_family(ParamList& out, const BinomialFamily& fam)
{
    out.emplace_back("family", fam_kind(fam));
    out.emplace_back("a", to_string(fam.deformation));
}

void add(ParamList& out, const char* key, const Rational& v)
{
    out.emplace_back(key, to_string(v));
}

void add(ParamList& out, const char* key, unsigned v)
{
    out.emplace_back(key, std::to_string(v));
}

void add_moments(ParamList& out, const MomentSequence& x)
{
    if (x.label()) {
        out.emplace_back("moments", *x.label());
        return;
    }
    std::string text = "[";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) text += ",";
        text += to_string(x.values()[i]);
    }
    out.emplace_back("moments", text + "]");
}

ParamList y_params(const YSource& src)
{
    ParamList out;
    std::visit(overloaded{
                   [&](const ysource::Prop4& p) { add_moments(out, p.x); },
                   [&](const ysource::Thm1& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                       add(out, "alpha", p.alpha);
                   },
                   [&](const ysource::Thm1Alpha0& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                   },
                   [&](const ysource::RS0& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                       out.emplace_back("reading", std::string(to_string(p.reading)));
                   },
                   [&](const ysource::Thm3& p) {
                       add_family(out, p.fam);
                       out.emplace_back("aux", p.aux.describe());
                       add(out, "x", p.x);
                       add(out, "alpha", p.alpha);
                       add(out, "beta", p.beta);
                       add(out, "lambda", p.lambda);
                       add(out, "u", p.u);
                       add(out, "v", p.v);
                   },
                   [&](const ysource::Thm3Alpha0& p) {
                       add_family(out, p.fam);
                       out.emplace_back("aux", p.aux.describe());
                       add(out, "x", p.x);
                       add(out, "beta", p.beta);
                       add(out, "lambda", p.lambda);
                       add(out, "u", p.u);
                       add(out, "v", p.v);
                   },
                   [&](const ysource::CorP1& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                       add(out, "alpha", p.alpha);
                   },
                   [&](const ysource::CorZ1& p) {
                       add_moments(out, p.x);
                       add(out, "b", p.b);
                       add(out, "c", p.c);
                       out.emplace_back("reading", std::string(to_string(p.reading)));
                   },
                   [&](const ysource::CorZ2& p) {
                       add_moments(out, p.x);
                       add(out, "x", p.xparam);
                   },
                   [&](const ysource::CorZ8A& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                       add(out, "y", p.y);
                       add(out, "alpha", p.alpha);
                       add(out, "beta", p.beta);
                       add(out, "lambda", p.lambda);
                       add(out, "u", p.u);
                       add(out, "v", p.v);
                   },
                   [&](const ysource::CorZ8B& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                       add(out, "y", p.y);
                       add(out, "beta", p.beta);
                       add(out, "lambda", p.lambda);
                       add(out, "u", p.u);
                       add(out, "v", p.v);
                       out.emplace_back("reading", std::string(to_string(p.reading)));
                   },
                   [&](const ysource::CorZ88& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                       add(out, "y", p.y);
                       add(out, "alpha", p.alpha);
                       add(out, "beta", p.beta);
                       add(out, "lambda", p.lambda);
                   },
               },
               src);
    return out;
}

// Evaluates one cell of a Y source. T >= 1 here; T = 0 is settled by the caller.
struct YEval {
    const YCore& core;
    std::size_t n, k, T;

    [[nodiscard]] Rational fac() const { return diag_factor(n, k, core.s, T); }

    Rational operator()(const ysource::Prop4&) const
    {
        const std::size_t M = T + n - k;
        return c_nk(n, k) * fac() * core.tri->cell(M, T) / c_nk(M, T);
    }

    Rational operator()(const ysource::Thm1& p) const
    {
        return c_nk(n, k) * fac() * exp_shift_deriv(p.fam.f(n - k), T, p.alpha, Rational(T) * p.x);
    }

    Rational operator()(const ysource::Thm1Alpha0& p) const
    {
        const std::size_t idx = T + n - k;
        return Rational(factorial(n)) * inv_factorial(k) * inv_factorial(idx) * fac() *
               poly_derive_eval(p.fam.f(idx), T, Rational(T) * p.x);
    }

    Rational operator()(const ysource::RS0& p) const
    {
        const Rational at = p.reading == Reading::Printed ? p.x : Rational(k) * p.x;
        return c_nk(n, k) * p.fam.f(n - k)(at);
    }

    Rational operator()(const ysource::Thm3& p) const
    {
        const std::size_t hi = p.aux.support() * T;
        const Poly& f = p.fam.f(n - k);
        Rational tot = 0;
        for (std::size_t j = T; j <= hi; ++j) {
            const Rational b = core.tri->cell(j, T);
            if (b == 0) continue;
            const Rational center = p.beta * Rational(j) + p.lambda * Rational(T);
            tot += b * exp_shift_deriv(f, j * p.u + p.v * T, p.alpha, center) * pow_u(p.x, j) * inv_factorial(j);
        }
        return c_nk(n, k) * fac() * Rational(factorial(T)) * tot;
    }

    Rational operator()(const ysource::Thm3Alpha0& p) const
    {
        std::size_t hi = p.aux.finite() ? p.aux.support() * T : 0;
        if (p.u >= 1) {
            const std::size_t bound = T + (n - k) / p.u;
            hi = p.aux.finite() ? std::min(hi, bound) : bound;
        }
        const std::size_t idx = (p.u + p.v) * T + n - k;
        const Poly& f = p.fam.f(idx);
        Rational tot = 0;
        for (std::size_t j = T; j <= hi; ++j) {
            const Rational b = core.tri->cell(j, T);
            if (b == 0) continue;
            const Rational center = p.beta * Rational(j) + p.lambda * Rational(T);
            tot += b * poly_derive_eval(f, j * p.u + p.v * T, center) * pow_u(p.x, j) * inv_factorial(j);
        }
        return Rational(factorial(n)) * inv_factorial(k) * inv_factorial(idx) * fac() * Rational(factorial(T)) * tot;
    }

    Rational operator()(const ysource::CorP1& p) const
    {
        const Poly& f = p.fam.f(n - k);
        const Rational at = Rational(T) * p.x;
        Rational tot = 0;
        for (std::size_t j = 0; j <= n - k; ++j) {
            tot += c_nk(T, j) * poly_derive_eval(f, j, at) * pow_u(p.alpha, j);
        }
        return c_nk(n, k) * fac() * tot;
    }

    Rational operator()(const ysource::CorZ1& p) const
    {
        const Rational base = p.b * Rational(n - k) + p.c * Rational(core.s * k);
        const Rational slope = Rational(core.r + 1) * p.c - p.b;
        Rational tot = 0;
        for (std::size_t j = 0; j <= n - k; ++j) {
            Rational term;
            if (p.reading == Reading::Printed) {
                term = (slope * Rational(j) + base) * pow_u(base, T + j - 1);
            } else {
                term = j == 0 ? Rational(1) : pow_u(base, j - 1) * (slope * Rational(j) + base);
            }
            tot += c_nk(T + j - 1, T - 1) * core.tri->cell(T + n - k, T + j) * term;
        }
        return fac() * c_nk(n, k) / c_nk(T + n - k, n - k) * tot;
    }

    Rational operator()(const ysource::CorZ2& p) const
    {
        Rational tot = 0;
        for (std::size_t j = 0; j <= n - k; ++j) {
            tot += c_nk(T + j - 1, T - 1) * core.tri->cell(T + n - k, T + j) * pow_u(Rational(T + n - k) * p.xparam, j);
        }
        return fac() * c_nk(n, k) / c_nk(T + n - k, n - k) * tot;
    }

    Rational operator()(const ysource::CorZ8A& p) const
    {
        const Poly& f = p.fam.f(n - k);
        Rational tot = 0;
        for (std::size_t j = 0; j <= T; ++j) {
            const Rational center = p.beta * Rational(j) + p.lambda * Rational(T);
            tot += c_nk(T, j) * exp_shift_deriv(f, j * p.u + p.v * T, p.alpha, center) * pow_u(p.x, j) *
                   pow_u(p.y, T - j);
        }
        return c_nk(n, k) * fac() * tot;
    }

    Rational operator()(const ysource::CorZ8B& p) const
    {
        const std::size_t idx = (p.reading == Reading::Printed ? p.v : p.u + p.v) * T + n - k;
        const Poly& f = p.fam.f(idx);
        Rational tot = 0;
        for (std::size_t j = 0; j <= T; ++j) {
            const Rational center = p.beta * Rational(j) + p.lambda * Rational(T);
            tot += c_nk(T, j) * poly_derive_eval(f, j * p.u + p.v * T, center) * pow_u(p.x, j) * pow_u(p.y, T - j);
        }
        return Rational(factorial(n)) * inv_factorial(k) * inv_factorial(idx) * fac() * tot;
    }

    Rational operator()(const ysource::CorZ88& p) const
    {
        // r = 0, so T = sk
        Rational tot = 0;
        if (p.which == 2) {
            const std::size_t idx = n + (core.s - 1) * k;
            const Poly& f = p.fam.f(idx);
            for (std::size_t j = 0; j <= T; ++j) {
                const Rational center = p.beta * Rational(j) + p.lambda * Rational(k);
                tot += c_nk(T, j) * poly_derive_eval(f, T, center) * pow_u(p.x, j) * pow_u(p.y, T - j);
            }
            return Rational(factorial(n)) * inv_factorial(k) * inv_factorial(idx) * tot;
        }
        const Poly& f = p.fam.f(n - k);
        for (std::size_t j = 0; j <= T; ++j) {
            const Rational center = p.beta * Rational(j) + p.lambda * Rational(k);
            const Rational inner = p.which == 1 ? exp_shift_deriv(f, T, p.alpha, center) : f(center);
            tot += c_nk(T, j) * inner * pow_u(p.x, j) * pow_u(p.y, T - j);
        }
        return c_nk(n, k) * tot;
    }
};

Rational y_eval(const YCore& core, std::size_t n, std::size_t k)
{
    if (k < 1 || k > n) invalid("Y(n,k) needs n >= k >= 1");
    if (std::holds_alternative<ysource::RS0>(core.source)) {
        return YEval{core, n, k, 0}(std::get<ysource::RS0>(core.source));
    }
    const std::size_t T = core.r * (n - k) + core.s * k;
    if (T == 0) return 1;
    return std::visit(YEval{core, n, k, T}, core.source);
}

} // namespace

YBuilder::YBuilder(YSource source, unsigned r, unsigned s, ParamList extra)
{
    validate_y(source, r, s);
    auto core = std::make_shared<YCore>();
    core->name = y_name(source);
    core->r = r;
    core->s = s;
    core->extra = std::move(extra);
    std::visit(overloaded{
                   [&](const ysource::Prop4& p) { core->tri = std::make_shared<BellTriangle>(p.x); },
                   [&](const ysource::CorZ1& p) { core->tri = std::make_shared<BellTriangle>(p.x); },
                   [&](const ysource::CorZ2& p) { core->tri = std::make_shared<BellTriangle>(p.x); },
                   [&](const ysource::Thm3& p) { core->tri = aux_triangle(p.aux); },
                   [&](const ysource::Thm3Alpha0& p) { core->tri = aux_triangle(p.aux); },
                   [](const auto&) {},
               },
               source);
    core->source = std::move(source);
    auto state = std::make_shared<State>();
    state->core = std::move(core);
    state_ = std::move(state);
}

YBuilder::YBuilder(std::shared_ptr<const State> state) : state_(std::move(state)) {}

Rational YBuilder::operator()(std::size_t n, std::size_t k) const
{
    if (auto it = state_->overrides.find({n, k}); it != state_->overrides.end()) {
        return it->second;
    }
    Rational out = y_eval(*state_->core, n, k);
    if (state_->scaled) {
        out *= pow_u(state_->scale, n - k);
    }
    return out;
}

const std::string& YBuilder::name() const noexcept
{
    return state_->core->name;
}

unsigned YBuilder::r() const noexcept
{
    return state_->core->r;
}

unsigned YBuilder::s() const noexcept
{
    return state_->core->s;
}

ParamList YBuilder::params() const
{
    const auto& core = *state_->core;
    ParamList out{{"builder", core.name}};
    for (auto& kv : y_params(core.source)) out.push_back(std::move(kv));
    add(out, "r", core.r);
    add(out, "s", core.s);
    if (state_->scaled) add(out, "scale", state_->scale);
    for (const auto& [nk, v] : state_->overrides) {
        out.emplace_back("override(" + std::to_string(nk.first) + "," + std::to_string(nk.second) + ")", to_string(v));
    }
    for (const auto& kv : core.extra) out.push_back(kv);
    return out;
}

YBuilder YBuilder::scaled(const Rational& lambda) const
{
    if (lambda == 0) invalid("scaling factor must be nonzero");
    auto next = std::make_shared<State>(*state_);
    next->scale = state_->scaled ? state_->scale * lambda : lambda;
    next->scaled = true;
    // overrides are absolute values, keep them scaled alongside
    for (auto& [nk, v] : next->overrides) v *= pow_u(lambda, nk.first - nk.second);
    return YBuilder(std::move(next));
}

YBuilder YBuilder::with_override(std::size_t n, std::size_t k, const Rational& value) const
{
    auto next = std::make_shared<State>(*state_);
    next->overrides[{n, k}] = value;
    return YBuilder(std::move(next));
}

// ---------------------------------------------------------------- Z

struct ZCore {
    std::string name;
    ZSource source;
    unsigned r = 1;
    ParamList extra;
    std::shared_ptr<BellTriangle> tri;
    Rational gamma = 1;
};

struct ZBuilder::State {
    std::shared_ptr<const ZCore> core;
    Rational scale = 1;
    bool scaled = false;
    std::map<std::pair<std::size_t, std::size_t>, Rational> overrides;
};

namespace {

std::string z_name(const ZSource& src)
{
    return std::visit(overloaded{
                          [](const zsource::Prop8&) { return std::string("prop8"); },
                          [](const zsource::Thm2&) { return std::string("thm2"); },
                          [](const zsource::Thm2Alpha0&) { return std::string("thm2-alpha0"); },
                          [](const zsource::Thm4&) { return std::string("thm4"); },
                          [](const zsource::Thm4Alpha0&) { return std::string("thm4-alpha0"); },
                          [](const zsource::CorP6&) { return std::string("p6"); },
                          [](const zsource::CorZ3&) { return std::string("z3"); },
                          [](const zsource::CorZ4&) { return std::string("z4"); },
                          [](const zsource::CorZ12A&) { return std::string("z12a"); },
                          [](const zsource::CorZ12B&) { return std::string("z12b"); },
                      },
                      src);
}

void require_gamma(const Rational& g, const std::string& who)
{
    if (g == 0) throw Error(ErrorKind::ZeroGamma, who + ": gamma vanishes at these parameters");
}

void require_x1(const Rational& x1, const std::string& who)
{
    if (x1 == 0) throw Error(ErrorKind::ZeroFirstMoment, who + ": first moment is zero");
}

// Validates and returns gamma (1 where the source has none).
Rational validate_z(const ZSource& src, unsigned r)
{
    if (r < 1) invalid("r >= 1 is required for Z sequences");
    return std::visit(
        overloaded{
            [](const zsource::Prop8& p) -> Rational {
                if (p.x.x(1) != 1) {
                    throw Error(ErrorKind::NotNormalized, "prop8 needs x_1 = 1, got " + to_string(p.x.x(1)));
                }
                return 1;
            },
            [](const zsource::Thm2& p) -> Rational {
                if (p.alpha == 0) throw Error(ErrorKind::ZeroAlpha, "thm2 needs alpha != 0 (use thm2-alpha0)");
                return p.alpha;
            },
            [](const zsource::Thm2Alpha0& p) -> Rational {
                const Rational x1 = p.fam.first_moment();
                require_x1(x1, "thm2-alpha0");
                return x1;
            },
            [](const zsource::Thm4& p) -> Rational {
                if (!p.aux.finite()) throw Error(ErrorKind::UnboundedSum, "thm4 needs an aux sequence with finite support");
                const Rational g = thm4_gamma(p);
                require_gamma(g, "thm4");
                return g;
            },
            [](const zsource::Thm4Alpha0& p) -> Rational {
                if (!p.aux.finite() && p.u == 0) {
                    throw Error(ErrorKind::UnboundedSum, "thm4-alpha0 with u = 0 needs an aux sequence with finite support");
                }
                if (p.u >= 1) require_x1(p.fam.first_moment(), "thm4-alpha0");
                const Rational g = thm4_gamma(p);
                require_gamma(g, "thm4-alpha0");
                return g;
            },
            [](const zsource::CorP6&) -> Rational { return 1; },
            [](const zsource::CorZ3& p) -> Rational {
                require_x1(p.x.x(1), "z3");
                return p.x.x(1);
            },
            [](const zsource::CorZ4& p) -> Rational {
                require_x1(p.x.x(1), "z4");
                return p.x.x(1);
            },
            [](const zsource::CorZ12A& p) -> Rational {
                require_vu(p.u, p.v);
                const Rational g = z12a_gamma(p);
                require_gamma(g, "z12a");
                return g;
            },
            [](const zsource::CorZ12B& p) -> Rational {
                require_vu(p.u, p.v);
                const Rational g = z12b_gamma(p);
                require_gamma(g, "z12b");
                return g;
            },
        },
        src);
}

ParamList z_params(const ZSource& src)
{
    ParamList out;
    std::visit(overloaded{
                   [&](const zsource::Prop8& p) { add_moments(out, p.x); },
                   [&](const zsource::Thm2& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                       add(out, "alpha", p.alpha);
                   },
                   [&](const zsource::Thm2Alpha0& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                   },
                   [&](const zsource::Thm4& p) {
                       add_family(out, p.fam);
                       out.emplace_back("aux", p.aux.describe());
                       add(out, "x", p.x);
                       add(out, "alpha", p.alpha);
                       add(out, "beta", p.beta);
                       add(out, "lambda", p.lambda);
                       add(out, "u", p.u);
                       add(out, "v", p.v);
                   },
                   [&](const zsource::Thm4Alpha0& p) {
                       add_family(out, p.fam);
                       out.emplace_back("aux", p.aux.describe());
                       add(out, "x", p.x);
                       add(out, "beta", p.beta);
                       add(out, "lambda", p.lambda);
                       add(out, "u", p.u);
                       add(out, "v", p.v);
                   },
                   [&](const zsource::CorP6& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                       add(out, "alpha", p.alpha);
                   },
                   [&](const zsource::CorZ3& p) {
                       add_moments(out, p.x);
                       add(out, "b", p.b);
                       add(out, "c", p.c);
                   },
                   [&](const zsource::CorZ4& p) {
                       add_moments(out, p.x);
                       add(out, "x", p.xparam);
                   },
                   [&](const zsource::CorZ12A& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                       add(out, "y", p.y);
                       add(out, "alpha", p.alpha);
                       add(out, "beta", p.beta);
                       add(out, "lambda", p.lambda);
                       add(out, "u", p.u);
                       add(out, "v", p.v);
                   },
                   [&](const zsource::CorZ12B& p) {
                       add_family(out, p.fam);
                       add(out, "x", p.x);
                       add(out, "y", p.y);
                       add(out, "beta", p.beta);
                       add(out, "lambda", p.lambda);
                       add(out, "u", p.u);
                       add(out, "v", p.v);
                       out.emplace_back("reading", std::string(to_string(p.reading)));
                   },
               },
               src);
    return out;
}

struct ZEval {
    const ZCore& core;
    std::size_t n, s, R;

    // gamma^{-s} / R
    [[nodiscard]] Rational pre() const { return power(core.gamma, -static_cast<long>(s)) / Rational(R); }

    Rational operator()(const zsource::Prop8&) const
    {
        const std::size_t M = (core.r + 1) * n + s;
        return core.tri->cell(M, R) / c_nk(M, R) / Rational(R);
    }

    Rational operator()(const zsource::Thm2& p) const
    {
        return pre() * exp_shift_deriv(p.fam.f(n), R, p.alpha, Rational(R) * p.x);
    }

    Rational operator()(const zsource::Thm2Alpha0& p) const
    {
        return pre() * Rational(factorial(n)) * inv_factorial(R + n) *
               poly_derive_eval(p.fam.f(R + n), R, Rational(R) * p.x);
    }

    Rational operator()(const zsource::Thm4& p) const
    {
        const Poly& f = p.fam.f(n);
        Rational tot = 0;
        for (std::size_t j = R; j <= p.aux.support() * R; ++j) {
            const Rational b = core.tri->cell(j, R);
            if (b == 0) continue;
            const Rational center = p.beta * Rational(j) + p.lambda * Rational(R);
            tot += b * exp_shift_deriv(f, j * p.u + p.v * R, p.alpha, center) * pow_u(p.x, j) * inv_factorial(j);
        }
        return pre() * Rational(factorial(R)) * tot;
    }

    Rational operator()(const zsource::Thm4Alpha0& p) const
    {
        std::size_t hi = p.aux.finite() ? p.aux.support() * R : 0;
        if (p.u >= 1) {
            const std::size_t bound = R + n / p.u;
            hi = p.aux.finite() ? std::min(hi, bound) : bound;
        }
        const std::size_t idx = n + (p.u + p.v) * R;
        const Poly& f = p.fam.f(idx);
        Rational tot = 0;
        for (std::size_t j = R; j <= hi; ++j) {
            const Rational b = core.tri->cell(j, R);
            if (b == 0) continue;
            const Rational center = p.beta * Rational(j) + p.lambda * Rational(R);
            tot += b * poly_derive_eval(f, j * p.u + p.v * R, center) * inv_factorial(idx) * pow_u(p.x, j) *
                   inv_factorial(j);
        }
        return pre() * Rational(factorial(n)) * Rational(factorial(R)) * tot;
    }

    Rational operator()(const zsource::CorP6& p) const
    {
        const Poly& f = p.fam.f(n);
        const Rational at = Rational(R) * p.x;
        Rational tot = 0;
        for (std::size_t j = 0; j <= n; ++j) {
            tot += c_nk(R, j) * poly_derive_eval(f, j, at) * pow_u(p.alpha, j);
        }
        return tot / Rational(R);
    }

    Rational operator()(const zsource::CorZ3& p) const
    {
        const Rational base = p.c * Rational(n) + p.b * Rational(s);
        const Rational slope = Rational(core.r + 1) * p.b - p.c;
        Rational tot = 0;
        for (std::size_t j = 0; j <= n; ++j) {
            const Rational term = j == 0 ? Rational(1) : pow_u(base, j - 1) * (slope * Rational(j) + base);
            tot += c_nk(R + j - 1, R - 1) * core.tri->cell(R + n, R + j) * term;
        }
        return pre() / c_nk(R + n, n) * tot;
    }

    Rational operator()(const zsource::CorZ4& p) const
    {
        Rational tot = 0;
        for (std::size_t j = 0; j <= n; ++j) {
            tot += c_nk(R + j - 1, R - 1) * core.tri->cell(R + n, R + j) * pow_u(Rational(R + n) * p.xparam, j);
        }
        return pre() / c_nk(R + n, n) * tot;
    }

    Rational operator()(const zsource::CorZ12A& p) const
    {
        const Poly& f = p.fam.f(n);
        Rational tot = 0;
        for (std::size_t j = 0; j <= R; ++j) {
            const Rational center = p.beta * Rational(j) + p.lambda * Rational(R);
            tot += c_nk(R, j) * exp_shift_deriv(f, j * p.u + p.v * R, p.alpha, center) * pow_u(p.x, j) *
                   pow_u(p.y, R - j);
        }
        return pre() * tot;
    }

    Rational operator()(const zsource::CorZ12B& p) const
    {
        const std::size_t idx = n + (p.reading == Reading::Printed ? p.u + p.v : p.v) * R;
        const Poly& f = p.fam.f(idx);
        Rational tot = 0;
        for (std::size_t j = 0; j <= R; ++j) {
            const Rational center = p.beta * Rational(j) + p.lambda * Rational(R);
            tot += c_nk(R, j) * poly_derive_eval(f, j * p.u + p.v * R, center) * pow_u(p.x, j) * pow_u(p.y, R - j);
        }
        return pre() * Rational(factorial(n)) * inv_factorial(idx) * tot;
    }
};

} // namespace

ZBuilder::ZBuilder(ZSource source, unsigned r, ParamList extra)
{
    auto core = std::make_shared<ZCore>();
    core->gamma = validate_z(source, r);
    core->name = z_name(source);
    core->r = r;
    core->extra = std::move(extra);
    std::visit(overloaded{
                   [&](const zsource::Prop8& p) { core->tri = std::make_shared<BellTriangle>(p.x); },
                   [&](const zsource::CorZ3& p) { core->tri = std::make_shared<BellTriangle>(p.x); },
                   [&](const zsource::CorZ4& p) { core->tri = std::make_shared<BellTriangle>(p.x); },
                   [&](const zsource::Thm4& p) { core->tri = aux_triangle(p.aux); },
                   [&](const zsource::Thm4Alpha0& p) { core->tri = aux_triangle(p.aux); },
                   [](const auto&) {},
               },
               source);
    core->source = std::move(source);
    auto state = std::make_shared<State>();
    state->core = std::move(core);
    state_ = std::move(state);
}

ZBuilder::ZBuilder(std::shared_ptr<const State> state) : state_(std::move(state)) {}

Rational ZBuilder::operator()(std::size_t n, std::size_t s) const
{
    if (n < 1) invalid("Z(n,s) needs n >= 1");
    if (auto it = state_->overrides.find({n, s}); it != state_->overrides.end()) {
        return it->second;
    }
    const auto& core = *state_->core;
    Rational out = std::visit(ZEval{core, n, s, core.r * n + s}, core.source);
    if (state_->scaled) {
        out *= pow_u(state_->scale, n);
    }
    return out;
}

const std::string& ZBuilder::name() const noexcept
{
    return state_->core->name;
}

unsigned ZBuilder::r() const noexcept
{
    return state_->core->r;
}

ParamList ZBuilder::params() const
{
    const auto& core = *state_->core;
    ParamList out{{"builder", core.name}};
    for (auto& kv : z_params(core.source)) out.push_back(std::move(kv));
    add(out, "r", core.r);
    if (state_->scaled) add(out, "scale", state_->scale);
    for (const auto& [ns, v] : state_->overrides) {
        out.emplace_back("override(" + std::to_string(ns.first) + "," + std::to_string(ns.second) + ")", to_string(v));
    }
    for (const auto& kv : core.extra) out.push_back(kv);
    return out;
}

ZBuilder ZBuilder::scaled(const Rational& lambda) const
{
    if (lambda == 0) invalid("scaling factor must be nonzero");
    auto next = std::make_shared<State>(*state_);
    next->scale = state_->scaled ? state_->scale * lambda : lambda;
    next->scaled = true;
    for (auto& [ns, v] : next->overrides) v *= pow_u(lambda, ns.first);
    return ZBuilder(std::move(next));
}

ZBuilder ZBuilder::with_override(std::size_t n, std::size_t s, const Rational& value) const
{
    auto next = std::make_shared<State>(*state_);
    next->overrides[{n, s}] = value;
    return ZBuilder(std::move(next));
}

} // namespace bellid
