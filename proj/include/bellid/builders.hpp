#pragma once

#include "bellid/family.hpp"
#include "bellid/rational.hpp"
#include "bellid/sequences.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bellid {

/// Ordered (name, value) pairs describing a builder; values are "p/q" or
/// plain words.
using ParamList = std::vector<std::pair<std::string, std::string>>;

/// Two readings of a closed form. `Printed` is the form as usually written,
/// `Derived` the one re-derived from the general formula it specializes.
enum class Reading { Printed, Derived };

std::string_view to_string(Reading reading) noexcept;
Reading parse_reading(std::string_view text);

// Families inside the sources are already deformed; `a` is only carried for
// describe(). All family-valued sources must hold f_0..f_N with N at least
// required_family_order(...).

namespace ysource {
struct Prop4 {
    MomentSequence x;
};
struct Thm1 {
    BinomialFamily fam;
    Rational x, alpha;
};
struct Thm1Alpha0 {
    BinomialFamily fam;
    Rational x;
};
/// Derived: C(n,k) f_{n-k}(kx; a). Printed: C(n,k) f_{n-k}(x; a).
struct RS0 {
    BinomialFamily fam;
    Rational x;
    Reading reading = Reading::Derived;
};
struct Thm3 {
    BinomialFamily fam;
    AuxSequence aux;
    Rational x, alpha, beta, lambda;
    unsigned u = 0, v = 0;
};
struct Thm3Alpha0 {
    BinomialFamily fam;
    AuxSequence aux;
    Rational x, beta, lambda;
    unsigned u = 0, v = 0;
};
struct CorP1 {
    BinomialFamily fam;
    Rational x, alpha;
};
struct CorZ1 {
    MomentSequence x;
    Rational b, c;
    Reading reading = Reading::Derived;
};
struct CorZ2 {
    MomentSequence x;
    Rational xparam;
};
struct CorZ8A {
    BinomialFamily fam;
    Rational x, y, alpha, beta, lambda;
    unsigned u = 0, v = 0;
};
struct CorZ8B {
    BinomialFamily fam;
    Rational x, y, beta, lambda;
    unsigned u = 0, v = 0;
    Reading reading = Reading::Printed;
};
// r = 0 family; which = 1, 2, 3 picks Y_1, Y_2, Y_3.
struct CorZ88 {
    BinomialFamily fam;
    Rational x, y, alpha, beta, lambda;
    unsigned which = 1;
};
} // namespace ysource

namespace zsource {
struct Prop8 {
    MomentSequence x;
};
struct Thm2 {
    BinomialFamily fam;
    Rational x, alpha;
};
struct Thm2Alpha0 {
    BinomialFamily fam;
    Rational x;
};
struct Thm4 {
    BinomialFamily fam;
    AuxSequence aux;
    Rational x, alpha, beta, lambda;
    unsigned u = 0, v = 0;
};
struct Thm4Alpha0 {
    BinomialFamily fam;
    AuxSequence aux;
    Rational x, beta, lambda;
    unsigned u = 0, v = 0;
};
struct CorP6 {
    BinomialFamily fam;
    Rational x, alpha;
};
struct CorZ3 {
    MomentSequence x;
    Rational b, c;
};
struct CorZ4 {
    MomentSequence x;
    Rational xparam;
};
struct CorZ12A {
    BinomialFamily fam;
    Rational x, y, alpha, beta, lambda;
    unsigned u = 0, v = 0;
};
struct CorZ12B {
    BinomialFamily fam;
    Rational x, y, beta, lambda;
    unsigned u = 0, v = 0;
    Reading reading = Reading::Derived;
};
} // namespace zsource

using YSource = std::variant<ysource::Prop4, ysource::Thm1, ysource::Thm1Alpha0, ysource::RS0, ysource::Thm3,
                             ysource::Thm3Alpha0, ysource::CorP1, ysource::CorZ1, ysource::CorZ2, ysource::CorZ8A,
                             ysource::CorZ8B, ysource::CorZ88>;

using ZSource = std::variant<zsource::Prop8, zsource::Thm2, zsource::Thm2Alpha0, zsource::Thm4, zsource::Thm4Alpha0,
                             zsource::CorP6, zsource::CorZ3, zsource::CorZ4, zsource::CorZ12A, zsource::CorZ12B>;

/// Largest family index touched for 1 <= k <= n <= n_max (0 for sources
/// without a family).
std::size_t required_family_order(const YSource& src, unsigned r, unsigned s, std::size_t n_max);
std::size_t required_family_order(const ZSource& src, unsigned r, std::size_t n_max, std::size_t s_max);

/// Moments x_1..x_m a moment-valued source reads over the same range (0 for
/// family-valued sources).
std::size_t required_moment_count(const YSource& src, std::size_t n_max);
std::size_t required_moment_count(const ZSource& src, std::size_t n_max);

/// Candidate solution Y(n,k) of the partial-Bell fixed-point equation.
///
/// Immutable; copies share the evaluation state. Preconditions are checked
/// by the constructor, so a built object only fails on short inputs.
class YBuilder {
public:
    YBuilder(YSource source, unsigned r, unsigned s, ParamList extra = {});

    /// n >= k >= 1.
    [[nodiscard]] Rational operator()(std::size_t n, std::size_t k) const;

    [[nodiscard]] const std::string& name() const noexcept;
    [[nodiscard]] ParamList params() const;
    [[nodiscard]] unsigned r() const noexcept;
    [[nodiscard]] unsigned s() const noexcept;

    /// (n,k) -> lambda^{n-k} Y(n,k)
    [[nodiscard]] YBuilder scaled(const Rational& lambda) const;
    /// Same builder with one cell replaced.
    [[nodiscard]] YBuilder with_override(std::size_t n, std::size_t k, const Rational& value) const;

    struct State;

private:
    explicit YBuilder(std::shared_ptr<const State> state);
    std::shared_ptr<const State> state_;
};

/// Candidate solution Z(n,s) of the complete-Bell fixed-point equation.
class ZBuilder {
public:
    ZBuilder(ZSource source, unsigned r, ParamList extra = {});

    /// n >= 1, s >= 0.
    [[nodiscard]] Rational operator()(std::size_t n, std::size_t s) const;

    [[nodiscard]] const std::string& name() const noexcept;
    [[nodiscard]] ParamList params() const;
    [[nodiscard]] unsigned r() const noexcept;

    /// (n,s) -> lambda^n Z(n,s)
    [[nodiscard]] ZBuilder scaled(const Rational& lambda) const;
    [[nodiscard]] ZBuilder with_override(std::size_t n, std::size_t s, const Rational& value) const;

    struct State;

private:
    explicit ZBuilder(std::shared_ptr<const State> state);
    std::shared_ptr<const State> state_;
};

/// gamma of the generalized complete-Bell theorem (both alpha cases), and of
/// the two x,y corollaries.
Rational thm4_gamma(const zsource::Thm4& src);
Rational thm4_gamma(const zsource::Thm4Alpha0& src);
Rational z12a_gamma(const zsource::CorZ12A& src);
Rational z12b_gamma(const zsource::CorZ12B& src);

} // namespace bellid
