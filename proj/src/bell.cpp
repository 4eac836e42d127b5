#include "bellid/bell.hpp"

#include "bellid/errors.hpp"

#include <string>
#include <utility>

namespace bellid {

namespace {

void require_prefix(const MomentSequence& x, std::size_t n, std::size_t k)
{
    if (k == 0 || k > n) {
        return;
    }
    const std::size_t need = n - k + 1;
    if (x.size() < need) {
        throw Error(ErrorKind::InsufficientPrefix, "B_{" + std::to_string(n) + "," + std::to_string(k) + "} needs " +
                                                       std::to_string(need) + " values, sequence has " +
                                                       std::to_string(x.size()));
    }
}

} // namespace

BellTriangle::BellTriangle(MomentSequence source) : source_(std::move(source)), pulled_(source_.values())
{
    rows_.push_back({Rational(1)});
}

BellTriangle::BellTriangle(std::function<Rational(std::size_t)> term) : term_(std::move(term))
{
    rows_.push_back({Rational(1)});
}

std::size_t BellTriangle::rows() const
{
    std::lock_guard lock(mutex_);
    return rows_.size();
}

void BellTriangle::grow_to(std::size_t n) const
{
    if (unbounded()) {
        while (pulled_.size() < n) {
            pulled_.push_back(term_(pulled_.size() + 1));
        }
    }
    const std::size_t len = pulled_.size();
    while (rows_.size() <= n) {
        const std::size_t row = rows_.size();
        std::vector<Rational> cells(row + 1);
        for (std::size_t k = 1; k <= row; ++k) {
            if (row - k + 1 > len) {
                continue; // outside the computable region, never read
            }
            Rational acc = 0;
            for (std::size_t m = 1; m <= row - k + 1; ++m) {
                const auto& xm = pulled_[m - 1];
                if (xm == 0) {
                    continue;
                }
                acc += Rational(binomial(row - 1, m - 1)) * xm * rows_[row - m][k - 1];
            }
            cells[k] = std::move(acc);
        }
        rows_.push_back(std::move(cells));
    }
}

Rational BellTriangle::cell(std::size_t n, std::size_t k) const
{
    if (k > n) {
        return 0;
    }
    if (!unbounded()) {
        require_prefix(source_, n, k);
    }
    std::lock_guard lock(mutex_);
    grow_to(n);
    return rows_[n][k];
}

Rational bell_partial(const MomentSequence& x, std::size_t n, std::size_t k)
{
    if (k > n) {
        return 0;
    }
    require_prefix(x, n, k);
    const std::size_t need = k == 0 ? 0 : n - k + 1;
    BellTriangle tri(MomentSequence(std::vector<Rational>(x.values().begin(), x.values().begin() + need)));
    return tri.cell(n, k);
}

namespace {

// Walks the partitions of `remaining` into exactly `parts` parts, each at most
// `max_part`, in nonincreasing order; `counts[j]` tallies parts equal to j.
void sum_partitions(const MomentSequence& x, std::size_t remaining, std::size_t parts, std::size_t max_part,
                    std::vector<std::size_t>& counts, const Integer& n_fact, Rational& total)
{
    if (parts == 0) {
        if (remaining != 0) {
            return;
        }
        Integer denom = 1;
        Rational prod = 1;
        for (std::size_t j = 1; j < counts.size(); ++j) {
            const std::size_t c = counts[j];
            if (c == 0) {
                continue;
            }
            Integer jf = factorial(j);
            Integer jf_pow;
            mpz_pow_ui(jf_pow.get_mpz_t(), jf.get_mpz_t(), c);
            denom *= factorial(c) * jf_pow;
            prod *= power(x.x(j), static_cast<long>(c));
        }
        total += ratio(n_fact, denom) * prod;
        return;
    }
    // the largest part must leave room for parts-1 ones
    if (remaining < parts) {
        return;
    }
    const std::size_t top = std::min(max_part, remaining - (parts - 1));
    const std::size_t bottom = (remaining + parts - 1) / parts; // ceil: largest part >= average
    for (std::size_t part = top; part >= bottom && part >= 1; --part) {
        ++counts[part];
        sum_partitions(x, remaining - part, parts - 1, part, counts, n_fact, total);
        --counts[part];
        if (part == 1) {
            break;
        }
    }
}

} // namespace

Rational bell_partial_oracle(const MomentSequence& x, std::size_t n, std::size_t k)
{
    if (k > n) {
        return 0;
    }
    if (k == 0) {
        return n == 0 ? 1 : 0;
    }
    require_prefix(x, n, k);
    std::vector<std::size_t> counts(n + 1, 0);
    Rational total = 0;
    sum_partitions(x, n, k, n - k + 1, counts, factorial(n), total);
    return total;
}

Rational bell_complete(const MomentSequence& x, std::size_t n)
{
    if (n == 0) {
        return 1;
    }
    require_prefix(x, n, 1);
    BellTriangle tri(MomentSequence(std::vector<Rational>(x.values().begin(), x.values().begin() + n)));
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        acc += tri.cell(n, k);
    }
    return acc;
}

std::vector<std::vector<Rational>> classical_table(TriangleKind kind, std::size_t n_max)
{
    std::vector<std::vector<Rational>> out(n_max + 1);
    for (std::size_t i = 0; i <= n_max; ++i) {
        out[i].assign(i + 1, Rational(0));
    }
    out[0][0] = 1;
    for (std::size_t i = 1; i <= n_max; ++i) {
        for (std::size_t j = 1; j <= i; ++j) {
            const Rational above = j < i ? out[i - 1][j] : Rational(0);
            const Rational diag = out[i - 1][j - 1];
            switch (kind) {
            case TriangleKind::Stirling2:
                out[i][j] = static_cast<unsigned long>(j) * above + diag;
                break;
            case TriangleKind::Stirling1Unsigned:
                out[i][j] = static_cast<unsigned long>(i - 1) * above + diag;
                break;
            case TriangleKind::Lah:
                // L(n,k) = (n-1+k) L(n-1,k) + L(n-1,k-1)
                out[i][j] = static_cast<unsigned long>(i - 1 + j) * above + diag;
                break;
            }
        }
    }
    return out;
}

Rational classical_triangle(TriangleKind kind, std::size_t n, std::size_t k)
{
    if (k > n) {
        return 0;
    }
    return classical_table(kind, n)[n][k];
}

std::pair<bool, bool> check_scaling(const MomentSequence& x, std::size_t n, std::size_t k, const Rational& alpha)
{
    const Rational base = bell_partial(x, n, k);
    const bool linear = bell_partial(x.scaled(alpha), n, k) == power(alpha, static_cast<long>(k)) * base;
    const bool graded = bell_partial(x.graded(alpha), n, k) == power(alpha, static_cast<long>(n)) * base;
    return {linear, graded};
}

std::pair<Rational, Rational> shift_collapse(const MomentSequence& a, std::size_t r, std::size_t n, std::size_t k)
{
    if (k == 0) {
        const Rational v = n == 0 ? 1 : 0;
        return {v, v};
    }
    require_prefix(a, n, k);
    std::vector<Rational> zeroed(a.values().begin(), a.values().begin() + (n - k + 1));
    for (std::size_t i = 0; i < r && i < zeroed.size(); ++i) {
        zeroed[i] = 0;
    }
    const Rational lhs = bell_partial(MomentSequence(std::move(zeroed)), n, k);

    if (n < r * k + k) {
        return {lhs, Rational(0)};
    }
    const std::size_t m = n - r * k;
    std::vector<Rational> collapsed;
    for (std::size_t i = 1; i <= m - k + 1; ++i) {
        collapsed.push_back(Rational(factorial(i)) * a.x(i + r) / Rational(factorial(i + r)));
    }
    const Rational rhs =
        ratio(factorial(n), factorial(m)) * bell_partial(MomentSequence(std::move(collapsed)), m, k);
    return {lhs, rhs};
}

} // namespace bellid
