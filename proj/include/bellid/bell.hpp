#pragma once

#include "bellid/rational.hpp"
#include "bellid/sequences.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace bellid {

/// Memoized partial Bell values B_{n,k}(x_1, x_2, ...) for one sequence.
///
/// Rows are filled on demand by the recurrence
///   B_{n,k} = sum_{m=1}^{n-k+1} C(n-1, m-1) x_m B_{n-m,k-1}
/// and kept for later lookups. A cell (n,k) with k >= 1 needs x_1..x_{n-k+1};
/// asking for one past the prefix throws Error(InsufficientPrefix). Access is
/// serialized, so a triangle can be shared between threads.
///
/// A triangle built from a term generator has no prefix limit; terms are
/// pulled as rows grow.
class BellTriangle {
public:
    explicit BellTriangle(MomentSequence source);
    explicit BellTriangle(std::function<Rational(std::size_t)> term);

    BellTriangle(const BellTriangle&) = delete;
    BellTriangle& operator=(const BellTriangle&) = delete;

    [[nodiscard]] const MomentSequence& source() const noexcept { return source_; }
    [[nodiscard]] Rational cell(std::size_t n, std::size_t k) const;
    /// Number of rows materialized so far.
    [[nodiscard]] std::size_t rows() const;

private:
    void grow_to(std::size_t n) const;

    [[nodiscard]] bool unbounded() const noexcept { return static_cast<bool>(term_); }

    MomentSequence source_;
    std::function<Rational(std::size_t)> term_;
    mutable std::vector<Rational> pulled_;
    mutable std::mutex mutex_;
    mutable std::vector<std::vector<Rational>> rows_;
};

/// B_{n,k}(x) via the recurrence. B_{0,0} = 1, B_{n,0} = 0 for n >= 1, and
/// B_{n,k} = 0 for k > n.
Rational bell_partial(const MomentSequence& x, std::size_t n, std::size_t k);

/// B_{n,k}(x) as an explicit sum over the partitions of n into k parts:
///   sum n! / (prod_j c_j! (j!)^{c_j}) prod_j x_j^{c_j}.
/// Shares no code with the recurrence.
Rational bell_partial_oracle(const MomentSequence& x, std::size_t n, std::size_t k);

/// A_n(x) = sum_{k=1}^n B_{n,k}(x), A_0 = 1.
Rational bell_complete(const MomentSequence& x, std::size_t n);

enum class TriangleKind { Stirling2, Stirling1Unsigned, Lah };

/// S(n,k), |s(n,k)| or L(n,k) from each triangle's own recurrence.
Rational classical_triangle(TriangleKind kind, std::size_t n, std::size_t k);
/// Whole triangle, rows 0..n_max; row i has i+1 entries.
std::vector<std::vector<Rational>> classical_table(TriangleKind kind, std::size_t n_max);

/// (B_{n,k}(a x) == a^k B_{n,k}(x), B_{n,k}(a x_1, a^2 x_2, ...) == a^n B_{n,k}(x)).
std::pair<bool, bool> check_scaling(const MomentSequence& x, std::size_t n, std::size_t k, const Rational& alpha);

/// Both sides of the zero-prefix identity
///   B_{n,k}(0,..,0, a_{r+1}, a_{r+2}, ...)
///     = n!/(n-rk)! B_{n-rk,k}(a_{1+r}/(1+r)!, ..., i! a_{i+r}/(i+r)!, ...).
/// The first r entries of `a` are ignored (treated as zero).
std::pair<Rational, Rational> shift_collapse(const MomentSequence& a, std::size_t r, std::size_t n, std::size_t k);

} // namespace bellid
