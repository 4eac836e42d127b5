#pragma once

#include "bellid/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bellid {

/// Closed-form scalar sequences addressable by short names in configs.
enum class SequenceRule {
    Ones,             // "1":      1, 1, 1, ...
    Index,            // "m":      1, 2, 3, ...
    Factorial,        // "m!":     1!, 2!, 3!, ...
    ShiftedFactorial, // "(m-1)!": 0!, 1!, 2!, ...
    Delta,            // "delta":  1, 0, 0, ...
};

std::optional<SequenceRule> parse_sequence_rule(std::string_view name);
std::string_view to_string(SequenceRule rule) noexcept;
/// m-th term, m >= 1.
Rational rule_term(SequenceRule rule, std::size_t m);

/// Finite prefix x_1..x_N of a scalar sequence. Always fully materialized.
class MomentSequence {
public:
    MomentSequence() = default;
    explicit MomentSequence(std::vector<Rational> values, std::optional<std::string> label = std::nullopt);
    static MomentSequence from_rule(SequenceRule rule, std::size_t count);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    /// x_m, 1-based.
    [[nodiscard]] const Rational& x(std::size_t m) const;
    [[nodiscard]] const std::vector<Rational>& values() const noexcept { return values_; }
    [[nodiscard]] const std::optional<std::string>& label() const noexcept { return label_; }

    [[nodiscard]] MomentSequence scaled(const Rational& alpha) const;
    /// x_m -> alpha^m x_m
    [[nodiscard]] MomentSequence graded(const Rational& alpha) const;

    friend bool operator==(const MomentSequence& a, const MomentSequence& b) { return a.values_ == b.values_; }

private:
    std::vector<Rational> values_;
    std::optional<std::string> label_;
};

/// The auxiliary sequence (a_n; n >= 1) of the generalized theorems.
///
/// Either finitely supported (a_m = 0 for m > M) or given by a rule with
/// unbounded support; the latter only truncates when a degree bound applies.
class AuxSequence {
public:
    AuxSequence() = default;
    explicit AuxSequence(std::vector<Rational> values);
    static AuxSequence unbounded(SequenceRule rule);

    [[nodiscard]] bool finite() const noexcept { return !rule_.has_value(); }
    /// M for finite support.
    [[nodiscard]] std::size_t support() const noexcept { return values_.size(); }
    [[nodiscard]] Rational a(std::size_t m) const;
    /// a_1..a_count, zero past the support.
    [[nodiscard]] MomentSequence prefix(std::size_t count) const;
    /// phi(t) = sum_i a_i t^i / i!; Error(UnboundedSum) without finite support.
    [[nodiscard]] Rational phi(const Rational& t) const;
    [[nodiscard]] std::string describe() const;

private:
    std::vector<Rational> values_;
    std::optional<SequenceRule> rule_;
};

} // namespace bellid
