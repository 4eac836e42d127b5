#include "bellid/sequences.hpp"

#include "bellid/errors.hpp"

#include <utility>

namespace bellid {

std::optional<SequenceRule> parse_sequence_rule(std::string_view name)
{
    if (name == "1") return SequenceRule::Ones;
    if (name == "m") return SequenceRule::Index;
    if (name == "m!") return SequenceRule::Factorial;
    if (name == "(m-1)!") return SequenceRule::ShiftedFactorial;
    if (name == "delta") return SequenceRule::Delta;
    return std::nullopt;
}

std::string_view to_string(SequenceRule rule) noexcept
{
    switch (rule) {
    case SequenceRule::Ones: return "1";
    case SequenceRule::Index: return "m";
    case SequenceRule::Factorial: return "m!";
    case SequenceRule::ShiftedFactorial: return "(m-1)!";
    case SequenceRule::Delta: return "delta";
    }
    return "?";
}

Rational rule_term(SequenceRule rule, std::size_t m)
{
    switch (rule) {
    case SequenceRule::Ones: return 1;
    case SequenceRule::Index: return Rational(static_cast<unsigned long>(m));
    case SequenceRule::Factorial: return Rational(factorial(m));
    case SequenceRule::ShiftedFactorial: return Rational(factorial(m - 1));
    case SequenceRule::Delta: return m == 1 ? 1 : 0;
    }
    return 0;
}

MomentSequence::MomentSequence(std::vector<Rational> values, std::optional<std::string> label)
    : values_(std::move(values)), label_(std::move(label))
{
}

MomentSequence MomentSequence::from_rule(SequenceRule rule, std::size_t count)
{
    std::vector<Rational> values;
    values.reserve(count);
    for (std::size_t m = 1; m <= count; ++m) {
        values.push_back(rule_term(rule, m));
    }
    return MomentSequence(std::move(values), std::string(to_string(rule)));
}

const Rational& MomentSequence::x(std::size_t m) const
{
    if (m == 0 || m > values_.size()) {
        throw Error(ErrorKind::InsufficientPrefix,
                    "x_" + std::to_string(m) + " requested from a sequence of length " + std::to_string(values_.size()));
    }
    return values_[m - 1];
}

MomentSequence MomentSequence::scaled(const Rational& alpha) const
{
    auto out = values_;
    for (auto& v : out) {
        v *= alpha;
    }
    return MomentSequence(std::move(out));
}

MomentSequence MomentSequence::graded(const Rational& alpha) const
{
    auto out = values_;
    Rational p = 1;
    for (auto& v : out) {
        p *= alpha;
        v *= p;
    }
    return MomentSequence(std::move(out));
}

AuxSequence::AuxSequence(std::vector<Rational> values) : values_(std::move(values))
{
    while (!values_.empty() && values_.back() == 0) {
        values_.pop_back();
    }
}

AuxSequence AuxSequence::unbounded(SequenceRule rule)
{
    AuxSequence out;
    out.rule_ = rule;
    return out;
}

Rational AuxSequence::a(std::size_t m) const
{
    if (rule_) {
        return rule_term(*rule_, m);
    }
    return (m >= 1 && m <= values_.size()) ? values_[m - 1] : Rational(0);
}

MomentSequence AuxSequence::prefix(std::size_t count) const
{
    std::vector<Rational> out;
    out.reserve(count);
    for (std::size_t m = 1; m <= count; ++m) {
        out.push_back(a(m));
    }
    return MomentSequence(std::move(out));
}

Rational AuxSequence::phi(const Rational& t) const
{
    if (rule_) {
        throw Error(ErrorKind::UnboundedSum, "phi of an aux sequence without finite support");
    }
    Rational acc = 0;
    Rational tp = 1;
    for (std::size_t i = 1; i <= values_.size(); ++i) {
        tp *= t;
        acc += values_[i - 1] * tp / Rational(factorial(i));
    }
    return acc;
}

std::string AuxSequence::describe() const
{
    if (rule_) {
        return "rule:" + std::string(to_string(*rule_));
    }
    std::string out = "[";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out += (i ? "," : "") + to_string(values_[i]);
    }
    return out + "]";
}

} // namespace bellid
