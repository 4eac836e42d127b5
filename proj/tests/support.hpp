#pragma once

#include "bellid/rational.hpp"

#include <random>
#include <vector>

namespace testing {

inline bellid::Rational Q(const char* text)
{
    return bellid::parse_rational(text);
}

// small random rationals; num in [-9, 9], den in [1, 7]
class RationalSampler {
public:
    explicit RationalSampler(unsigned seed) : gen_(seed) {}

    bellid::Rational next()
    {
        std::uniform_int_distribution<long> num(-9, 9);
        std::uniform_int_distribution<long> den(1, 7);
        return bellid::ratio(num(gen_), den(gen_));
    }

    bellid::Rational nonzero()
    {
        for (;;) {
            auto v = next();
            if (v != 0) return v;
        }
    }

    std::vector<bellid::Rational> many(std::size_t count)
    {
        std::vector<bellid::Rational> out;
        for (std::size_t i = 0; i < count; ++i) out.push_back(next());
        return out;
    }

    std::size_t index(std::size_t lo, std::size_t hi)
    {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
    }

private:
    std::mt19937 gen_;
};

} // namespace testing
