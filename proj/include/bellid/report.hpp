#pragma once

#include "bellid/builders.hpp"
#include "bellid/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bellid {

enum class Status { Pass, Fail, Error };

std::string_view to_string(Status status) noexcept;

struct Counterexample {
    std::size_t n = 0;
    std::size_t k_or_s = 0;
    Rational lhs;
    Rational rhs;
};

/// Outcome of checking one identity at one parameter point.
/// pass <=> counterexamples empty and no error.
struct IdentityReport {
    std::string identity;
    ParamList params;
    std::size_t n_max = 0;
    std::optional<std::size_t> s_max;
    Status status = Status::Pass;
    std::vector<Counterexample> counterexamples;
    std::int64_t elapsed_ms = 0;
    std::string error;

    [[nodiscard]] bool passed() const noexcept { return status == Status::Pass; }
    /// Sets status from the counterexample list (error status is sticky).
    void settle();
};

nlohmann::ordered_json to_json(const IdentityReport& report);
/// Params object only, in insertion order.
nlohmann::ordered_json to_json(const ParamList& params);

/// One-line summary for terminals: "<identity> <status> [n<=N ...]".
std::string summary_line(const IdentityReport& report);

} // namespace bellid
