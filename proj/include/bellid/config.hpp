#pragma once

#include "bellid/builders.hpp"
#include "bellid/report.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace bellid {

/// Anything wrong with a config file or inline parameters (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Read-only view of one parameter point: a JSON object whose rationals are
/// "p/q" strings or integers.
class Params {
public:
    explicit Params(nlohmann::json object);

    [[nodiscard]] bool has(const std::string& key) const;
    [[nodiscard]] Rational rational(const std::string& key) const;
    [[nodiscard]] Rational rational(const std::string& key, const Rational& fallback) const;
    [[nodiscard]] unsigned natural(const std::string& key) const;
    [[nodiscard]] unsigned natural(const std::string& key, unsigned fallback) const;
    [[nodiscard]] std::string text(const std::string& key) const;
    [[nodiscard]] std::string text(const std::string& key, const std::string& fallback) const;
    [[nodiscard]] std::vector<Rational> rationals(const std::string& key) const;
    [[nodiscard]] const nlohmann::json& raw(const std::string& key) const;
    [[nodiscard]] const nlohmann::json& json() const noexcept { return object_; }

private:
    nlohmann::json object_;
};

Rational json_rational(const nlohmann::json& value, const std::string& what);

/// Moment sequence from "m", "m!", "1", "(m-1)!", "delta" (materialized to
/// `count`) or an explicit array.
MomentSequence parse_moments(const nlohmann::json& value, std::size_t count);

/// Aux sequence from an array of rationals or "unbounded:<rule>".
AuxSequence parse_aux(const nlohmann::json& value);

/// Builders straight from parameters, families and moments materialized to
/// what the range needs. Library errors are rethrown as ConfigError.
YBuilder make_y_builder(const std::string& builder, const Params& p, std::size_t n_max);
ZBuilder make_z_builder(const std::string& builder, const Params& p, std::size_t n_max, std::size_t s_max);

bool is_y_builder(const std::string& builder);
bool is_z_builder(const std::string& builder);

/// One runnable unit after grid expansion and validation.
struct Job {
    std::string label;
    bool expect_fail = false;
    std::function<std::vector<IdentityReport>(unsigned threads)> run;
};

struct RunConfig {
    std::vector<Job> jobs;
    std::optional<std::string> output;
    unsigned parallelism = 1;
};

/// Expands every suite entry into jobs and builds (thus validates) every
/// builder before returning. Throws ConfigError.
RunConfig load_run_config(const nlohmann::json& config);

/// Expansion only: each suite entry's grid and tuples flattened into
/// parameter objects (fixed params merged in), in deterministic order.
std::vector<nlohmann::json> expand_points(const nlohmann::json& suite);

struct RunOutcome {
    std::vector<IdentityReport> reports;
    std::vector<bool> expect_fail;
    /// 0 when every report matches its expectation, 1 otherwise.
    int exit_code = 0;
};

RunOutcome run_jobs(const RunConfig& config);

/// Reports as a JSON array; timing zeroed when `with_timing` is false.
nlohmann::ordered_json reports_json(const RunOutcome& outcome, bool with_timing = true);

} // namespace bellid
