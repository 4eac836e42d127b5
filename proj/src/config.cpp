#include "bellid/config.hpp"

#include "bellid/checks.hpp"
#include "bellid/errors.hpp"
#include "bellid/verify.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <utility>

namespace bellid {

using nlohmann::json;

// ---------------------------------------------------------------- params

Rational json_rational(const json& value, const std::string& what)
{
    try {
        if (value.is_string()) return parse_rational(value.get<std::string>());
        if (value.is_number_integer()) return Rational(Integer(std::to_string(value.get<long long>())));
    } catch (const Error& e) {
        throw ConfigError(what + ": " + e.what());
    }
    throw ConfigError(what + ": expected an integer or a \"p/q\" string, got " + value.dump());
}

Params::Params(nlohmann::json object) : object_(std::move(object))
{
    if (!object_.is_object()) throw ConfigError("parameters must be a JSON object, got " + object_.dump());
}

bool Params::has(const std::string& key) const
{
    return object_.contains(key) && !object_.at(key).is_null();
}

const nlohmann::json& Params::raw(const std::string& key) const
{
    if (!has(key)) throw ConfigError("missing parameter \"" + key + "\"");
    return object_.at(key);
}

Rational Params::rational(const std::string& key) const
{
    return json_rational(raw(key), "parameter \"" + key + "\"");
}

Rational Params::rational(const std::string& key, const Rational& fallback) const
{
    return has(key) ? rational(key) : fallback;
}

unsigned Params::natural(const std::string& key) const
{
    const auto& v = raw(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError("parameter \"" + key + "\" must be a non-negative integer, got " + v.dump());
    }
    return v.get<unsigned>();
}

unsigned Params::natural(const std::string& key, unsigned fallback) const
{
    return has(key) ? natural(key) : fallback;
}

std::string Params::text(const std::string& key) const
{
    const auto& v = raw(key);
    if (!v.is_string()) throw ConfigError("parameter \"" + key + "\" must be a string, got " + v.dump());
    return v.get<std::string>();
}

std::string Params::text(const std::string& key, const std::string& fallback) const
{
    return has(key) ? text(key) : fallback;
}

std::vector<Rational> Params::rationals(const std::string& key) const
{
    const auto& v = raw(key);
    if (!v.is_array()) throw ConfigError("parameter \"" + key + "\" must be an array, got " + v.dump());
    std::vector<Rational> out;
    for (const auto& item : v) out.push_back(json_rational(item, "parameter \"" + key + "\""));
    return out;
}

MomentSequence parse_moments(const json& value, std::size_t count)
{
    if (value.is_string()) {
        const auto name = value.get<std::string>();
        const auto rule = parse_sequence_rule(name);
        if (!rule) throw ConfigError("unknown moment rule \"" + name + "\" (use m, m!, 1, (m-1)!, delta)");
        return MomentSequence::from_rule(*rule, std::max<std::size_t>(count, 1));
    }
    if (value.is_array()) {
        std::vector<Rational> values;
        for (const auto& v : value) values.push_back(json_rational(v, "moments"));
        if (values.empty()) throw ConfigError("moments: need at least one value");
        return MomentSequence(std::move(values));
    }
    throw ConfigError("moments must be a rule name or an array, got " + value.dump());
}

AuxSequence parse_aux(const json& value)
{
    if (value.is_string()) {
        const auto text = value.get<std::string>();
        const std::string prefix = "unbounded:";
        if (text.starts_with(prefix)) {
            const auto rule = parse_sequence_rule(text.substr(prefix.size()));
            if (rule) return AuxSequence::unbounded(*rule);
        }
        throw ConfigError("aux must be an array or \"unbounded:<rule>\", got \"" + text + "\"");
    }
    if (!value.is_array()) throw ConfigError("aux must be an array, got " + value.dump());
    std::vector<Rational> values;
    for (const auto& v : value) values.push_back(json_rational(v, "aux"));
    return AuxSequence(std::move(values));
}

// ---------------------------------------------------------------- builders

namespace {

const std::set<std::string> y_names{"prop4", "thm1", "thm1-alpha0", "rs0", "thm3", "thm3-alpha0",
                                    "p1",    "z1",   "z2",          "z8a", "z8b",  "z88"};
const std::set<std::string> z_names{"prop8", "thm2", "thm2-alpha0", "thm4", "thm4-alpha0",
                                    "p6",    "z3",   "z4",          "z12a", "z12b"};

// Families are rebuilt often with the same key; keep them.
BinomialFamily materialize(const std::string& kind_text, const Rational& a, std::size_t order)
{
    static std::mutex mutex;
    static std::map<std::tuple<std::string, std::string, std::size_t>, BinomialFamily> cache;
    const auto key = std::make_tuple(kind_text, to_string(a), order);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    BinomialFamily fam = abelize(builtin_family(parse_family_kind(kind_text, order), order), a);
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(fam)).first->second;
}

template <class Src>
void fill_family(Src& src, const Params& p, std::size_t order)
{
    if constexpr (requires { src.fam; }) {
        src.fam = materialize(p.text("family"), p.rational("a", 0), order);
    }
}

Reading reading_of(const Params& p, Reading fallback)
{
    if (!p.has("reading")) return fallback;
    try {
        return parse_reading(p.text("reading"));
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

YSource y_source(const std::string& name, const Params& p)
{
    // families are attached afterwards, once the order is known
    const BinomialFamily none;
    if (name == "prop4") return ysource::Prop4{};
    if (name == "thm1") return ysource::Thm1{none, p.rational("x"), p.rational("alpha")};
    if (name == "thm1-alpha0") return ysource::Thm1Alpha0{none, p.rational("x")};
    if (name == "rs0") return ysource::RS0{none, p.rational("x"), reading_of(p, Reading::Derived)};
    if (name == "thm3") {
        return ysource::Thm3{none,           parse_aux(p.raw("aux")), p.rational("x"),  p.rational("alpha"),
                             p.rational("beta"), p.rational("lambda"),  p.natural("u"), p.natural("v")};
    }
    if (name == "thm3-alpha0") {
        return ysource::Thm3Alpha0{none,           parse_aux(p.raw("aux")), p.rational("x"), p.rational("beta"),
                                   p.rational("lambda"), p.natural("u"),          p.natural("v")};
    }
    if (name == "p1") return ysource::CorP1{none, p.rational("x"), p.rational("alpha")};
    if (name == "z1") return ysource::CorZ1{{}, p.rational("b"), p.rational("c"), reading_of(p, Reading::Derived)};
    if (name == "z2") return ysource::CorZ2{{}, p.rational("x")};
    if (name == "z8a") {
        return ysource::CorZ8A{none,           p.rational("x"),      p.rational("y"), p.rational("alpha"),
                               p.rational("beta"), p.rational("lambda"), p.natural("u"), p.natural("v")};
    }
    if (name == "z8b") {
        return ysource::CorZ8B{none,           p.rational("x"),      p.rational("y"), p.rational("beta"),
                               p.rational("lambda"), p.natural("u"), p.natural("v"), reading_of(p, Reading::Printed)};
    }
    if (name == "z88") {
        return ysource::CorZ88{none,           p.rational("x"),      p.rational("y"), p.rational("alpha"),
                               p.rational("beta"), p.rational("lambda"), p.natural("which")};
    }
    throw ConfigError("unknown Y builder \"" + name + "\"");
}

ZSource z_source(const std::string& name, const Params& p)
{
    const BinomialFamily none;
    if (name == "prop8") return zsource::Prop8{};
    if (name == "thm2") return zsource::Thm2{none, p.rational("x"), p.rational("alpha")};
    if (name == "thm2-alpha0") return zsource::Thm2Alpha0{none, p.rational("x")};
    if (name == "thm4") {
        return zsource::Thm4{none,           parse_aux(p.raw("aux")), p.rational("x"),  p.rational("alpha"),
                             p.rational("beta"), p.rational("lambda"),  p.natural("u"), p.natural("v")};
    }
    if (name == "thm4-alpha0") {
        return zsource::Thm4Alpha0{none,           parse_aux(p.raw("aux")), p.rational("x"), p.rational("beta"),
                                   p.rational("lambda"), p.natural("u"),          p.natural("v")};
    }
    if (name == "p6") return zsource::CorP6{none, p.rational("x"), p.rational("alpha")};
    if (name == "z3") return zsource::CorZ3{{}, p.rational("b"), p.rational("c")};
    if (name == "z4") return zsource::CorZ4{{}, p.rational("x")};
    if (name == "z12a") {
        return zsource::CorZ12A{none,           p.rational("x"),      p.rational("y"), p.rational("alpha"),
                                p.rational("beta"), p.rational("lambda"), p.natural("u"), p.natural("v")};
    }
    if (name == "z12b") {
        return zsource::CorZ12B{none,           p.rational("x"),      p.rational("y"), p.rational("beta"),
                                p.rational("lambda"), p.natural("u"), p.natural("v"), reading_of(p, Reading::Derived)};
    }
    throw ConfigError("unknown Z builder \"" + name + "\"");
}

template <class Src>
void fill_moments(Src& src, const Params& p, std::size_t count)
{
    if constexpr (requires { src.x.values(); }) {
        src.x = parse_moments(p.raw("moments"), count);
        if (src.x.size() < count) {
            throw ConfigError("moments: " + std::to_string(count) + " values needed for this range, got " +
                              std::to_string(src.x.size()));
        }
    }
}

template <class Fn>
auto library_call(const std::string& who, Fn&& fn)
{
    try {
        return fn();
    } catch (const Error& e) {
        throw ConfigError(who + ": " + e.what());
    }
}

} // namespace

bool is_y_builder(const std::string& builder)
{
    return y_names.contains(builder);
}

bool is_z_builder(const std::string& builder)
{
    return z_names.contains(builder);
}

YBuilder make_y_builder(const std::string& builder, const Params& p, std::size_t n_max)
{
    return library_call(builder, [&] {
        const unsigned r = p.natural("r", 0), s = p.natural("s", 0);
        YSource src = y_source(builder, p);
        const std::size_t order = required_family_order(src, r, s, n_max);
        const std::size_t count = required_moment_count(src, n_max);
        std::visit(
            [&](auto& v) {
                fill_family(v, p, order);
                fill_moments(v, p, count);
            },
            src);
        return YBuilder(std::move(src), r, s);
    });
}

ZBuilder make_z_builder(const std::string& builder, const Params& p, std::size_t n_max, std::size_t s_max)
{
    return library_call(builder, [&] {
        const unsigned r = p.natural("r", 1);
        ZSource src = z_source(builder, p);
        const std::size_t order = required_family_order(src, r, n_max, s_max);
        const std::size_t count = required_moment_count(src, n_max);
        std::visit(
            [&](auto& v) {
                fill_family(v, p, order);
                fill_moments(v, p, count);
            },
            src);
        return ZBuilder(std::move(src), r);
    });
}

// ---------------------------------------------------------------- expansion

std::vector<json> expand_points(const json& suite)
{
    json base = suite.value("params", json::object());
    if (!base.is_object()) throw ConfigError("\"params\" must be an object");
    if (suite.contains("builder")) base["builder"] = suite.at("builder");
    std::vector<json> points{base};

    const auto axis = [&](const std::vector<std::string>& keys, const json& values) {
        if (!values.is_array() || values.empty()) throw ConfigError("grid values must be a nonempty array");
        std::vector<json> next;
        for (const auto& pt : points) {
            for (const auto& v : values) {
                json q = pt;
                if (keys.size() == 1) {
                    q[keys[0]] = v;
                } else {
                    if (!v.is_array() || v.size() != keys.size()) {
                        throw ConfigError("tuple " + v.dump() + " does not match keys of size " +
                                          std::to_string(keys.size()));
                    }
                    for (std::size_t i = 0; i < keys.size(); ++i) q[keys[i]] = v[i];
                }
                next.push_back(std::move(q));
            }
        }
        points = std::move(next);
    };

    if (suite.contains("grid")) {
        const auto& grid = suite.at("grid");
        if (!grid.is_object()) throw ConfigError("\"grid\" must be an object");
        for (const auto& [key, values] : grid.items()) axis({key}, values);
    }
    if (suite.contains("tuples")) {
        for (const auto& group : suite.at("tuples")) {
            if (!group.contains("keys") || !group.contains("values")) {
                throw ConfigError("each tuples entry needs \"keys\" and \"values\"");
            }
            axis(group.at("keys").get<std::vector<std::string>>(), group.at("values"));
        }
    }
    return points;
}

namespace {

std::size_t suite_size(const json& suite, const char* key, std::optional<std::size_t> fallback = std::nullopt)
{
    if (!suite.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(std::string("suite needs \"") + key + "\"");
    }
    const auto& v = suite.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(std::string("\"") + key + "\" must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

struct Override {
    std::size_t n, j;
    Rational value;
};

std::vector<Override> parse_overrides(const json& suite)
{
    std::vector<Override> out;
    if (!suite.contains("override")) return out;
    for (const auto& o : suite.at("override")) {
        if (!o.contains("n") || !o.contains("k_or_s") || !o.contains("value")) {
            throw ConfigError("override entries need n, k_or_s and value");
        }
        out.push_back({o.at("n").get<std::size_t>(), o.at("k_or_s").get<std::size_t>(),
                       json_rational(o.at("value"), "override value")});
    }
    return out;
}

void mark(std::vector<IdentityReport>& reports, bool expect_fail)
{
    if (!expect_fail) return;
    for (auto& r : reports) r.params.emplace_back("expect", "fail");
}

Job make_job(const json& suite, const json& point)
{
    const std::string identity = suite.value("identity", "");
    json adjusted = point;
    // the collapse checks always run with aux = (1)
    if (identity == "collapse") adjusted["aux"] = json::array({"1"});
    const Params p(adjusted);
    const std::size_t n_max = suite_size(suite, "n_max");
    const std::string expect = suite.value("expect", "pass");
    if (expect != "pass" && expect != "fail") throw ConfigError("\"expect\" must be \"pass\" or \"fail\"");
    const bool expect_fail = expect == "fail";
    Job job;
    job.expect_fail = expect_fail;
    job.label = identity + " " + point.dump();

    if (identity == "h" || identity == "b") {
        const std::string name = p.text("builder");
        const auto overrides = parse_overrides(suite);
        if (identity == "h") {
            if (!is_y_builder(name)) throw ConfigError("identity h needs a Y builder, got \"" + name + "\"");
            YBuilder y = make_y_builder(name, p, n_max);
            if (p.has("scale")) y = library_call(name, [&] { return y.scaled(p.rational("scale")); });
            for (const auto& o : overrides) y = y.with_override(o.n, o.j, o.value);
            job.run = [y, n_max, expect_fail](unsigned threads) {
                std::vector<IdentityReport> out{verify_h(y, n_max, threads)};
                mark(out, expect_fail);
                return out;
            };
        } else {
            if (!is_z_builder(name)) throw ConfigError("identity b needs a Z builder, got \"" + name + "\"");
            const std::size_t s_max = suite_size(suite, "s_max");
            ZBuilder z = make_z_builder(name, p, n_max, s_max);
            if (p.has("scale")) z = library_call(name, [&] { return z.scaled(p.rational("scale")); });
            for (const auto& o : overrides) z = z.with_override(o.n, o.j, o.value);
            job.run = [z, n_max, s_max, expect_fail](unsigned threads) {
                std::vector<IdentityReport> out{verify_b(z, n_max, s_max, threads)};
                mark(out, expect_fail);
                return out;
            };
        }
        return job;
    }

    if (identity == "s1") {
        const std::string which_text = p.text("which");
        S1Identity which{};
        bool found = false;
        for (auto w : {S1Identity::P2, S1Identity::P2Printed, S1Identity::P3, S1Identity::P4}) {
            if (to_string(w) == which_text) {
                which = w;
                found = true;
            }
        }
        if (!found) throw ConfigError("s1: \"which\" must be p2, p2-printed, p3 or p4");
        const auto fam = library_call("s1", [&] { return materialize(p.text("family"), p.rational("a", 0), n_max); });
        const S1Point pt{p.rational("x"), p.rational("y"), p.rational("alpha"), p.rational("beta"), p.rational("lambda")};
        job.run = [=](unsigned) {
            std::vector<IdentityReport> out{check_s1(which, fam, pt, n_max)};
            mark(out, expect_fail);
            return out;
        };
        return job;
    }

    if (identity == "appell") {
        const auto a = p.rationals("a");
        const Rational x = p.rational("x"), y = p.rational("y"), z = p.rational("z");
        job.run = [=](unsigned) {
            auto out = appell_check(a, x, y, z, n_max);
            mark(out, expect_fail);
            return out;
        };
        return job;
    }

    if (identity == "hessenberg") {
        const auto phi = p.rationals("phi");
        const Rational x = p.rational("x");
        if (phi.size() < n_max) {
            throw ConfigError("hessenberg: phi needs " + std::to_string(n_max) + " values, got " +
                              std::to_string(phi.size()));
        }
        job.run = [=](unsigned) {
            std::vector<IdentityReport> out{hessenberg_check(phi, x, n_max)};
            mark(out, expect_fail);
            return out;
        };
        return job;
    }

    if (identity == "collapse") {
        const std::string name = p.text("builder");
        if (p.natural("u") + p.natural("v") != 1) throw ConfigError("collapse: needs u + v = 1");
        if (name == "thm3" || name == "thm3-alpha0") {
            const YBuilder probe = make_y_builder(name, p, n_max); // validation only
            (void)probe;
            const unsigned r = p.natural("r", 0), s = p.natural("s", 0);
            YSource src = y_source(name, p);
            std::visit([&](auto& v) { fill_family(v, p, required_family_order(src, r, s, n_max)); }, src);
            job.run = [=](unsigned) {
                std::vector<IdentityReport> out{std::visit(
                    [&](const auto& v) -> IdentityReport {
                        if constexpr (requires { collapse_check(v, r, s, n_max); }) {
                            return collapse_check(v, r, s, n_max);
                        } else {
                            return {};
                        }
                    },
                    src)};
                mark(out, expect_fail);
                return out;
            };
            return job;
        }
        if (name == "thm4" || name == "thm4-alpha0") {
            const std::size_t s_max = suite_size(suite, "s_max");
            const ZBuilder probe = make_z_builder(name, p, n_max, s_max);
            (void)probe;
            const unsigned r = p.natural("r", 1);
            ZSource src = z_source(name, p);
            std::visit([&](auto& v) { fill_family(v, p, required_family_order(src, r, n_max, s_max)); }, src);
            job.run = [=](unsigned) {
                std::vector<IdentityReport> out{std::visit(
                    [&](const auto& v) -> IdentityReport {
                        if constexpr (requires { collapse_check(v, r, n_max, s_max); }) {
                            return collapse_check(v, r, n_max, s_max);
                        } else {
                            return {};
                        }
                    },
                    src)};
                mark(out, expect_fail);
                return out;
            };
            return job;
        }
        throw ConfigError("collapse: builder must be thm3, thm3-alpha0, thm4 or thm4-alpha0");
    }

    if (identity == "specialize") {
        const std::string variant = p.text("variant");
        const auto moments = parse_moments(p.raw("moments"), n_max + 1);
        const Rational x = p.rational("x");
        if (variant == "z1-z2") {
            const unsigned r = p.natural("r", 0), s = p.natural("s", 0);
            if (r + s < 1) throw ConfigError("specialize z1-z2: r + s >= 1 is required");
            job.run = [=](unsigned) {
                std::vector<IdentityReport> out{specialization_z1_z2(moments, x, r, s, n_max)};
                mark(out, expect_fail);
                return out;
            };
            return job;
        }
        if (variant == "z3-z4") {
            const unsigned r = p.natural("r", 1);
            if (r < 1) throw ConfigError("specialize z3-z4: r >= 1 is required");
            const std::size_t s_max = suite_size(suite, "s_max");
            const Reading reading = reading_of(p, Reading::Derived);
            job.run = [=](unsigned) {
                std::vector<IdentityReport> out{specialization_z3_z4(moments, x, r, reading, n_max, s_max)};
                mark(out, expect_fail);
                return out;
            };
            return job;
        }
        throw ConfigError("specialize: variant must be z1-z2 or z3-z4");
    }

    throw ConfigError("unknown identity \"" + identity + "\" (h, b, s1, appell, hessenberg, collapse, specialize)");
}

} // namespace

RunConfig load_run_config(const json& config)
{
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig out;
    if (config.contains("output")) out.output = config.at("output").get<std::string>();
    if (config.contains("parallelism")) {
        const auto& v = config.at("parallelism");
        if (!v.is_number_integer() || v.get<long long>() < 1) throw ConfigError("\"parallelism\" must be >= 1");
        out.parallelism = v.get<unsigned>();
    }
    if (!config.contains("suites") || !config.at("suites").is_array()) {
        throw ConfigError("config needs a \"suites\" array");
    }
    std::size_t index = 0;
    for (const auto& suite : config.at("suites")) {
        if (!suite.is_object()) throw ConfigError("suite #" + std::to_string(index) + " is not an object");
        try {
            for (const auto& point : expand_points(suite)) {
                out.jobs.push_back(make_job(suite, point));
            }
        } catch (const ConfigError& e) {
            throw ConfigError("suite #" + std::to_string(index) + ": " + e.what());
        } catch (const json::exception& e) {
            throw ConfigError("suite #" + std::to_string(index) + ": " + e.what());
        }
        ++index;
    }
    return out;
}

RunOutcome run_jobs(const RunConfig& config)
{
    RunOutcome out;
    bool config_error = false;
    for (const auto& job : config.jobs) {
        for (auto& report : job.run(config.parallelism)) {
            const bool ok = job.expect_fail ? report.status == Status::Fail : report.status == Status::Pass;
            if (report.status == Status::Error) config_error = true;
            if (!ok) out.exit_code = 1;
            out.reports.push_back(std::move(report));
            out.expect_fail.push_back(job.expect_fail);
        }
    }
    if (config_error) out.exit_code = 2;
    return out;
}

nlohmann::ordered_json reports_json(const RunOutcome& outcome, bool with_timing)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : outcome.reports) {
        auto j = to_json(r);
        if (!with_timing) j["elapsed_ms"] = 0;
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace bellid
