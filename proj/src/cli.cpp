#include "bellid/cli.hpp"

#include "bellid/bell.hpp"
#include "bellid/config.hpp"
#include "bellid/errors.hpp"
#include "bellid/family.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace bellid {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json_text(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

// inline JSON, a rule name, or a file holding either
json moments_arg(const std::string& text)
{
    if (text.empty()) throw ConfigError("empty moment sequence");
    if (text.front() == '[' || text.front() == '"') return parse_json_text(text, "moments");
    if (parse_sequence_rule(text)) return text;
    if (std::filesystem::exists(text)) return parse_json_text(read_file(text), text);
    throw ConfigError("moments: \"" + text + "\" is neither JSON, a rule name nor a file");
}

// writes to `path`, or to `out` when no path is given
void emit(const std::optional<std::string>& path, const std::string& text, std::ostream& out)
{
    if (!path) {
        out << text;
        return;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) throw IoError("cannot write " + *path);
    file << text;
    if (!file.flush()) throw IoError("write failed: " + *path);
}

// ---------------------------------------------------------------- table

struct TableOpts {
    std::string kind;
    std::string moments;
    std::size_t n_max = 6;
    std::string format = "csv";
    std::string out;
};

int cmd_table(const TableOpts& o, std::ostream& out)
{
    std::vector<std::vector<Rational>> rows;
    if (o.kind == "bell") {
        if (o.moments.empty()) throw ConfigError("table --kind bell needs --moments");
        const auto x = parse_moments(moments_arg(o.moments), o.n_max);
        const BellTriangle tri(x);
        for (std::size_t n = 0; n <= o.n_max; ++n) {
            rows.emplace_back();
            for (std::size_t k = 0; k <= n; ++k) rows.back().push_back(tri.cell(n, k));
        }
    } else if (o.kind == "stirling2") {
        rows = classical_table(TriangleKind::Stirling2, o.n_max);
    } else if (o.kind == "stirling1") {
        rows = classical_table(TriangleKind::Stirling1Unsigned, o.n_max);
    } else if (o.kind == "lah") {
        rows = classical_table(TriangleKind::Lah, o.n_max);
    } else {
        throw ConfigError("unknown table kind \"" + o.kind + "\"");
    }

    std::string text;
    if (o.format == "csv") {
        text = "n,k,value\n";
        for (std::size_t n = 0; n < rows.size(); ++n) {
            for (std::size_t k = 0; k < rows[n].size(); ++k) {
                text += std::to_string(n) + "," + std::to_string(k) + "," + to_string(rows[n][k]) + "\n";
            }
        }
    } else if (o.format == "json") {
        auto arr = ordered_json::array();
        for (std::size_t n = 0; n < rows.size(); ++n) {
            for (std::size_t k = 0; k < rows[n].size(); ++k) {
                arr.push_back({{"n", n}, {"k", k}, {"value", to_string(rows[n][k])}});
            }
        }
        text = arr.dump(2) + "\n";
    } else {
        throw ConfigError("unknown format \"" + o.format + "\" (csv, json)");
    }
    emit(o.out.empty() ? std::nullopt : std::optional(o.out), text, out);
    return exit_pass;
}

// ---------------------------------------------------------------- families

struct FamiliesOpts {
    std::vector<std::string> kinds;
    std::string a = "0";
    std::size_t n_max = 6;
    std::string out;
};

int cmd_families(const FamiliesOpts& o, std::ostream& out)
{
    std::vector<std::string> kinds = o.kinds;
    if (kinds.empty()) kinds = {"monomial", "falling", "rising", "touchard", "abel:1"};
    const Rational a = json_rational(json(o.a), "--a");
    auto arr = ordered_json::array();
    for (const auto& k : kinds) {
        const auto fam = abelize(builtin_family(parse_family_kind(k, o.n_max), o.n_max), a);
        auto polys = ordered_json::array();
        for (const auto& p : fam.polys) {
            auto coeffs = ordered_json::array();
            for (const auto& c : p.coeffs()) coeffs.push_back(to_string(c));
            polys.push_back(std::move(coeffs));
        }
        arr.push_back({{"kind", k}, {"a", to_string(a)}, {"N", o.n_max}, {"polys", std::move(polys)}});
    }
    emit(o.out.empty() ? std::nullopt : std::optional(o.out), arr.dump(2) + "\n", out);
    return exit_pass;
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
    std::string config;
    std::string out;
    unsigned parallelism = 0;
    bool no_timing = false;
};

int cmd_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err)
{
    RunConfig config = load_run_config(parse_json_text(read_file(o.config), o.config));
    if (o.parallelism) config.parallelism = o.parallelism;
    std::optional<std::string> path = config.output;
    if (!o.out.empty()) path = o.out;

    const RunOutcome outcome = run_jobs(config);
    // summaries go wherever the reports do not
    std::ostream& log = path ? out : err;
    for (std::size_t i = 0; i < outcome.reports.size(); ++i) {
        log << summary_line(outcome.reports[i]) << (outcome.expect_fail[i] ? " (expected fail)" : "") << "\n";
    }
    emit(path, reports_json(outcome, !o.no_timing).dump(2) + "\n", out);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < outcome.reports.size(); ++i) {
        const auto s = outcome.reports[i].status;
        if (outcome.expect_fail[i] ? s == Status::Fail : s == Status::Pass) ++ok;
    }
    log << ok << "/" << outcome.reports.size() << " reports as expected\n";
    return outcome.exit_code;
}

// ---------------------------------------------------------------- check

struct CheckOpts {
    std::string identity;
    std::string builder;
    std::string params = "{}";
    std::size_t n = 1;
    std::optional<std::size_t> k;
    std::optional<std::size_t> s;
    bool json = false;
    // convenience parameters, copied into params when given
    std::map<std::string, std::string> rationals;
    std::map<std::string, unsigned> naturals;
    std::string moments, family, aux, reading;
};

int cmd_check(const CheckOpts& o, std::ostream& out)
{
    if (o.identity != "h" && o.identity != "b") {
        throw ConfigError("unknown identity \"" + o.identity + "\" (h, b)");
    }
    json pj = parse_json_text(o.params, "--params");
    if (!pj.is_object()) throw ConfigError("--params must be a JSON object");
    for (const auto& [key, v] : o.rationals) pj[key] = v;
    for (const auto& [key, v] : o.naturals) pj[key] = v;
    if (!o.moments.empty()) pj["moments"] = moments_arg(o.moments);
    if (!o.family.empty()) pj["family"] = o.family;
    if (!o.reading.empty()) pj["reading"] = o.reading;
    if (!o.aux.empty()) pj["aux"] = o.aux.front() == '[' ? parse_json_text(o.aux, "--aux") : json(o.aux);
    const std::string builder = !o.builder.empty() ? o.builder : pj.value("builder", "");
    if (builder.empty()) throw ConfigError("check needs --builder");

    const bool is_h = o.identity == "h";
    const std::size_t n = o.n;
    if (n < 1) throw ConfigError("--n must be >= 1");
    std::size_t j = 0;
    if (is_h) {
        if (!o.k) throw ConfigError("identity h needs --k");
        j = *o.k;
        if (j < 1 || j > n) throw ConfigError("identity h needs 1 <= k <= n");
        if (o.s) pj["s"] = *o.s; // the builder's s
    } else {
        if (!o.s) throw ConfigError("identity b needs --s");
        j = *o.s;
    }

    std::vector<Rational> operands;
    std::vector<std::string> operand_names;
    Rational rhs;
    ParamList params;
    std::string rhs_name;
    try {
        if (is_h) {
            const YBuilder y = make_y_builder(builder, Params(pj), n);
            params = y.params();
            for (std::size_t m = 1; m <= n - j + 1; ++m) {
                operands.push_back(y(m, 1));
                operand_names.push_back("Y(" + std::to_string(m) + ",1)");
            }
            rhs = y(n, j);
            rhs_name = "Y(" + std::to_string(n) + "," + std::to_string(j) + ")";
        } else {
            const ZBuilder z = make_z_builder(builder, Params(pj), n, j);
            params = z.params();
            const std::string sj = std::to_string(j);
            for (std::size_t m = 1; m <= n; ++m) {
                operands.push_back(Rational(j) * z(m, 0));
                operand_names.push_back(sj + "*Z(" + std::to_string(m) + ",0)");
            }
            rhs = Rational(j) * z(n, j);
            rhs_name = sj + "*Z(" + std::to_string(n) + "," + sj + ")";
        }
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }

    // the whole triangle of Bell values over the operands, rows up to n
    const BellTriangle tri{MomentSequence(operands.empty() ? std::vector<Rational>{Rational(0)} : operands)};
    std::vector<std::vector<Rational>> bell(n + 1);
    for (std::size_t m = 1; m <= n; ++m) {
        const std::size_t top = is_h ? std::min(m, j) : m;
        for (std::size_t q = 1; q <= top; ++q) {
            // cells past the operand list are not needed by the LHS
            bell[m].push_back(m - q + 1 <= operands.size() ? tri.cell(m, q) : Rational(0));
        }
    }
    Rational lhs = 0;
    if (is_h) {
        lhs = bell[n][j - 1];
    } else {
        for (const auto& v : bell[n]) lhs += v;
    }
    const bool pass = lhs == rhs;
    const std::string lhs_name = is_h ? "B(" + std::to_string(n) + "," + std::to_string(j) + ")"
                                      : "A(" + std::to_string(n) + ")";

    if (o.json) {
        ordered_json j_out;
        j_out["identity"] = o.identity;
        j_out["params"] = to_json(params);
        j_out["n"] = n;
        j_out["k_or_s"] = j;
        auto ops = ordered_json::array();
        for (const auto& v : operands) ops.push_back(to_string(v));
        j_out["operands"] = ops;
        auto rows = ordered_json::array();
        for (std::size_t m = 1; m <= n; ++m) {
            auto row = ordered_json::array();
            for (const auto& v : bell[m]) row.push_back(to_string(v));
            rows.push_back(row);
        }
        j_out["bell"] = rows;
        j_out["lhs"] = to_string(lhs);
        j_out["rhs"] = to_string(rhs);
        j_out["status"] = pass ? "pass" : "fail";
        out << j_out.dump(2) << "\n";
    } else {
        out << "identity " << o.identity << " at (n," << (is_h ? "k" : "s") << ") = (" << n << "," << j << ")\n";
        out << "params " << to_json(params).dump() << "\n";
        out << "operands\n";
        for (std::size_t i = 0; i < operands.size(); ++i) {
            out << "  " << operand_names[i] << " = " << to_string(operands[i]) << "\n";
        }
        out << "bell values B(m,q) over the operands\n";
        for (std::size_t m = 1; m <= n; ++m) {
            for (std::size_t q = 0; q < bell[m].size(); ++q) {
                out << "  B(" << m << "," << q + 1 << ") = " << to_string(bell[m][q]) << "\n";
            }
        }
        out << "LHS " << lhs_name << " = " << to_string(lhs) << "\n";
        out << "RHS " << rhs_name << " = " << to_string(rhs) << "\n";
        out << (pass ? "pass" : "fail") << "\n";
    }
    return pass ? exit_pass : exit_counterexample;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact Bell polynomial identities"};
    app.require_subcommand(1);

    TableOpts table;
    auto* t = app.add_subcommand("table", "Partial Bell or classical triangle as CSV/JSON");
    t->add_option("--kind", table.kind, "bell, stirling2, stirling1, lah")->required();
    t->add_option("--moments", table.moments, "JSON array, rule name (m, m!, 1, (m-1)!, delta) or file");
    t->add_option("--n-max", table.n_max, "Last row")->default_val(6);
    t->add_option("--format", table.format, "csv or json")->default_val("csv");
    t->add_option("--out", table.out, "Output file (default stdout)");

    FamiliesOpts fams;
    auto* f = app.add_subcommand("families", "Export builtin binomial-type families as JSON");
    f->add_option("--kind", fams.kinds, "monomial, falling, rising, touchard, abel:<a>, moments:<rule>");
    f->add_option("--a", fams.a, "Deformation parameter")->default_val("0");
    f->add_option("--n-max", fams.n_max, "Order")->default_val(6);
    f->add_option("--out", fams.out, "Output file (default stdout)");

    VerifyOpts verify;
    auto* v = app.add_subcommand("verify", "Run identity suites from a config file");
    v->add_option("--config", verify.config, "Config JSON")->required();
    v->add_option("--out", verify.out, "Report file (overrides the config's output)");
    v->add_option("--parallelism", verify.parallelism, "Worker threads per report");
    v->add_flag("--no-timing", verify.no_timing, "Write elapsed_ms as 0");

    CheckOpts check;
    auto* c = app.add_subcommand("check", "Check one cell of identity h or b");
    c->add_option("--identity", check.identity, "h or b")->required();
    c->add_option("--builder", check.builder, "Builder name");
    c->add_option("--params", check.params, "Builder parameters as a JSON object");
    c->add_option("--n", check.n, "Row")->required();
    c->add_option("--k", check.k, "Column (identity h)");
    c->add_option("--s", check.s, "s (builder parameter for h, cell for b)");
    c->add_flag("--json", check.json, "Machine readable output");
    c->add_option("--moments", check.moments, "Moment sequence");
    c->add_option("--family", check.family, "Family kind");
    c->add_option("--aux", check.aux, "Aux sequence");
    c->add_option("--reading", check.reading, "printed or derived");
    std::map<std::string, std::string> rat_flags;
    for (const char* key : {"a", "x", "y", "alpha", "beta", "lambda", "b", "c"}) {
        c->add_option(std::string("--") + key, rat_flags[key], "Rational parameter");
    }
    std::map<std::string, unsigned> nat_flags;
    for (const char* key : {"r", "u", "v", "which"}) {
        c->add_option(std::string("--") + key, nat_flags[key], "Integer parameter");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_config;
    }

    try {
        if (*t) return cmd_table(table, out);
        if (*f) return cmd_families(fams, out);
        if (*v) return cmd_verify(verify, out, err);
        for (const auto& [key, value] : rat_flags) {
            if (c->count("--" + key)) check.rationals[key] = value;
        }
        for (const auto& [key, value] : nat_flags) {
            if (c->count("--" + key)) check.naturals[key] = value;
        }
        return cmd_check(check, out);
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return exit_io;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const nlohmann::json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    }
}

int run_cli(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace bellid
