#include "bellid/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bellid;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "bellid_test_cli";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write_config(const std::string& name, const nlohmann::json& j)
{
    const auto p = scratch(name);
    std::ofstream(p) << j.dump();
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("table")
{
    const auto s2 = cli({"table", "--kind", "stirling2", "--n-max", "6"});
    CHECK(s2.code == 0);
    const auto rows = lines(s2.out);
    REQUIRE(rows.size() == 29);
    CHECK(rows[0] == "n,k,value");
    CHECK(std::find(rows.begin(), rows.end(), "4,2,7") != rows.end());

    const auto lah = lines(cli({"table", "--kind", "lah", "--n-max", "4"}).out);
    CHECK(std::find(lah.begin(), lah.end(), "4,2,36") != lah.end());

    const auto bell = cli({"table", "--kind", "bell", "--moments", "[1,1,1,1]", "--n-max", "4"});
    CHECK(bell.code == 0);
    CHECK(bell.out == cli({"table", "--kind", "stirling2", "--n-max", "4"}).out);
    // rule names work as well
    CHECK(cli({"table", "--kind", "bell", "--moments", "1", "--n-max", "4"}).out == bell.out);

    const auto js = cli({"table", "--kind", "stirling1", "--n-max", "3", "--format", "json"});
    const auto parsed = nlohmann::json::parse(js.out);
    CHECK(parsed.size() == 10);
    CHECK(parsed[8] == nlohmann::json({{"n", 3}, {"k", 2}, {"value", "3"}}));
}

TEST_CASE("table errors")
{
    CHECK(cli({"table", "--kind", "bell", "--n-max", "4"}).code == exit_config);
    CHECK(cli({"table", "--kind", "hermite"}).code == exit_config);
    CHECK(cli({"table", "--kind", "lah", "--format", "xml"}).code == exit_config);
    CHECK(cli({"table", "--kind", "bell", "--moments", "[1,\"x\"]"}).code == exit_config);
    CHECK(cli({"table", "--kind", "lah", "--out", "/nonexistent/dir/t.csv"}).code == exit_io);
    CHECK(cli({"nonsense"}).code == exit_config);
    CHECK(cli({}).code == exit_config);
}

TEST_CASE("table to a file")
{
    const auto p = scratch("lah.csv");
    CHECK(cli({"table", "--kind", "lah", "--n-max", "4", "--out", p.string()}).code == 0);
    CHECK(slurp(p) == cli({"table", "--kind", "lah", "--n-max", "4"}).out);
}

TEST_CASE("check")
{
    const auto h = cli({"check", "--identity", "h", "--builder", "prop4", "--moments", "m", "--r", "1", "--s", "1",
                        "--n", "2", "--k", "1"});
    CHECK(h.code == 0);
    CHECK(h.out.find("LHS B(2,1) = 2") != std::string::npos);
    CHECK(h.out.find("RHS Y(2,1) = 2") != std::string::npos);
    CHECK(h.out.find("Y(1,1) = 1") != std::string::npos);

    const auto b = cli({"check", "--identity", "b", "--builder", "thm2", "--family", "monomial", "--a", "0", "--x",
                        "1", "--alpha", "1", "--r", "1", "--n", "1", "--s", "1"});
    CHECK(b.code == 0);
    CHECK(b.out.find("LHS A(1) = 2") != std::string::npos);
    CHECK(b.out.find("RHS 1*Z(1,1) = 2") != std::string::npos);

    const auto js = cli({"check", "--identity", "h", "--builder", "thm1", "--params",
                         R"({"family":"touchard","a":"1/2","x":"3/2","alpha":"-1/2","r":1,"s":2})", "--n", "4",
                         "--k", "2", "--json"});
    CHECK(js.code == 0);
    const auto j = nlohmann::json::parse(js.out);
    CHECK(j["status"] == "pass");
    CHECK(j["lhs"] == j["rhs"]);
    CHECK(j["operands"].size() == 3);
    CHECK(j["bell"].size() == 4);

    // printed exponent of z1 breaks at (2,2)
    const auto bad = cli({"check", "--identity", "h", "--builder", "z1", "--moments", "m", "--b", "1", "--c", "2",
                          "--r", "1", "--s", "1", "--reading", "printed", "--n", "2", "--k", "2"});
    CHECK(bad.code == exit_counterexample);
    CHECK(bad.out.find("fail") != std::string::npos);
}

TEST_CASE("check errors")
{
    CHECK(cli({"check", "--identity", "q", "--builder", "prop4", "--n", "1", "--k", "1"}).code == exit_config);
    CHECK(cli({"check", "--identity", "h", "--builder", "nope", "--n", "1", "--k", "1"}).code == exit_config);
    // missing moments
    CHECK(cli({"check", "--identity", "h", "--builder", "prop4", "--r", "1", "--n", "2", "--k", "1"}).code ==
          exit_config);
    // k out of range
    CHECK(cli({"check", "--identity", "h", "--builder", "prop4", "--moments", "m", "--r", "1", "--n", "2", "--k",
               "3"})
              .code == exit_config);
    // r = s = 0 outside rs0
    const auto rs = cli({"check", "--identity", "h", "--builder", "thm1", "--family", "touchard", "--x", "1",
                         "--alpha", "1", "--n", "2", "--k", "1"});
    CHECK(rs.code == exit_config);
    CHECK(rs.err.find("r + s >= 1") != std::string::npos);
    // thm2 with alpha = 0
    CHECK(cli({"check", "--identity", "b", "--builder", "thm2", "--family", "monomial", "--x", "1", "--alpha", "0",
               "--r", "1", "--n", "1", "--s", "1"})
              .code == exit_config);
    CHECK(cli({"check", "--identity", "h", "--builder", "prop4", "--moments", "m", "--r", "1", "--params", "[1]",
               "--n", "1", "--k", "1"})
              .code == exit_config);
}

TEST_CASE("verify exit codes")
{
    const nlohmann::json good = {
        {"suites",
         {{{"identity", "h"}, {"builder", "prop4"}, {"n_max", 5}, {"params", {{"moments", "m"}}},
           {"tuples", {{{"keys", {"r", "s"}}, {"values", {{1, 1}, {0, 2}}}}}}},
          {{"identity", "b"}, {"builder", "prop8"}, {"n_max", 4}, {"s_max", 2}, {"grid", {{"moments", {"m", "1"}}}},
           {"params", {{"r", 1}}}}}}};
    const auto cfg = write_config("good.json", good);
    const auto out = scratch("good_out.json");
    const auto r = cli({"verify", "--config", cfg.string(), "--out", out.string()});
    CHECK(r.code == 0);
    const auto reports = nlohmann::json::parse(slurp(out));
    REQUIRE(reports.size() == 4);
    CHECK(reports[0]["params"]["builder"] == "prop4");
    CHECK(reports[0]["params"]["r"] == "1");
    CHECK(reports[1]["params"]["s"] == "2");
    CHECK(reports[2]["params"]["moments"] == "m");
    CHECK(reports[3]["range"]["s_max"] == 2);

    // thm1 with r = s = 0 is rejected before anything runs
    const nlohmann::json rs0 = {{"suites",
                                 {{{"identity", "h"},
                                   {"builder", "thm1"},
                                   {"n_max", 4},
                                   {"params", {{"family", "touchard"}, {"x", "1"}, {"alpha", "1"}, {"r", 0}, {"s", 0}}}}}}};
    const auto bad = cli({"verify", "--config", write_config("rs0.json", rs0).string()});
    CHECK(bad.code == exit_config);
    CHECK(bad.err.find("r + s >= 1") != std::string::npos);
    CHECK(bad.out.empty());

    // one overridden cell: counterexample at the first cell reading it, other reports still written
    nlohmann::json corrupt = good;
    corrupt["suites"][0]["override"] = {{{"n", 2}, {"k_or_s", 1}, {"value", "17"}}};
    const auto out2 = scratch("corrupt_out.json");
    const auto c = cli({"verify", "--config", write_config("corrupt.json", corrupt).string(), "--out", out2.string()});
    CHECK(c.code == exit_counterexample);
    const auto cr = nlohmann::json::parse(slurp(out2));
    REQUIRE(cr.size() == 4);
    CHECK(cr[0]["status"] == "fail");
    CHECK(cr[0]["counterexamples"][0] == nlohmann::json({{"n", 3}, {"k_or_s", 2}, {"lhs", "51"}, {"rhs", "6"}}));
    CHECK(cr[0]["params"]["override(2,1)"] == "17");
    CHECK(cr[1]["status"] == "fail");
    CHECK(cr[2]["status"] == "pass");

    // an expected failure is fine
    corrupt["suites"][0]["expect"] = "fail";
    corrupt["suites"][0]["tuples"] = {{{"keys", {"r", "s"}}, {"values", {{1, 1}}}}};
    const auto e = cli({"verify", "--config", write_config("expect.json", corrupt).string(), "--out",
                        scratch("expect_out.json").string()});
    CHECK(e.code == 0);
    const auto er = nlohmann::json::parse(slurp(scratch("expect_out.json")));
    CHECK(er[0]["params"]["expect"] == "fail");

    // an expected failure that passes is not
    nlohmann::json wrong = good;
    wrong["suites"][1]["expect"] = "fail";
    CHECK(cli({"verify", "--config", write_config("wrong.json", wrong).string(), "--out",
               scratch("wrong_out.json").string()})
              .code == exit_counterexample);
}

TEST_CASE("verify config errors")
{
    CHECK(cli({"verify", "--config", scratch("missing.json").string() + ".nope"}).code == exit_io);
    const auto broken = scratch("broken.json");
    std::ofstream(broken) << "{\"suites\": [";
    CHECK(cli({"verify", "--config", broken.string()}).code == exit_config);
    const auto unknown = write_config("unknown.json", {{"suites", {{{"identity", "zz"}, {"n_max", 3}}}}});
    CHECK(cli({"verify", "--config", unknown.string()}).code == exit_config);
    const auto nosuites = write_config("nosuites.json", nlohmann::json::object());
    CHECK(cli({"verify", "--config", nosuites.string()}).code == exit_config);
    const auto badrat = write_config(
        "badrat.json",
        {{"suites", {{{"identity", "h"}, {"builder", "z2"}, {"n_max", 3}, {"params", {{"moments", "m"}, {"x", "1/0"}, {"r", 1}}}}}}});
    CHECK(cli({"verify", "--config", badrat.string()}).code == exit_config);
    const auto badtuple = write_config(
        "badtuple.json", {{"suites",
                           {{{"identity", "h"},
                             {"builder", "prop4"},
                             {"n_max", 3},
                             {"params", {{"moments", "m"}}},
                             {"tuples", {{{"keys", {"r", "s"}}, {"values", {{1, 1, 1}}}}}}}}}});
    CHECK(cli({"verify", "--config", badtuple.string()}).code == exit_config);
    // too few explicit moments for the range
    const auto shortx = write_config(
        "short.json",
        {{"suites", {{{"identity", "h"}, {"builder", "prop4"}, {"n_max", 5}, {"params", {{"moments", {1, 2}}, {"r", 1}}}}}}});
    CHECK(cli({"verify", "--config", shortx.string()}).code == exit_config);
}

TEST_CASE("verify is deterministic across parallelism")
{
    const nlohmann::json cfg = {
        {"suites",
         {{{"identity", "h"},
           {"builder", "thm1"},
           {"n_max", 6},
           {"params", {{"family", "touchard"}, {"a", "1/2"}, {"x", "3/2"}, {"alpha", "-1/2"}}},
           {"tuples", {{{"keys", {"r", "s"}}, {"values", {{1, 1}, {2, 0}}}}}},
           {"override", {{{"n", 3}, {"k_or_s", 1}, {"value", "0"}}}}}}}};
    const auto path = write_config("det.json", cfg);
    const auto a = scratch("det_a.json"), b = scratch("det_b.json");
    CHECK(cli({"verify", "--config", path.string(), "--out", a.string(), "--no-timing"}).code == 1);
    CHECK(cli({"verify", "--config", path.string(), "--out", b.string(), "--no-timing", "--parallelism", "4"}).code ==
          1);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("families")
{
    const auto r = cli({"families", "--kind", "touchard", "--kind", "abel:1", "--n-max", "3", "--a", "1/2"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["kind"] == "touchard");
    CHECK(j[0]["a"] == "1/2");
    CHECK(j[0]["polys"].size() == 4);
    CHECK(j[0]["polys"][0] == nlohmann::json({"1"}));
    const auto all = nlohmann::json::parse(cli({"families"}).out);
    CHECK(all.size() == 5);
    CHECK(cli({"families", "--kind", "hermite"}).code == exit_config);
}

TEST_CASE("bundled default config")
{
    const auto out = scratch("default_out.json");
    const auto r = cli({"verify", "--config", BELLID_DEFAULT_CONFIG, "--out", out.string()});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j.size() > 1000);
}
