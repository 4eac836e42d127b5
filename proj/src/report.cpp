#include "bellid/report.hpp"

namespace bellid {

std::string_view to_string(Status status) noexcept
{
    switch (status) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
    }
    return "error";
}

void IdentityReport::settle()
{
    if (status == Status::Error) return;
    status = counterexamples.empty() ? Status::Pass : Status::Fail;
}

nlohmann::ordered_json to_json(const ParamList& params)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) {
        out[k] = v;
    }
    return out;
}

nlohmann::ordered_json to_json(const IdentityReport& report)
{
    nlohmann::ordered_json out;
    out["identity"] = report.identity;
    out["params"] = to_json(report.params);
    out["range"] = {{"n_max", report.n_max}, {"s_max", nullptr}};
    if (report.s_max) out["range"]["s_max"] = *report.s_max;
    out["status"] = std::string(to_string(report.status));
    auto cex = nlohmann::ordered_json::array();
    for (const auto& c : report.counterexamples) {
        cex.push_back({{"n", c.n}, {"k_or_s", c.k_or_s}, {"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}});
    }
    out["counterexamples"] = std::move(cex);
    out["elapsed_ms"] = report.elapsed_ms;
    if (report.status == Status::Error) out["error"] = report.error;
    return out;
}

std::string summary_line(const IdentityReport& report)
{
    std::string line = report.identity;
    for (const auto& [key, value] : report.params) {
        if (key == "builder") line += "[" + value + "]";
    }
    line += " " + std::string(to_string(report.status)) + " n<=" + std::to_string(report.n_max);
    if (report.s_max) line += " s<=" + std::to_string(*report.s_max);
    if (!report.counterexamples.empty()) {
        const auto& c = report.counterexamples.front();
        line += " first@(" + std::to_string(c.n) + "," + std::to_string(c.k_or_s) + ") " + to_string(c.lhs) +
                " != " + to_string(c.rhs) + " [" + std::to_string(report.counterexamples.size()) + " total]";
    }
    if (report.status == Status::Error) line += " " + report.error;
    return line;
}

} // namespace bellid
