#include "bellid/verify.hpp"

#include "bellid/bell.hpp"
#include "bellid/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>
#include <vector>

namespace bellid {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

struct Cell {
    std::size_t n = 0;
    std::size_t j = 0;
    Rational lhs;
    Rational rhs;
    std::string error;
};

// Fills cells[i] via eval(i) on up to `threads` workers. Work is handed out
// by an atomic counter; results land at fixed indices so order never depends
// on scheduling.
void run_cells(std::vector<Cell>& cells, unsigned threads, const std::function<void(Cell&)>& eval)
{
    auto guarded = [&](Cell& c) {
        try {
            eval(c);
        } catch (const std::exception& e) {
            c.error = e.what();
        }
    };
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
    if (workers == 1) {
        for (auto& c : cells) guarded(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < cells.size(); i = next++) {
                guarded(cells[i]);
            }
        });
    }
}

void collect(IdentityReport& report, const std::vector<Cell>& cells)
{
    for (const auto& c : cells) {
        if (!c.error.empty()) {
            report.status = Status::Error;
            report.error = "at (" + std::to_string(c.n) + "," + std::to_string(c.j) + "): " + c.error;
            report.counterexamples.clear();
            return;
        }
        if (c.lhs != c.rhs) {
            report.counterexamples.push_back({c.n, c.j, c.lhs, c.rhs});
        }
    }
    report.settle();
}

void fail_with(IdentityReport& report, const std::exception& e)
{
    report.status = Status::Error;
    report.error = e.what();
    report.counterexamples.clear();
}

} // namespace

IdentityReport verify_h(const YBuilder& y, std::size_t n_max, unsigned threads)
{
    const auto t0 = Clock::now();
    IdentityReport report;
    report.identity = "h";
    report.params = y.params();
    report.n_max = n_max;
    try {
        // first column doubles as the moment sequence of the left side
        std::vector<Cell> column(n_max);
        for (std::size_t m = 0; m < n_max; ++m) column[m].n = m + 1;
        run_cells(column, threads, [&](Cell& c) { c.rhs = y(c.n, 1); });
        std::vector<Rational> first;
        for (const auto& c : column) {
            if (!c.error.empty()) throw Error(ErrorKind::InvalidParameter, "Y(" + std::to_string(c.n) + ",1): " + c.error);
            first.push_back(c.rhs);
        }
        BellTriangle lhs_tri{MomentSequence(first)};

        std::vector<Cell> cells;
        for (std::size_t n = 1; n <= n_max; ++n) {
            for (std::size_t k = 1; k <= n; ++k) cells.push_back({n, k, {}, {}, {}});
        }
        run_cells(cells, threads, [&](Cell& c) {
            c.lhs = lhs_tri.cell(c.n, c.j);
            c.rhs = c.j == 1 ? first[c.n - 1] : y(c.n, c.j);
        });
        collect(report, cells);
    } catch (const std::exception& e) {
        fail_with(report, e);
    }
    report.elapsed_ms = ms_since(t0);
    return report;
}

IdentityReport verify_b(const ZBuilder& z, std::size_t n_max, std::size_t s_max, unsigned threads)
{
    const auto t0 = Clock::now();
    IdentityReport report;
    report.identity = "b";
    report.params = z.params();
    report.n_max = n_max;
    report.s_max = s_max;
    try {
        std::vector<Cell> column(n_max);
        for (std::size_t m = 0; m < n_max; ++m) column[m].n = m + 1;
        run_cells(column, threads, [&](Cell& c) { c.rhs = z(c.n, 0); });
        std::vector<Rational> zero_col;
        for (const auto& c : column) {
            if (!c.error.empty()) throw Error(ErrorKind::InvalidParameter, "Z(" + std::to_string(c.n) + ",0): " + c.error);
            zero_col.push_back(c.rhs);
        }

        std::vector<Cell> cells;
        for (std::size_t n = 1; n <= n_max; ++n) {
            for (std::size_t s = 1; s <= s_max; ++s) cells.push_back({n, s, {}, {}, {}});
        }
        std::vector<MomentSequence> scaled;
        for (std::size_t s = 0; s <= s_max; ++s) {
            scaled.push_back(MomentSequence(zero_col).scaled(Rational(s)));
        }
        run_cells(cells, threads, [&](Cell& c) {
            c.lhs = bell_complete(scaled[c.j], c.n);
            c.rhs = Rational(c.j) * z(c.n, c.j);
        });
        // report order is (n, s) with the trivial s = 0 rows left out
        collect(report, cells);
    } catch (const std::exception& e) {
        fail_with(report, e);
    }
    report.elapsed_ms = ms_since(t0);
    return report;
}

IdentityReport compare_cells(std::string identity, ParamList params, std::size_t n_max,
                             std::optional<std::size_t> s_max, const CellFn& lhs, const CellFn& rhs, unsigned threads)
{
    const auto t0 = Clock::now();
    IdentityReport report;
    report.identity = std::move(identity);
    report.params = std::move(params);
    report.n_max = n_max;
    report.s_max = s_max;
    try {
        std::vector<Cell> cells;
        for (std::size_t n = 1; n <= n_max; ++n) {
            if (s_max) {
                for (std::size_t s = 0; s <= *s_max; ++s) cells.push_back({n, s, {}, {}, {}});
            } else {
                for (std::size_t k = 1; k <= n; ++k) cells.push_back({n, k, {}, {}, {}});
            }
        }
        run_cells(cells, threads, [&](Cell& c) {
            c.lhs = lhs(c.n, c.j);
            c.rhs = rhs(c.n, c.j);
        });
        collect(report, cells);
    } catch (const std::exception& e) {
        fail_with(report, e);
    }
    report.elapsed_ms = ms_since(t0);
    return report;
}

} // namespace bellid
