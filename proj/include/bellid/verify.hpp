#pragma once

#include "bellid/builders.hpp"
#include "bellid/report.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

namespace bellid {

/// Checks B_{n,k}(Y(1,1), Y(2,1), ...) = Y(n,k) for 1 <= k <= n <= n_max.
/// Cells may be evaluated on `threads` workers; the report is ordered by
/// (n, k) either way. Builder errors turn into status "error".
IdentityReport verify_h(const YBuilder& y, std::size_t n_max, unsigned threads = 1);

/// Checks A_n(sZ(1,0), ..., sZ(n,0)) = sZ(n,s) for 1 <= n <= n_max and
/// 0 <= s <= s_max. The s = 0 row is 0 = 0 and is not evaluated.
IdentityReport verify_b(const ZBuilder& z, std::size_t n_max, std::size_t s_max, unsigned threads = 1);

using CellFn = std::function<Rational(std::size_t, std::size_t)>;

/// lhs(n, j) == rhs(n, j) on the triangle 1 <= j <= n <= n_max, or on the
/// rectangle 0 <= j <= s_max when s_max is given.
IdentityReport compare_cells(std::string identity, ParamList params, std::size_t n_max,
                             std::optional<std::size_t> s_max, const CellFn& lhs, const CellFn& rhs,
                             unsigned threads = 1);

} // namespace bellid
