#pragma once

#include "bellid/builders.hpp"
#include "bellid/family.hpp"
#include "bellid/report.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace bellid {

// Closed identities of the form B_{n,k}(w_1, w_2, ...) = RHS(n,k), plus
// cross-checks between builders. Every function returns ordinary reports.

enum class S1Identity {
    P2,        // derivative-weighted, derived argument list
    P2Printed, // same, argument list as printed (known to fail at n = k = 1)
    P3,
    P4,
};

std::string_view to_string(S1Identity which) noexcept;

struct S1Point {
    Rational x, y, alpha, beta, lambda;
};

/// fam must be deformed already and hold f_0..f_N.
IdentityReport check_s1(S1Identity which, const BinomialFamily& fam, const S1Point& pt, std::size_t n_max);
/// All four, in enum order.
std::vector<IdentityReport> check_s1_identities(const BinomialFamily& fam, const S1Point& pt, std::size_t n_max);

/// A_n(x,y,z) = sum_j C(n,j) a_j ((x+y)j + x+y+z)(xj + yn + x+y+z)^{n-1-j},
/// the j = n term weighted by 1. a holds a_0..a_M, zero beyond.
Rational appell_value(const std::vector<Rational>& a, std::size_t n, const Rational& x, const Rational& y,
                      const Rational& z);

/// Two reports: "appell" at (x, y, z) and "appell-plain" at (0, 0, z), where
/// A_n reduces to the ordinary Appell polynomial sum_j C(n,j) a_j z^{n-j}.
std::vector<IdentityReport> appell_check(const std::vector<Rational>& a, const Rational& x, const Rational& y,
                                         const Rational& z, std::size_t n_max);

/// det(A_n + x I_n) for n = 0..n_max, A_n upper Hessenberg with
/// a_ij = phi_{j-i+1} (j >= i) and a_{i,i-1} = i-1, by last-row expansion.
/// Error(InsufficientPrefix) when phi has fewer than n_max entries.
std::vector<Rational> hessenberg_dets(const std::vector<Rational>& phi, const Rational& x, std::size_t n_max);

IdentityReport hessenberg_check(const std::vector<Rational>& phi, const Rational& x, std::size_t n_max);

/// Generalized builders with aux = (1) against the plain ones at x' = beta +
/// lambda: Y3 = x^T Y1 and Z4 = x^{nr} Z2. Only meaningful for u + v = 1;
/// anything else is Error(InvalidParameter). The aux field of src is ignored.
IdentityReport collapse_check(const ysource::Thm3& src, unsigned r, unsigned s, std::size_t n_max);
IdentityReport collapse_check(const ysource::Thm3Alpha0& src, unsigned r, unsigned s, std::size_t n_max);
IdentityReport collapse_check(const zsource::Thm4& src, unsigned r, std::size_t n_max, std::size_t s_max);
IdentityReport collapse_check(const zsource::Thm4Alpha0& src, unsigned r, std::size_t n_max, std::size_t s_max);

/// z1 at b = (r+1)x, c = x against z2 at x.
IdentityReport specialization_z1_z2(const MomentSequence& moments, const Rational& x, unsigned r, unsigned s,
                                    std::size_t n_max);
/// z3 against z4 at x. Printed: b = (r+1)x, c = x. Derived: b = x, c = (r+1)x.
IdentityReport specialization_z3_z4(const MomentSequence& moments, const Rational& x, unsigned r, Reading reading,
                                    std::size_t n_max, std::size_t s_max);

} // namespace bellid
