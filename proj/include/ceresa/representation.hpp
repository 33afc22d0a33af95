#pragma once

#include <cstdint>

#include "ceresa/arith.hpp"

namespace ceresa {

/// a_P(m+, mu+) = #{x in mu+ + P : Q(x) = m+} for the rank-one lattice
/// P = Z I_2, Q(a I) = N a^2, mu+ = (r2/2N) I_2. The norm is passed as its
/// numerator n over 4N (m+ = n/4N), so the count is
/// #{k in Z : (r2 + 2Nk)^2 = n}, always 0, 1 or 2.
int rep_count_p(std::int64_t N, std::int64_t n, std::int64_t r2);

/// Same count with m+ given as an exact rational. Throws InvalidArgument if
/// m+ < 0 or its denominator does not divide 4N.
int a_P(std::int64_t N, const Rational& m_plus, std::int64_t r2);

/// Numerator n of m = n/4N; throws InvalidArgument if 4N*m is not integral.
std::int64_t norm_numerator(std::int64_t N, const Rational& m);

}  // namespace ceresa
