#include <doctest.h>

#include "ceresa/errors.hpp"
#include "ceresa/representation.hpp"
#include "oracles.hpp"

using namespace ceresa;

TEST_CASE("a_P examples") {
  CHECK(a_P(1, 0, 0) == 1);
  CHECK(a_P(1, 1, 0) == 2);
  CHECK(a_P(1, Rational(1, 4), 1) == 2);
  CHECK(a_P(5, 3, 0) == 0);
}

TEST_CASE("a_P input validation") {
  CHECK_THROWS_AS(a_P(1, -1, 0), InvalidArgument);
  CHECK_THROWS_AS(a_P(2, Rational(1, 3), 0), InvalidArgument);
  CHECK_THROWS_AS(norm_numerator(3, Rational(1, 5)), InvalidArgument);
  CHECK(norm_numerator(3, Rational(1, 4)) == 3);
}

TEST_CASE("rep_count_p against a window scan, symmetry and support") {
  for (std::int64_t N = 1; N <= 20; ++N) {
    int bad = 0;
    for (std::int64_t n = 0; n <= 10000; ++n)
      for (std::int64_t r2 = 0; r2 < 2 * N; ++r2) {
        const int c = rep_count_p(N, n, r2);
        if (n <= 1600 && c != oracle::rep_count_scan(N, n, r2)) ++bad;
        if (c != rep_count_p(N, n, 2 * N - r2)) ++bad;
        if (c > 0 && mod(n - r2 * r2, 4 * N) != 0) ++bad;
        if (c == 2 && r2 != 0 && r2 != N) ++bad;  // +s and -s agree mod 2N only there
        if (c > 2) ++bad;
      }
    INFO("N = " << N);
    CHECK(bad == 0);
  }
}
