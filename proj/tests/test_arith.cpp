#include <doctest.h>

#include "ceresa/arith.hpp"
#include "ceresa/errors.hpp"
#include "oracles.hpp"

using namespace ceresa;

TEST_CASE("rational text round trip") {
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-4, 2)) == "-2");
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("10/4") == Rational(5, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational(""), InvalidArgument);
  CHECK(parse_bigint("48957501300891817233601") == BigInt("48957501300891817233601"));
  CHECK_THROWS_AS(parse_bigint("12a"), InvalidArgument);
}

TEST_CASE("mod and floor_div follow floor semantics") {
  for (std::int64_t x = -50; x <= 50; ++x)
    for (std::int64_t m = 1; m <= 9; ++m) {
      CHECK(mod(x, m) == oracle::md(x, m));
      CHECK(floor_div(x, m) * m + mod(x, m) == x);
    }
}

TEST_CASE("frac lands in [0, 1)") {
  CHECK(frac(Rational(-1, 4)) == Rational(3, 4));
  CHECK(frac(Rational(7, 3)) == Rational(1, 3));
  CHECK(frac(Rational(2)) == 0);
}

TEST_CASE("isqrt and is_square") {
  for (std::int64_t n = 0; n <= 5000; ++n) {
    const auto r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
    CHECK(is_square(n) == (r * r == n));
  }
  CHECK(isqrt(INT64_MAX) == 3037000499);
}

TEST_CASE("primality, factorization and divisors against trial division") {
  for (std::int64_t n = 1; n <= 3000; ++n) {
    CHECK(is_prime(n) == oracle::prime_naive(n));
    CHECK(divisors(n) == oracle::divisors_naive(n));
    std::int64_t prod = 1;
    for (auto [p, e] : factorize(n)) {
      CHECK(oracle::prime_naive(p));
      for (int i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
    std::int64_t phi = 0;
    for (std::int64_t k = 1; k <= n; ++k) phi += (std::gcd(k, n) == 1);
    CHECK(euler_phi(n) == phi);
  }
}

TEST_CASE("big factorization splits semiprimes beyond the trial bound") {
  const BigInt p("1000000007"), q("998244353");
  const auto f = factorize(p * q * 4);
  REQUIRE(f.complete);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0] == std::pair<BigInt, int>{2, 2});
  CHECK(f.factors[1].first == q);
  CHECK(f.factors[2].first == p);
  const auto d = divisors(f, BigInt(10));
  CHECK(d == std::vector<BigInt>{1, 2, 4});
  CHECK(is_prime(p));
  CHECK_FALSE(is_prime(BigInt(p * q)));
}

TEST_CASE("big factorization of 1 and of primes") {
  CHECK(factorize(BigInt(1)).factors.empty());
  const auto f = factorize(BigInt("170141183460469231731687303715884105727"));  // 2^127 - 1
  REQUIRE(f.factors.size() == 1);
  CHECK(f.complete);
}
