#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ceresa {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Canonical text form: "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

/// Accepts "p", "-p", "p/q". Throws InvalidArgument on anything else or q = 0.
Rational parse_rational(std::string_view text);
BigInt parse_bigint(std::string_view text);

/// x mod m in [0, m) for m > 0.
constexpr std::int64_t mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

/// floor(x / m) for m > 0.
constexpr std::int64_t floor_div(std::int64_t x, std::int64_t m) {
  return (x - mod(x, m)) / m;
}

/// Fractional part in [0, 1).
Rational frac(const Rational& q);

/// floor(sqrt(n)) for n >= 0.
std::int64_t isqrt(std::int64_t n);
bool is_square(std::int64_t n);

bool is_prime(std::int64_t n);
bool is_prime(const BigInt& n);

/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// Ascending list of positive divisors.
std::vector<std::int64_t> divisors(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

/// Result of a best-effort factorization of a big integer. `complete` is
/// false when a composite cofactor could not be split within the work
/// budget; it is then reported in `unfactored`.
struct BigFactorization {
  std::vector<std::pair<BigInt, int>> factors;  // ascending, prime
  BigInt unfactored = 1;
  bool complete = true;
};

/// Trial division up to `trial_bound`, then Pollard-Brent rho with an
/// iteration cap per cofactor.
BigFactorization factorize(const BigInt& n, std::uint64_t trial_bound = 100000,
                           std::uint64_t rho_iterations = 2000000);

/// Ascending divisors of a completely factored integer, stopping once a
/// divisor exceeds `limit`.
std::vector<BigInt> divisors(const BigFactorization& f, const BigInt& limit);

}  // namespace ceresa
