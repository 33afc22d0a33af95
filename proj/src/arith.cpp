#include "ceresa/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "ceresa/errors.hpp"

namespace ceresa {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

BigInt integer_from_text(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  if (!is_integer_text(text))
    throw InvalidArgument("not an integer: '" + std::string(text) + "'");
  return integer_from_text(text);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-')
    throw InvalidArgument("not a rational number: '" + std::string(text) + "'");
  BigInt d = integer_from_text(den);
  if (d == 0) throw InvalidArgument("zero denominator: '" + std::string(text) + "'");
  Rational q(integer_from_text(num), d);
  q.canonicalize();
  return q;
}

Rational frac(const Rational& q) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw InvalidArgument("isqrt of negative number");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<__int128>(r) * r > n) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::int64_t n) {
  if (n < 0) return false;
  const auto r = isqrt(n);
  return r * r == n;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    if (n % p == 0) return n == p;
  }
  for (std::int64_t d = 17; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw InvalidArgument("factorize expects n >= 1");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> ds{1};
  for (auto [p, e] : factorize(n)) {
    const auto prev = ds.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < prev; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

namespace {

// Pollard-Brent; returns a nontrivial factor or 0 on failure.
BigInt rho(const BigInt& n, std::uint64_t max_iter, unsigned long seed) {
  BigInt y = seed, c = seed + 1, m = 128, g = 1, r = 1, q = 1, x, ys;
  std::uint64_t iters = 0;
  auto f = [&](const BigInt& v) {
    BigInt t = v * v + c;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return t;
  };
  while (g == 1) {
    x = y;
    for (BigInt i = 0; i < r; ++i) y = f(y);
    BigInt k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (BigInt i = 0; i < m && i < r - k; ++i) {
        y = f(y);
        BigInt d = x - y;
        q = q * abs(d);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      iters += m.get_ui();
      if (iters > max_iter) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      BigInt d = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? BigInt(0) : g;
}

void split(const BigInt& n, std::uint64_t rho_iterations, std::vector<BigInt>& primes,
           BigFactorization& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  for (unsigned long seed = 2; seed < 8; ++seed) {
    BigInt d = rho(n, rho_iterations, seed);
    if (d != 0) {
      split(d, rho_iterations, primes, out);
      split(n / d, rho_iterations, primes, out);
      return;
    }
  }
  out.complete = false;
  out.unfactored *= n;
}

}  // namespace

BigFactorization factorize(const BigInt& n_in, std::uint64_t trial_bound,
                           std::uint64_t rho_iterations) {
  if (n_in < 1) throw InvalidArgument("factorize expects n >= 1");
  BigFactorization out;
  BigInt n = n_in;
  std::vector<BigInt> primes;
  for (std::uint64_t p = 2; p <= trial_bound && BigInt(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  split(n, rho_iterations, primes, out);
  std::sort(primes.begin(), primes.end());
  for (const auto& p : primes) {
    if (!out.factors.empty() && out.factors.back().first == p)
      ++out.factors.back().second;
    else
      out.factors.emplace_back(p, 1);
  }
  return out;
}

std::vector<BigInt> divisors(const BigFactorization& f, const BigInt& limit) {
  if (!f.complete) throw InvalidArgument("divisors of an incompletely factored integer");
  std::vector<BigInt> ds{1};
  for (const auto& [p, e] : f.factors) {
    const auto prev = ds.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < prev; ++i) {
        BigInt d = ds[i] * pk;
        if (d <= limit) ds.push_back(d);
      }
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

}  // namespace ceresa
