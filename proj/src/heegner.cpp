#include "ceresa/heegner.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ceresa/errors.hpp"
#include "ceresa/representation.hpp"

namespace ceresa {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ResourceLimit("integer overflow in form arithmetic");
  return static_cast<std::int64_t>(v);
}

// u*a + v*b = g
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& v) {
  std::int64_t u0 = 1, v0 = 0, u1 = 0, v1 = 1;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(u0, u1) = std::make_pair(u1, u0 - q * u1);
    std::tie(v0, v1) = std::make_pair(v1, v0 - q * v1);
  }
  if (a < 0) a = -a, u0 = -u0, v0 = -v0;
  u = u0;
  v = v0;
  return a;
}

struct SL2 {
  std::int64_t a, b, c, d;
};

// Lift a point of P^1(Z/N), read as a first column, to SL2(Z).
SL2 lift_column(std::int64_t x, std::int64_t y, std::int64_t N) {
  std::int64_t gamma = (y == 0) ? N : y;
  std::int64_t alpha = x;
  while (std::gcd(alpha, gamma) != 1) alpha += N;
  std::int64_t u, v;
  ext_gcd(alpha, gamma, u, v);  // u alpha + v gamma = 1
  return {alpha, -v, gamma, u};
}

// Q |-> Q o g, (x, y)^T -> g (x, y)^T.
BQForm act(const BQForm& q, const SL2& g) {
  auto val = [&](i128 x, i128 y) { return i128(q.a) * x * x + i128(q.b) * x * y + i128(q.c) * y * y; };
  const i128 B = 2 * i128(q.a) * g.a * g.b + i128(q.b) * (i128(g.a) * g.d + i128(g.b) * g.c) +
                 2 * i128(q.c) * g.c * g.d;
  return {narrow(val(g.a, g.c)), narrow(B), narrow(val(g.b, g.d))};
}

// Generator of Aut(f)/{+-1} for a reduced form with extra automorphisms.
std::optional<SL2> automorphism_generator(const BQForm& f) {
  if (f.b == 0 && f.a == f.c) return SL2{0, -1, 1, 0};
  if (f.a == f.b && f.b == f.c) return SL2{0, -1, 1, 1};
  return std::nullopt;
}

std::pair<std::int64_t, std::int64_t> canonical_point(std::int64_t x, std::int64_t y,
                                                      std::int64_t N) {
  std::pair<std::int64_t, std::int64_t> best{mod(x, N), mod(y, N)};
  for (std::int64_t u = 1; u < N; ++u) {
    if (std::gcd(u, N) != 1) continue;
    std::pair<std::int64_t, std::int64_t> p{mod(u * x, N), mod(u * y, N)};
    best = std::min(best, p);
  }
  return best;
}

}  // namespace

std::int64_t BQForm::content() const {
  return std::gcd(std::gcd(a, b), c);
}

bool BQForm::is_reduced() const {
  if (a <= 0 || discriminant() >= 0) return false;
  if (std::abs(b) > a || a > c) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

BQForm reduce(BQForm f) {
  if (f.a <= 0 || f.discriminant() >= 0)
    throw InvalidArgument("reduce expects a positive definite form");
  for (;;) {
    if (f.c < f.a) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    if (f.b > f.a || f.b <= -f.a) {
      // translate x -> x + k y so that b lands in (-a, a]
      const std::int64_t k = floor_div(f.a - f.b, 2 * f.a);
      const i128 nb = i128(f.b) + i128(2 * f.a) * k;
      const i128 nc = i128(f.a) * k * k + i128(f.b) * k + f.c;
      f = {f.a, narrow(nb), narrow(nc)};
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

std::vector<BQForm> reduced_forms(std::int64_t D, bool primitive_only) {
  if (D >= 0) throw InvalidArgument("reduced_forms expects D < 0");
  std::vector<BQForm> out;
  const std::int64_t n = -D;
  if (mod(D, 4) != 0 && mod(D, 4) != 1) return out;
  for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
    for (std::int64_t b = -a; b <= a; ++b) {
      if (mod(b - n, 2) != 0) continue;
      const std::int64_t num = b * b + n;
      if (num % (4 * a) != 0) continue;
      const BQForm f{a, b, num / (4 * a)};
      if (!f.is_reduced()) continue;
      if (primitive_only && f.content() != 1) continue;
      out.push_back(f);
    }
  }
  return out;
}

int automorphism_order(const BQForm& f) {
  if (f.b == 0 && f.a == f.c) return 2;
  if (f.a == f.b && f.b == f.c) return 3;
  return 1;
}

Rational hurwitz_class_number(std::int64_t n) {
  if (n <= 0) throw InvalidArgument("hurwitz_class_number expects n > 0");
  Rational h = 0;
  for (const auto& f : reduced_forms(-n)) h += Rational(1, automorphism_order(f));
  h.canonicalize();
  return h;
}

std::int64_t class_number(std::int64_t D) {
  return static_cast<std::int64_t>(reduced_forms(D, true).size());
}

HeegnerIndex make_heegner_index(std::int64_t N, std::int64_t D, std::int64_t r) {
  if (N < 1) throw InvalidArgument("level N must be >= 1");
  if (D >= 0) throw InvalidArgument("Heegner discriminant must be negative");
  if (mod(D, 4) != 0 && mod(D, 4) != 1)
    throw InvalidArgument("D = " + std::to_string(D) + " is not a discriminant");
  r = mod(r, 2 * N);
  if (mod(r * r - D, 4 * N) != 0)
    throw InvalidArgument("r^2 != D (mod 4N) for r = " + std::to_string(r));
  return {N, D, r};
}

std::vector<std::int64_t> heegner_r_values(std::int64_t N, std::int64_t D) {
  if (N < 1) throw InvalidArgument("level N must be >= 1");
  std::vector<std::int64_t> out;
  for (std::int64_t r = 0; r < 2 * N; ++r)
    if (mod(r * r - D, 4 * N) == 0) out.push_back(r);
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> projective_line(std::int64_t N) {
  if (N < 1) throw InvalidArgument("level N must be >= 1");
  if (N == 1) return {{0, 0}};
  std::vector<char> seen(static_cast<std::size_t>(N * N), 0);
  std::vector<std::int64_t> units;
  for (std::int64_t u = 1; u < N; ++u)
    if (std::gcd(u, N) == 1) units.push_back(u);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t x = 0; x < N; ++x)
    for (std::int64_t y = 0; y < N; ++y) {
      if (seen[x * N + y] || std::gcd(std::gcd(x, y), N) != 1) continue;
      // first unseen element of an orbit is its lexicographic minimum
      out.emplace_back(x, y);
      for (auto u : units) seen[mod(u * x, N) * N + mod(u * y, N)] = 1;
    }
  return out;
}

HeegnerDivisor enumerate_heegner_divisor(const HeegnerIndex& idx_in) {
  const HeegnerIndex idx = make_heegner_index(idx_in.N, idx_in.D, idx_in.r);
  const std::int64_t N = idx.N;
  HeegnerDivisor out{idx, {}, 0};
  const auto line = projective_line(N);

  for (const auto& q0 : reduced_forms(idx.D)) {
    const auto gen = automorphism_generator(q0);
    const int stab = automorphism_order(q0);
    // cosets g Gamma_0(N) <-> first columns in P^1(Z/N)
    std::vector<std::pair<std::int64_t, std::int64_t>> hits;
    for (const auto& [x, y] : line) {
      const BQForm q = act(q0, lift_column(x, y, N));
      if (mod(q.a, N) == 0 && mod(q.b - idx.r, 2 * N) == 0) hits.emplace_back(x, y);
    }
    // Aut(q0) acts on the left; each orbit is one Gamma_0(N)-class.
    std::vector<char> done(hits.size(), 0);
    for (std::size_t i = 0; i < hits.size(); ++i) {
      if (done[i]) continue;
      std::size_t orbit = 0;
      auto pt = hits[i];
      do {
        auto it = std::find(hits.begin(), hits.end(), pt);
        if (it == hits.end()) throw Error("Heegner enumeration: orbit left the form set");
        const auto j = static_cast<std::size_t>(it - hits.begin());
        if (!done[j]) {
          done[j] = 1;
          ++orbit;
        }
        if (!gen) break;
        pt = canonical_point(gen->a * pt.first + gen->b * pt.second,
                             gen->c * pt.first + gen->d * pt.second, N);
      } while (pt != hits[i]);
      BQForm rep = act(q0, lift_column(hits[i].first, hits[i].second, N));
      // translate by T^k in Gamma_0(N): b -> b + 2ak, b stays = r mod 2N
      rep = act(rep, SL2{1, floor_div(rep.a - rep.b, 2 * rep.a), 0, 1});
      const Rational weight(static_cast<long>(orbit), stab);
      out.classes.push_back({rep, weight});
      out.degree += weight;
    }
  }
  out.degree.canonicalize();
  for (auto& c : out.classes) c.weight.canonicalize();
  return out;
}

std::optional<HeegnerIndex> special_divisor_index(std::int64_t N, const Rational& m0,
                                                  std::int64_t r1) {
  if (N < 1) throw InvalidArgument("level N must be >= 1");
  if (m0 <= 0) throw CongruenceError("special divisor needs m0 > 0, got " + to_string(m0));
  Rational scaled = Rational(4 * N) * m0;
  scaled.canonicalize();
  if (scaled.get_den() != 1 || !scaled.get_num().fits_slong_p())
    throw CongruenceError("m0 = " + to_string(m0) + " is not congruent to -r1^2/4N mod 1");
  const std::int64_t n = scaled.get_num().get_si();
  if (mod(n + r1 * r1, 4 * N) != 0)
    throw CongruenceError("m0 = " + to_string(m0) + " is not congruent to -r1^2/4N mod 1 (r1 = " +
                          std::to_string(r1) + ")");
  const std::int64_t D = -n;
  if (mod(D, 4) != 0 && mod(D, 4) != 1) return std::nullopt;
  if (mod(r1 * r1 - D, 4 * N) != 0) return std::nullopt;
  return HeegnerIndex{N, D, mod(r1, 2 * N)};
}

}  // namespace ceresa
