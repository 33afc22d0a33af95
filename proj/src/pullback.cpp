#include "ceresa/pullback.hpp"

#include <functional>
#include <string>

#include "ceresa/errors.hpp"
#include "ceresa/heegner.hpp"
#include "ceresa/modular_geometry.hpp"
#include "ceresa/representation.hpp"

namespace ceresa {

HeegnerKey make_heegner_key(std::int64_t N, std::int64_t n, std::int64_t r1) {
  if (N < 1) throw InvalidArgument("level N must be >= 1");
  if (n <= 0) throw CongruenceError("Heegner key needs m0 > 0");
  if (mod(n + r1 * r1, 4 * N) != 0)
    throw CongruenceError("m0 = " + to_string(Rational(n, 4 * N)) +
                          " is not congruent to -r1^2/4N mod 1 for r1 = " + std::to_string(r1));
  const std::int64_t r = mod(r1, 2 * N);
  return {n, std::min(r, mod(-r, 2 * N))};
}

HeegnerKey make_heegner_key(std::int64_t N, const Rational& m0, std::int64_t r1) {
  if (m0 <= 0) throw CongruenceError("Heegner key needs m0 > 0");
  Rational scaled = Rational(4 * N) * m0;
  scaled.canonicalize();
  if (scaled.get_den() != 1 || !scaled.get_num().fits_slong_p())
    throw CongruenceError("m0 = " + to_string(m0) + " is not congruent to -r1^2/4N mod 1");
  return make_heegner_key(N, scaled.get_num().get_si(), r1);
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  if (o.N != N) throw InvalidArgument("adding divisor classes on different curves");
  for (const auto& [k, v] : o.heeg) heeg[k] += v;
  omega += o.omega;
  cusp += o.cusp;
  cusp_ambiguous = cusp_ambiguous || o.cusp_ambiguous;
  normalize();
  return *this;
}

DivisorClass& DivisorClass::operator*=(const Rational& s) {
  for (auto& [k, v] : heeg) v *= s;
  omega *= s;
  cusp *= s;
  normalize();
  return *this;
}

void DivisorClass::normalize() {
  std::erase_if(heeg, [](const auto& kv) { return kv.second == 0; });
  for (auto& [k, v] : heeg) v.canonicalize();
  omega.canonicalize();
  cusp.canonicalize();
}

bool DivisorClass::heeg_equal(const DivisorClass& o) const {
  DivisorClass a = *this, b = o;
  a.normalize();
  b.normalize();
  return a.N == b.N && a.heeg == b.heeg;
}

DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }

bool AmbientGenerator::operator<(const AmbientGenerator& o) const {
  return std::tuple(n, mu.r1(), mu.r2()) < std::tuple(o.n, o.mu.r1(), o.mu.r2());
}

AmbientGenerator make_generator(std::int64_t N, const Rational& m, const DiscElement& mu) {
  if (mu.N() != N) throw InvalidArgument("generator coset has the wrong level");
  if (m < 0) throw CongruenceError("generator norm must be >= 0");
  Rational scaled = Rational(4 * N) * m;
  scaled.canonicalize();
  if (scaled.get_den() != 1 || !scaled.get_num().fits_slong_p())
    throw CongruenceError("m = " + to_string(m) + " is not congruent to Q(mu) mod 1");
  const std::int64_t n = scaled.get_num().get_si();
  if (mod(n - q_numerator(mu), 4 * N) != 0)
    throw CongruenceError("m = " + to_string(m) + " is not congruent to Q(mu) = " +
                          to_string(q_mod1(mu, Side::Full)) + " mod 1");
  return {n, mu};
}

DivisorClass pullback(std::int64_t N, const AmbientGenerator& g) {
  if (g.mu.N() != N) throw InvalidArgument("generator coset has the wrong level");
  if (g.n < 0 || mod(g.n - q_numerator(g.mu), 4 * N) != 0)
    throw CongruenceError("generator violates m = Q(mu) mod 1");
  DivisorClass out;
  out.N = N;
  if (g.n == 0) {
    if (g.mu.is_zero()) out.omega = -2;
    return out;
  }
  out.cusp_ambiguous = true;
  const std::int64_t M = 2 * N;
  const std::int64_t r2 = g.mu.r2();
  // m+ = s^2 / 4N with s = |r2 + 2Nk|; each admissible s contributes once
  for (std::int64_t s = 0; s * s <= g.n; ++s) {
    if (mod(s - r2, M) != 0 && mod(-s - r2, M) != 0) continue;
    const std::int64_t n_plus = s * s;
    const int count = rep_count_p(N, n_plus, r2);
    if (count == 0) continue;
    const std::int64_t n0 = g.n - n_plus;
    if (n0 > 0) {
      out.heeg[make_heegner_key(N, n0, g.mu.r1())] += count;
    } else if (g.mu.r1() == 0) {
      out.omega -= count;  // Z(0, 0) = -omega
    }
  }
  out.normalize();
  return out;
}

DivisorClass pullback(std::int64_t N, const std::map<AmbientGenerator, Rational>& combo) {
  DivisorClass out;
  out.N = N;
  for (const auto& [g, lambda] : combo) out += lambda * pullback(N, g);
  return out;
}

PullbackDecomposition decompose_heegner(std::int64_t N, const HeegnerKey& key_in) {
  const HeegnerKey key = make_heegner_key(N, key_in.n, key_in.r1);
  const std::int64_t r1 = key.r1;
  const int a_p = rep_count_p(N, 4 * N * N, 0);  // a_P(N k^2, 0) = 2 for k >= 1

  // coefficient vectors of Heeg(n, r1) for n = key.n - 4N^2 k^2, memoized by n
  std::map<std::int64_t, std::map<AmbientGenerator, Rational>> memo;
  std::function<const std::map<AmbientGenerator, Rational>&(std::int64_t)> solve =
      [&](std::int64_t n) -> const std::map<AmbientGenerator, Rational>& {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::map<AmbientGenerator, Rational> c;
    if (n == 0) {
      // Z(0, 0) = -omega = (1/2) iota^* Z^*(0, 0); Z(0, mu0) = 0 for mu0 != 0
      if (r1 == 0) c[AmbientGenerator{0, DiscElement(N, 0, 0)}] = Rational(1, 2);
    } else {
      c[AmbientGenerator{n, DiscElement(N, r1, 0)}] = 1;
      for (std::int64_t k = 1; 4 * N * N * k * k <= n; ++k) {
        const auto& lower = solve(n - 4 * N * N * k * k);
        for (const auto& [g, v] : lower) c[g] -= a_p * v;
      }
      std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
    }
    return memo.emplace(n, std::move(c)).first->second;
  };

  PullbackDecomposition d;
  d.N = N;
  d.target = key;
  d.terms = solve(key.n);
  for (auto& [g, v] : d.terms) v.canonicalize();
  d.residual_cusp_ambiguous = true;
  return d;
}

PullbackDecomposition decompose_heegner(std::int64_t N, const Rational& m0, std::int64_t r1) {
  return decompose_heegner(N, make_heegner_key(N, m0, r1));
}

DivisorClass round_trip_residual(const PullbackDecomposition& d) {
  DivisorClass target;
  target.N = d.N;
  target.heeg[d.target] = 1;
  return pullback(d.N, d.terms) + Rational(-1) * target;
}

Rational heegner_degree_on_XN(std::int64_t N, const HeegnerKey& key) {
  // deg P_{D,r} = deg P_{D,-r} (the Fricke involution swaps them)
  const auto p = enumerate_heegner_divisor(make_heegner_index(N, -key.n, key.r1));
  return Rational(2 * covering_degree_XN_X0(N)) * p.degree;
}

DivisorClass chow_heegner_from_decomposition(std::int64_t N, const PullbackDecomposition& d) {
  if (d.N != N) throw InvalidArgument("decomposition belongs to a different level");
  const auto residual = round_trip_residual(d);
  if (!residual.heeg.empty() || residual.omega != 0)
    throw InvalidArgument("decomposition does not realize its target");
  DivisorClass out;
  out.N = N;
  out.heeg[d.target] = 1;
  out.cusp = -heegner_degree_on_XN(N, d.target);
  out.cusp_ambiguous = false;
  out.normalize();
  return out;
}

DivisorClass reduce_canonical(const DivisorClass& c, std::int64_t genus) {
  if (genus < 2) return c;
  DivisorClass out = c;
  out.cusp += Rational(2 * genus - 2) * out.omega;
  out.omega = 0;
  out.normalize();
  return out;
}

}  // namespace ceresa
