#include <doctest.h>

#include <random>

#include "ceresa/errors.hpp"
#include "ceresa/heegner.hpp"
#include "ceresa/modular_geometry.hpp"
#include "ceresa/pullback.hpp"
#include "oracles.hpp"
#include "pullback_oracle.hpp"

using namespace ceresa;

using oracle::gen;
using oracle::pullback_by_vectors;

TEST_CASE("pullback examples") {
  const auto z00 = pullback(1, gen(1, 0, 0, 0));
  CHECK(z00.omega == -2);
  CHECK(z00.heeg.empty());
  CHECK_FALSE(z00.cusp_ambiguous);

  const auto z1 = pullback(1, gen(1, 4, 0, 0));
  CHECK(z1.heeg.size() == 1);
  CHECK(z1.heeg.at(make_heegner_key(1, 4, 0)) == 1);
  CHECK(z1.omega == -2);
  CHECK(z1.cusp_ambiguous);
  CHECK(z1.cusp == 0);

  const auto zq = pullback(1, gen(1, 1, 0, 1));
  CHECK(zq.heeg.empty());
  CHECK(zq.omega == -2);
  CHECK(zq.cusp_ambiguous);

  // m = 0 with mu != 0 is the zero class
  const auto z0mu = pullback(2, gen(2, 0, 2, 2));
  CHECK(z0mu.heeg.empty());
  CHECK(z0mu.omega == 0);
}

TEST_CASE("generator congruence") {
  CHECK_THROWS_AS(make_generator(1, Rational(1, 2), DiscElement(1, 0, 0)), CongruenceError);
  CHECK_THROWS_AS(make_generator(1, -1, DiscElement(1, 0, 0)), CongruenceError);
  CHECK_THROWS_AS(make_generator(3, Rational(1, 5), DiscElement(3, 0, 0)), CongruenceError);
  CHECK_THROWS_AS(pullback(1, AmbientGenerator{2, DiscElement(1, 0, 0)}), CongruenceError);
  CHECK_THROWS_AS(make_heegner_key(1, Rational(1, 2), 0), CongruenceError);
  CHECK_THROWS_AS(make_heegner_key(1, 0, 0), CongruenceError);
}

TEST_CASE("Heegner keys identify mu and -mu") {
  CHECK(make_heegner_key(2, 7, 3) == make_heegner_key(2, 7, 1));
  CHECK(make_heegner_key(2, 7, 3).r1 == 1);
  CHECK(make_heegner_key(5, Rational(4, 20), 6) == make_heegner_key(5, 4, 4));
}

TEST_CASE("pullback agrees with the vector-by-vector oracle") {
  for (std::int64_t N : {1, 2, 3, 5, 6, 7}) {
    int bad = 0;
    for (std::int64_t n = 0; n <= 400; ++n)
      for (std::int64_t r1 = 0; r1 < 2 * N; ++r1)
        for (std::int64_t r2 = 0; r2 < 2 * N; ++r2) {
          if (mod(n - r2 * r2 + r1 * r1, 4 * N) != 0) continue;
          const auto g = gen(N, n, r1, r2);
          auto a = pullback(N, g);
          auto b = pullback_by_vectors(N, g);
          b.normalize();
          if (!a.heeg_equal(b) || a.omega != b.omega || a.cusp_ambiguous != b.cusp_ambiguous) ++bad;
        }
    INFO("N = " << N);
    CHECK(bad == 0);
  }
}

TEST_CASE("number of Heegner terms in a pullback") {
  for (std::int64_t N : {1, 2, 3, 5, 6}) {
    for (std::int64_t n = 1; n <= 400; ++n)
      for (std::int64_t r1 = 0; r1 < 2 * N; ++r1)
        for (std::int64_t r2 = 0; r2 < 2 * N; ++r2) {
          if (mod(n - r2 * r2 + r1 * r1, 4 * N) != 0) continue;
          const auto c = pullback(N, gen(N, n, r1, r2));
          const auto terms = static_cast<std::int64_t>(c.heeg.size()) + (c.omega != 0);
          if (r2 == 0) {
            // m+ = N k^2 only
            CHECK(terms <= 1 + isqrt(n / (4 * N * N)));
          }
          CHECK(terms <= 2 * (1 + isqrt(n) / (2 * N)));
        }
  }
}

TEST_CASE("decomposition examples") {
  const auto d = decompose_heegner(1, 1, 0);
  REQUIRE(d.terms.size() == 2);
  CHECK(d.terms.at(gen(1, 4, 0, 0)) == 1);
  CHECK(d.terms.at(gen(1, 0, 0, 0)) == -1);
  CHECK(d.residual_cusp_ambiguous);

  const auto e = decompose_heegner(1, Rational(3, 4), 1);
  REQUIRE(e.terms.size() == 1);
  CHECK(e.terms.at(gen(1, 3, 1, 0)) == 1);

  CHECK_THROWS_AS(decompose_heegner(1, Rational(1, 2), 0), CongruenceError);
}

TEST_CASE("decomposition is unitriangular and round-trips") {
  for (std::int64_t N : {1, 2, 3, 4, 5, 6, 7, 10}) {
    for (std::int64_t n = 1; n <= 400; ++n)
      for (std::int64_t r1 = 0; r1 <= N; ++r1) {
        if (mod(n + r1 * r1, 4 * N) != 0) continue;
        const auto d = decompose_heegner(N, make_heegner_key(N, n, r1));
        CHECK(d.terms.at(gen(N, n, d.target.r1, 0)) == 1);
        for (const auto& [g, v] : d.terms) {
          CHECK(g.n <= n);
          CHECK(g.mu.r2() == 0);
          CHECK((g.mu.r1() == d.target.r1 || (g.n == 0 && g.mu.is_zero())));
          CHECK(v != 0);
        }
        const auto res = round_trip_residual(d);
        CHECK(res.heeg.empty());
        CHECK(res.omega == 0);
      }
  }
}

TEST_CASE("pullback is linear on formal combinations") {
  std::mt19937_64 rng(7);
  for (std::int64_t N : {1, 2, 3, 5, 6}) {
    std::vector<AmbientGenerator> pool;
    for (std::int64_t n = 0; n <= 120; ++n)
      for (std::int64_t r1 = 0; r1 < 2 * N; ++r1)
        for (std::int64_t r2 = 0; r2 < 2 * N; ++r2)
          if (mod(n - r2 * r2 + r1 * r1, 4 * N) == 0) pool.push_back(gen(N, n, r1, r2));
    for (int trial = 0; trial < 200; ++trial) {
      std::map<AmbientGenerator, Rational> combo;
      DivisorClass expect;
      expect.N = N;
      for (int k = 0; k < 4; ++k) {
        const auto& g = pool[rng() % pool.size()];
        const Rational lambda(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 4) + 1);
        combo[g] += lambda;
        expect += lambda * pullback(N, g);
      }
      const auto got = pullback(N, combo);
      CHECK(got.heeg_equal(expect));
      CHECK(got.omega == expect.omega);
    }
  }
}

TEST_CASE("Chow-Heegner divisor has degree zero") {
  const auto d = decompose_heegner(1, 1, 0);
  const auto c = chow_heegner_from_decomposition(1, d);
  CHECK(covering_degree_XN_X0(1) == 6);
  CHECK(c.heeg.at(d.target) == 1);
  CHECK(c.cusp == -6);  // 6 * 2 * H(4)
  CHECK_FALSE(c.cusp_ambiguous);
  for (std::int64_t N : {1, 2, 3, 5, 6}) {
    for (std::int64_t n = 1; n <= 200; ++n)
      for (std::int64_t r1 = 0; r1 <= N; ++r1) {
        if (mod(n + r1 * r1, 4 * N) != 0) continue;
        const auto dd = decompose_heegner(N, make_heegner_key(N, n, r1));
        const auto ch = chow_heegner_from_decomposition(N, dd);
        // Z(m0, mu0) on Y_0(N) is P_{D,r} + P_{D,-r}, pulled back to X_N
        const Rational deg =
            Rational(2 * covering_degree_XN_X0(N)) * oracle::heegner_degree_by_cosets(N, -n, r1);
        CHECK(ch.cusp == -deg);
        CHECK(ch.omega == 0);
      }
  }
  PullbackDecomposition wrong = d;
  wrong.terms.clear();
  CHECK_THROWS_AS(chow_heegner_from_decomposition(1, wrong), InvalidArgument);
  CHECK_THROWS_AS(chow_heegner_from_decomposition(2, d), InvalidArgument);
}

TEST_CASE("canonical class reduction") {
  DivisorClass c;
  c.N = 7;
  c.omega = 3;
  c.cusp = 1;
  const auto g = gamma_N_profile_formula(7).genus;
  REQUIRE(g >= 2);
  const auto r = reduce_canonical(c, g);
  CHECK(r.omega == 0);
  CHECK(r.cusp == 1 + 3 * (2 * g - 2));
  const auto low = reduce_canonical(c, 1);
  CHECK(low.omega == 3);
  CHECK(low.cusp == 1);
}

TEST_CASE("divisor class arithmetic drops zeros") {
  DivisorClass a;
  a.N = 1;
  a.heeg[make_heegner_key(1, 4, 0)] = 2;
  DivisorClass b = Rational(-1) * a;
  const auto z = a + b;
  CHECK(z.heeg.empty());
  DivisorClass other;
  other.N = 2;
  CHECK_THROWS_AS(a += other, InvalidArgument);
}
