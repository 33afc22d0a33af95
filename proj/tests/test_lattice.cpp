#include <doctest.h>

#include "ceresa/errors.hpp"
#include "ceresa/lattice.hpp"

using namespace ceresa;

namespace {

// N tr(x adj y), written out by hand
Rational pairing_by_hand(const Matrix2& x, const Matrix2& y, std::int64_t N) {
  // adj(y) = (y3, -y1; -y2, y0)
  const Rational tr = x[0] * y[3] - x[1] * y[2] - x[2] * y[1] + x[3] * y[0];
  return N * tr;
}

Rational norm(const Matrix2& x, std::int64_t N) { return N * (x[0] * x[3] - x[1] * x[2]); }

}  // namespace

TEST_CASE("L_W Gram matrix in the pinned basis") {
  for (std::int64_t N = 1; N <= 50; ++N) {
    const auto W = build_lattice_W(N);
    REQUIRE(W.rank() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(W.basis[i][0] + W.basis[i][3] == 0);  // trace zero
      for (int j = 0; j < 3; ++j) {
        CHECK(W.gram[i][j] == W.gram[j][i]);
        CHECK(W.gram[i][j] == pairing_by_hand(W.basis[i], W.basis[j], N));
      }
      CHECK(W.gram[i][i] == 2 * norm(W.basis[i], N));
    }
    CHECK(W.gram[0][0] == -2 * N);
    CHECK(abs(W.determinant()) == 2 * N);
    CHECK(W.signature() == Signature{1, 2});
    CHECK(W.discriminant_order() == 2 * N);
    CHECK(W.discriminant_invariants() == std::vector<BigInt>{2 * N});
  }
}

TEST_CASE("N = 1: diag(1,-1) has Q = -1 and (x, x) = -2") {
  const auto W = build_lattice_W(1);
  CHECK(norm(W.basis[0], 1) == -1);
  CHECK(W.gram[0][0] == -2);
  CHECK(W.discriminant_order() == 2);
}

TEST_CASE("P and L") {
  for (std::int64_t N = 1; N <= 50; ++N) {
    const auto P = build_lattice_P(N);
    REQUIRE(P.rank() == 1);
    CHECK(P.gram[0][0] == 2 * N);
    CHECK(P.signature() == Signature{1, 0});
    const auto L = build_lattice_L(N);
    REQUIRE(L.rank() == 4);
    CHECK(L.signature() == Signature{2, 2});
    for (int i = 0; i < 3; ++i) {
      CHECK(L.gram[i][3] == 0);
      CHECK(L.gram[3][i] == 0);
      for (int j = 0; j < 3; ++j) CHECK(L.gram[i][j] == build_lattice_W(N).gram[i][j]);
    }
    CHECK(L.gram[3][3] == 2 * N);
    CHECK(L.discriminant_order() == 4 * N * N);
    CHECK(L.discriminant_invariants() == std::vector<BigInt>{2 * N, 2 * N});
  }
  CHECK(build_lattice_L(3).discriminant_order() == 36);
  CHECK(build_lattice_L(1).discriminant_order() == 4);
}

TEST_CASE("dual basis pairs to the identity") {
  for (std::int64_t N : {1, 2, 5, 12}) {
    const auto L = build_lattice_L(N);
    const auto dual = L.dual_basis();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(pairing_by_hand(dual[i], L.basis[j], N) == (i == j ? 1 : 0));
  }
}

TEST_CASE("lattice builders reject N = 0") {
  CHECK_THROWS_AS(build_lattice_W(0), InvalidArgument);
  CHECK_THROWS_AS(build_lattice_P(0), InvalidArgument);
  CHECK_THROWS_AS(build_lattice_L(-3), InvalidArgument);
}

TEST_CASE("q_mod1 matches Q of the matrix representative") {
  for (std::int64_t N = 1; N <= 50; ++N)
    for (std::int64_t r1 = 0; r1 < 2 * N; ++r1)
      for (std::int64_t r2 = 0; r2 < 2 * N; r2 += (N > 10 ? 3 : 1)) {
        const DiscElement mu(N, r1, r2);
        const auto rep = mu.representative();
        CHECK(q_mod1(mu, Side::Full) == frac(norm(rep, N)));
        CHECK(q_mod1(mu, Side::Full) == frac(q_mod1(mu, Side::W) + q_mod1(mu, Side::P)));
        CHECK(q_mod1(mu.w_part(), Side::W) == frac(norm(mu.w_part().representative(), N)));
        CHECK(q_mod1(mu, Side::W) == q_mod1(-mu, Side::W));
        CHECK(q_mod1(mu, Side::P) == q_mod1(-mu, Side::P));
        CHECK(DiscElement::from_representative(N, rep) == mu);
        CHECK(q_numerator(mu) == mod(r2 * r2 - r1 * r1, 4 * N));
      }
}

TEST_CASE("q_mod1 examples") {
  CHECK(q_mod1(DiscElement(37, 0, 0), Side::Full) == 0);
  CHECK(q_mod1(DiscElement(1, 1, 0), Side::W) == Rational(3, 4));
  CHECK(q_mod1(DiscElement(1, 0, 1), Side::P) == Rational(1, 4));
}

TEST_CASE("disc elements reduce mod 2N and form a group") {
  const DiscElement a(3, 7, -1), b(3, 1, 5);
  CHECK(a.r1() == 1);
  CHECK(a.r2() == 5);
  CHECK((a + (-a)).is_zero());
  CHECK(a == b);
}
