#pragma once

// Quadratic lattices attached to level N:
//   W = trace-zero 2x2 rational matrices, Q(x) = N det(x), signature (1,2)
//   L_W = {(a, -b/N; c, -a)}           with L_W'/L_W = Z/2N
//   P   = Z * I_2 in W^perp, Q(a I) = N a^2, with P'/P = Z/2N
//   L   = L_W (+) P inside V = M_2(Q)
// Bilinear form (x, y) = N tr(x adj(y)), so (x, x) = 2 Q(x).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ceresa/arith.hpp"

namespace ceresa {

using Matrix2 = std::array<Rational, 4>;  // row-major (a, b; c, d)
using RationalMatrix = std::vector<std::vector<Rational>>;

/// (x, y) = N tr(x adj(y)).
Rational pairing(const Matrix2& x, const Matrix2& y, std::int64_t N);

enum class LatticeKind { W, P, L };

std::string to_string(LatticeKind k);

struct Signature {
  int positive = 0;
  int negative = 0;
  bool operator==(const Signature&) const = default;
};

struct GramLattice {
  LatticeKind kind;
  std::int64_t level_N;
  std::vector<Matrix2> basis;  // pinned integral basis, as 2x2 matrices
  RationalMatrix gram;         // gram[i][j] = pairing(basis[i], basis[j])

  int rank() const { return static_cast<int>(basis.size()); }
  Rational determinant() const;
  Signature signature() const;
  /// Dual basis expressed as 2x2 matrices (gram^{-1} applied to basis).
  std::vector<Matrix2> dual_basis() const;
  /// Elementary divisors of the Gram matrix (Smith normal form), ascending;
  /// L'/L is the product of the cyclic groups Z/d_i.
  std::vector<BigInt> discriminant_invariants() const;
  BigInt discriminant_order() const;
};

/// Basis {diag(1,-1), (0,-1/N;0,0), (0,0;1,0)}.
GramLattice build_lattice_W(std::int64_t N);
/// Basis {I_2}.
GramLattice build_lattice_P(std::int64_t N);
/// Basis of L_W followed by I_2.
GramLattice build_lattice_L(std::int64_t N);

/// Determinant by fraction-free Gaussian elimination.
Rational determinant(const RationalMatrix& m);
/// Smith normal form diagonal of an integral matrix (nonzero entries only).
std::vector<BigInt> smith_invariants(const RationalMatrix& m);

enum class Side { W, P, Full };

/// mu in L'/L as the residue pair (r1, r2): r1 indexes mu_{r1} =
/// diag(r1, -r1)/2N in L_W'/L_W, r2 indexes (r2/2N) I_2 in P'/P.
class DiscElement {
 public:
  DiscElement(std::int64_t N, std::int64_t r1, std::int64_t r2 = 0);

  std::int64_t N() const { return N_; }
  std::int64_t r1() const { return r1_; }
  std::int64_t r2() const { return r2_; }

  DiscElement w_part() const { return {N_, r1_, 0}; }
  DiscElement p_part() const { return {N_, 0, r2_}; }
  DiscElement operator-() const { return {N_, -r1_, -r2_}; }
  DiscElement operator+(const DiscElement& o) const;
  bool is_zero() const { return r1_ == 0 && r2_ == 0; }

  /// mu_{r1} + (r2/2N) I_2 = diag(r1 + r2, r2 - r1) / 2N.
  Matrix2 representative() const;

  /// Inverse of representative(): reads (r1, r2) off a diagonal coset
  /// representative.
  static DiscElement from_representative(std::int64_t N, const Matrix2& m);

  bool operator==(const DiscElement&) const = default;

 private:
  std::int64_t N_, r1_, r2_;
};

/// W side: -r1^2/4N mod 1; P side: r2^2/4N mod 1; Full: their sum mod 1.
Rational q_mod1(const DiscElement& mu, Side side);

/// Integer n with q_mod1(mu, Full) = n / 4N, in [0, 4N).
std::int64_t q_numerator(const DiscElement& mu);

}  // namespace ceresa
