#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ceresa/arith.hpp"

namespace ceresa {

/// Binary quadratic form a x^2 + b xy + c y^2.
struct BQForm {
  std::int64_t a = 0, b = 0, c = 0;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  std::int64_t content() const;
  bool is_reduced() const;
  bool operator==(const BQForm&) const = default;
};

/// SL2(Z)-reduced representative of a positive definite form.
BQForm reduce(BQForm f);

/// All reduced positive definite forms of discriminant D < 0, in
/// enumeration order (a ascending, then b ascending).
std::vector<BQForm> reduced_forms(std::int64_t D, bool primitive_only = false);

/// Order of Aut(f)/{+-1} for a reduced form: 2 for (a,0,a), 3 for (a,a,a),
/// 1 otherwise.
int automorphism_order(const BQForm& reduced);

/// H(n): classes of positive definite forms of discriminant -n, primitive or
/// not, weighted by 1/|Aut/{+-1}|. Zero unless n = 0, 3 (mod 4). Throws
/// InvalidArgument for n <= 0.
Rational hurwitz_class_number(std::int64_t n);

/// h(D): number of classes of primitive positive definite forms of
/// discriminant D < 0, unweighted.
std::int64_t class_number(std::int64_t D);

/// Index (N, D, r) of the Heegner divisor P_{D,r} + P_{D,-r} on X_0(N):
/// D < 0, D = 0,1 (mod 4) and r^2 = D (mod 4N).
struct HeegnerIndex {
  std::int64_t N = 1;
  std::int64_t D = 0;
  std::int64_t r = 0;

  /// r = -r (mod 2N): the divisor is 2 P_{D,r}.
  bool self_paired() const { return mod(2 * r, 2 * N) == 0; }
  bool operator==(const HeegnerIndex&) const = default;
};

/// Validating constructor; throws InvalidArgument on a broken invariant.
HeegnerIndex make_heegner_index(std::int64_t N, std::int64_t D, std::int64_t r);

struct HeegnerClass {
  BQForm form;      // [aN, b, c] with b = r (mod 2N)
  Rational weight;  // 1/e, e = |Stab_{Gamma_0(N)}(form)/{+-1}|
};

/// P_{D,r}: Gamma_0(N)-classes of forms [aN, b, c] of discriminant D with
/// b = r (mod 2N), weighted by 1/e. `degree` is the total weight; it is
/// H(|D|) when gcd(D, N) = 1 and can differ otherwise (N = 2, D = -12: 2).
struct HeegnerDivisor {
  HeegnerIndex index;
  std::vector<HeegnerClass> classes;
  Rational degree;
};

/// r in [0, 2N) with r^2 = D (mod 4N). Closed under r -> -r.
std::vector<std::int64_t> heegner_r_values(std::int64_t N, std::int64_t D);

HeegnerDivisor enumerate_heegner_divisor(const HeegnerIndex& idx);

/// Index of Z_{Y_0(N)}(m0, mu_{r1}) = P_{D,r} + P_{D,-r}, D = -4N m0.
/// Throws CongruenceError unless m0 > 0 and m0 = -r1^2/4N (mod 1); returns
/// nullopt when the congruence holds but D is not a discriminant (empty
/// divisor).
std::optional<HeegnerIndex> special_divisor_index(std::int64_t N, const Rational& m0,
                                                  std::int64_t r1);

/// Points of P^1(Z/N) as canonical pairs (x, y), gcd(x, y, N) = 1.
std::vector<std::pair<std::int64_t, std::int64_t>> projective_line(std::int64_t N);

}  // namespace ceresa
