#pragma once

// Divisor algebra on X_N and the diagonal pullback
//   iota_1^* : CH^1(X_N x X_N) -> CH^1(X_N).
//
// A DivisorClass is a formal Q-combination of the special divisors
// Heeg(m0, mu0) = Z_{X_N}(m0, mu0) (m0 > 0), the canonical class [omega_W]
// and the cusp (infinity). Z_{X_N}(0, 0) = [omega_W^{-1}] is -1 * omega.
// Norms are carried as numerators n over 4N, m = n / 4N.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ceresa/arith.hpp"
#include "ceresa/lattice.hpp"

namespace ceresa {

/// (m0, mu0) with m0 = n / 4N > 0 and n = -r1^2 (mod 4N). Since
/// Z(m0, mu) = Z(m0, -mu), r1 is stored as min(r1, 2N - r1).
struct HeegnerKey {
  std::int64_t n = 0;
  std::int64_t r1 = 0;

  Rational m0(std::int64_t N) const { return Rational(n, 4 * N); }
  auto operator<=>(const HeegnerKey&) const = default;
};

/// Validating constructor; throws CongruenceError / InvalidArgument.
HeegnerKey make_heegner_key(std::int64_t N, std::int64_t n, std::int64_t r1);
HeegnerKey make_heegner_key(std::int64_t N, const Rational& m0, std::int64_t r1);

struct DivisorClass {
  std::int64_t N = 1;
  std::map<HeegnerKey, Rational> heeg;
  Rational omega = 0;
  Rational cusp = 0;
  /// cusp is only known up to an undetermined integer multiple of (infinity)
  bool cusp_ambiguous = false;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator*=(const Rational& s);
  /// Drops zero coefficients.
  void normalize();
  /// Equality of Heegner parts only (omega and cusp ignored).
  bool heeg_equal(const DivisorClass& o) const;
};

DivisorClass operator+(DivisorClass a, const DivisorClass& b);
DivisorClass operator*(const Rational& s, DivisorClass a);

/// Z^*(m, mu) on X_N x X_N; (0, 0) is [omega_V^{-1}].
struct AmbientGenerator {
  std::int64_t n = 0;  // m = n / 4N
  DiscElement mu;

  Rational m(std::int64_t N) const { return Rational(n, 4 * N); }
  bool operator==(const AmbientGenerator& o) const { return n == o.n && mu == o.mu; }
  bool operator<(const AmbientGenerator& o) const;
};

/// Throws CongruenceError unless m = Q(mu) (mod 1) and m >= 0.
AmbientGenerator make_generator(std::int64_t N, const Rational& m, const DiscElement& mu);

/// iota_1^* Z^*(m, mu).
///  m > 0:  sum over m = m0 + m+ of Heeg(m0, mu0) a_P(m+, mu+), where the
///          m0 = 0 term is a_P(m, mu+) Z(0, 0) = -a_P(m, mu+) omega when
///          mu0 = 0 (and vanishes otherwise); cusp-ambiguous.
///  (0, 0): -2 omega (adjunction, iota_1^* omega_V = omega_W^2).
///  m = 0, mu != 0: zero.
DivisorClass pullback(std::int64_t N, const AmbientGenerator& g);

/// Formal combination sum lambda_g iota_1^* g.
DivisorClass pullback(std::int64_t N, const std::map<AmbientGenerator, Rational>& combo);

struct PullbackDecomposition {
  std::int64_t N = 1;
  HeegnerKey target;
  std::map<AmbientGenerator, Rational> terms;
  bool residual_cusp_ambiguous = true;
};

/// Writes Heeg(m0, mu_{r1}) as iota_1^* of a combination of Z^*(m', (r1, 0)),
/// m' <= m0, and Z^*(0, 0), by the unitriangular recursion
///   Heeg(m0) = iota^* Z^*(m0) - sum_{k >= 1} a_P(N k^2, 0) Heeg(m0 - N k^2) - c (inf).
/// The coefficient of Z^*(m0, (r1, 0)) is 1.
PullbackDecomposition decompose_heegner(std::int64_t N, const Rational& m0, std::int64_t r1);
PullbackDecomposition decompose_heegner(std::int64_t N, const HeegnerKey& key);

/// Residual of the round trip: pullback(terms) - Heeg(target). Zero Heegner
/// and omega parts mean the decomposition is exact modulo the cusp.
DivisorClass round_trip_residual(const PullbackDecomposition& d);

/// Total degree of Heeg(m0, mu0) on X_N: [X_N : X_0(N)] * 2 deg P_{D,r}; this
/// is [X_N : X_0(N)] * 2 H(|D|) when gcd(D, N) = 1.
Rational heegner_degree_on_XN(std::int64_t N, const HeegnerKey& key);

/// Chow-Heegner divisor Pi_Z(Delta_GKS(X_N, inf)) = Heeg(m0, mu0) - d1 (inf)
/// in Jac(X_N) (x) Q; the cusp-supported correction terms are torsion.
DivisorClass chow_heegner_from_decomposition(std::int64_t N, const PullbackDecomposition& d);

/// Rewrites omega as (2g - 2)(inf) when genus(X_N) >= 2 ((2g-2) inf = K_X on
/// torsion-free X_N). Below genus 2 the class is returned unchanged.
DivisorClass reduce_canonical(const DivisorClass& c, std::int64_t genus);

}  // namespace ceresa
