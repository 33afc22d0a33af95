#pragma once

#include <cstdint>
#include <string>

#include "ceresa/arith.hpp"

namespace ceresa {

enum class CurveKind { X0, X0Star, XN };

std::string to_string(CurveKind k);
CurveKind parse_curve_kind(const std::string& s);  // "x0" | "x0star" | "xn"

/// Index is taken in PSL2(Z); genus = 1 + index/12 - nu2/4 - nu3/3 - cusps/2.
struct CurveProfile {
  CurveKind kind = CurveKind::X0;
  std::int64_t N = 1;
  std::int64_t index = 1;
  std::int64_t nu2 = 0;
  std::int64_t nu3 = 0;
  std::int64_t cusps = 1;
  std::int64_t genus = 0;

  bool operator==(const CurveProfile&) const = default;
};

/// Genus from the Riemann-Hurwitz data; throws Error if it is not integral.
std::int64_t genus_from_data(std::int64_t index, std::int64_t nu2, std::int64_t nu3,
                             std::int64_t cusps);

/// Default enumeration bound on the level 2N of Gamma_N.
inline constexpr std::int64_t kDefaultEnumerationLevel = 120;

/// Profile of X_N = X(Gamma_1(2N) cap Gamma(2)) by enumerating the
/// permutation action of PSL2(Z) on the cosets of Gamma_N, realized at level
/// 2N: the index is the number of cosets, nu2/nu3 the fixed cosets of S and
/// ST, and the cusps the cycles of T. Throws ResourceLimit if 2N exceeds
/// `max_level`.
CurveProfile gamma_N_profile(std::int64_t N, std::int64_t max_level = kDefaultEnumerationLevel);

/// Same invariants from closed formulas (index 4N^2 prod_{p|2N}(1 - p^-2),
/// cusps by orbit counting), valid for any N in 64-bit range.
CurveProfile gamma_N_profile_formula(std::int64_t N);

/// Gamma_0(N) from the classical formulas.
CurveProfile x0_profile(std::int64_t N);

/// Genus of X_0(p)/w_p for p prime, via Riemann-Hurwitz with the number of
/// fixed points of w_p computed from class numbers. Throws InvalidArgument
/// for composite p.
std::int64_t x0_star_genus(std::int64_t p);

/// Number of fixed points of the Fricke involution on X_0(p), p > 3 prime.
std::int64_t fricke_fixed_points(std::int64_t p);

/// Full profile of X_0^*(p) (index/cusps of the quotient, genus).
CurveProfile x0_star_profile(std::int64_t p);

/// dim S_2^new(Gamma_0(p))^- for p prime; equals the genus of X_0^*(p).
std::int64_t minus_newspace_dim(std::int64_t p);

/// Degree of X_N -> X_0(N) (ratio of PSL2(Z)-indices).
std::int64_t covering_degree_XN_X0(std::int64_t N);

}  // namespace ceresa
