#include "ceresa/modular_geometry.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "ceresa/errors.hpp"
#include "ceresa/heegner.hpp"

namespace ceresa {

namespace {

using i128 = __int128;

std::int64_t checked(i128 v) {
  if (v > INT64_MAX || v < 0) throw ResourceLimit("curve invariant exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

void require_level(std::int64_t N) {
  if (N < 1) throw InvalidArgument("level N must be >= 1, got " + std::to_string(N));
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
}

// Element of SL2(Z/M), row-major.
using Mat = std::array<std::int64_t, 4>;

Mat mul(const Mat& x, const Mat& y, std::int64_t M) {
  return {mod(x[0] * y[0] + x[1] * y[2], M), mod(x[0] * y[1] + x[1] * y[3], M),
          mod(x[2] * y[0] + x[3] * y[2], M), mod(x[2] * y[1] + x[3] * y[3], M)};
}

std::uint64_t encode(const Mat& m, std::int64_t M) {
  return ((static_cast<std::uint64_t>(m[0]) * M + m[1]) * M + m[2]) * M + m[3];
}

// Right-coset space {+-G} \ SL2(Z/M) with the right action of S, ST and T.
class CosetAction {
 public:
  CosetAction(std::int64_t M, std::vector<Mat> image) : M_(M), image_(std::move(image)) {
    // close the image under -1
    const auto n = image_.size();
    for (std::size_t i = 0; i < n; ++i) {
      Mat neg{mod(-image_[i][0], M), mod(-image_[i][1], M), mod(-image_[i][2], M),
              mod(-image_[i][3], M)};
      if (std::find(image_.begin(), image_.end(), neg) == image_.end()) image_.push_back(neg);
    }
    explore();
  }

  std::size_t size() const { return reps_.size(); }

  std::int64_t fixed_points(std::size_t gen) const {
    std::int64_t n = 0;
    for (std::size_t i = 0; i < size(); ++i) n += (perm_[gen][i] == i);
    return n;
  }

  std::int64_t cycles(std::size_t gen) const {
    std::vector<char> seen(size(), 0);
    std::int64_t n = 0;
    for (std::size_t i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      ++n;
      for (std::size_t j = i; !seen[j]; j = perm_[gen][j]) seen[j] = 1;
    }
    return n;
  }

  static constexpr std::size_t kS = 0, kST = 1, kT = 2;

 private:
  std::uint64_t canonical(const Mat& g) const {
    std::uint64_t best = UINT64_MAX;
    for (const auto& h : image_) best = std::min(best, encode(mul(h, g, M_), M_));
    return best;
  }

  std::size_t id_of(const Mat& g) {
    const auto key = canonical(g);
    auto [it, inserted] = ids_.try_emplace(key, reps_.size());
    if (inserted) reps_.push_back(g);
    return it->second;
  }

  void explore() {
    const Mat S{0, mod(-1, M_), 1 % M_, 0};
    const Mat T{1 % M_, 1 % M_, 0, 1 % M_};
    const Mat ST = mul(S, T, M_);
    const std::array<Mat, 3> gens{S, ST, T};
    id_of(Mat{1 % M_, 0, 0, 1 % M_});
    // SL2(Z) -> SL2(Z/M) is onto and S, T generate, so BFS reaches every coset
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto j = id_of(mul(reps_[i], gens[k], M_));
        if (perm_[k].size() <= i) perm_[k].resize(i + 1);
        perm_[k][i] = j;
      }
    }
  }

  std::int64_t M_;
  std::vector<Mat> image_;
  std::vector<Mat> reps_;
  std::unordered_map<std::uint64_t, std::size_t> ids_;
  std::array<std::vector<std::size_t>, 3> perm_;
};

// sum_{d | n} phi(gcd(d, n/d))
std::int64_t gamma0_cusps(std::int64_t N) {
  std::int64_t c = 0;
  for (auto d : divisors(N)) c += euler_phi(std::gcd(d, N / d));
  return c;
}

// Orbits of G <= (Z/M)^* (G closed under inverses, h^2 = 1 here) on
// {(y mod M, x mod gcd(y, M)) : x a unit}, via Burnside with the fixed-point
// count sum_{g | M, (M/g) | h-1, g | h^{-1}-1} phi(M/g) phi(g).
std::int64_t gammaH_cusps(std::int64_t M, const std::vector<std::int64_t>& G) {
  const auto divs = divisors(M);
  i128 total = 0;
  for (auto h : G) {
    std::int64_t h_inv = 1;
    for (std::int64_t u = 1; u <= M; ++u)
      if (mod(h * u, M) == 1 % M) {
        h_inv = u;
        break;
      }
    for (auto g : divs) {
      if (mod(h - 1, M / g) != 0 || mod(h_inv - 1, g) != 0) continue;
      total += i128(euler_phi(M / g)) * euler_phi(g);
    }
  }
  if (total % G.size() != 0) throw Error("cusp count: Burnside sum not divisible by |G|");
  return checked(total / G.size());
}

int kronecker_minus4(std::int64_t p) { return p == 2 ? 0 : (p % 4 == 1 ? 1 : -1); }
int kronecker_minus3(std::int64_t p) { return p == 3 ? 0 : (p % 3 == 1 ? 1 : -1); }

}  // namespace

std::string to_string(CurveKind k) {
  switch (k) {
    case CurveKind::X0: return "x0";
    case CurveKind::X0Star: return "x0star";
    case CurveKind::XN: return "xn";
  }
  return "?";
}

CurveKind parse_curve_kind(const std::string& s) {
  if (s == "x0") return CurveKind::X0;
  if (s == "x0star") return CurveKind::X0Star;
  if (s == "xn") return CurveKind::XN;
  throw InvalidArgument("unknown curve '" + s + "' (expected x0, x0star or xn)");
}

std::int64_t genus_from_data(std::int64_t index, std::int64_t nu2, std::int64_t nu3,
                             std::int64_t cusps) {
  // 12 g = 12 + index - 3 nu2 - 4 nu3 - 6 cusps
  const i128 twelve_g = i128(12) + index - i128(3) * nu2 - i128(4) * nu3 - i128(6) * cusps;
  if (twelve_g % 12 != 0 || twelve_g < 0)
    throw Error("Riemann-Hurwitz data does not give an integral genus");
  return checked(twelve_g / 12);
}

CurveProfile gamma_N_profile(std::int64_t N, std::int64_t max_level) {
  require_level(N);
  const std::int64_t M = 2 * N;
  if (M > max_level)
    throw ResourceLimit("Gamma_N enumeration at level " + std::to_string(M) +
                        " exceeds the configured bound " + std::to_string(max_level));
  // image of Gamma_N in SL2(Z/2N): b = 0 (2), c = 0 (2N), d = 1 (2N)
  std::vector<Mat> image;
  for (std::int64_t c = 0; c < M; c += M)
    for (std::int64_t d = 1 % M; d < M; d += M)
      for (std::int64_t a = 0; a < M; ++a)
        for (std::int64_t b = 0; b < M; b += 2) {
          if (mod(a * d - b * c, M) != 1 % M) continue;
          image.push_back({a, b, c, d});
        }
  const CosetAction action(M, std::move(image));
  CurveProfile p;
  p.kind = CurveKind::XN;
  p.N = N;
  p.index = static_cast<std::int64_t>(action.size());
  p.nu2 = action.fixed_points(CosetAction::kS);
  p.nu3 = action.fixed_points(CosetAction::kST);
  p.cusps = action.cycles(CosetAction::kT);
  p.genus = genus_from_data(p.index, p.nu2, p.nu3, p.cusps);
  return p;
}

CurveProfile gamma_N_profile_formula(std::int64_t N) {
  require_level(N);
  if (N > 1000000000) throw ResourceLimit("Gamma_N closed form limited to N <= 1e9");
  CurveProfile p;
  p.kind = CurveKind::XN;
  p.N = N;
  if (N == 1) {
    p.index = 6;
  } else {
    i128 idx = 1;
    for (auto [q, e] : factorize(2 * N)) {
      for (int k = 0; k < 2 * e - 2; ++k) idx *= q;
      idx *= (i128(q) * q - 1);
    }
    p.index = checked(idx);
  }
  // Gamma_N is conjugate (by diag(1,2)) to Gamma_H(4N), H = {1, 2N+1}
  const std::int64_t M = 4 * N;
  std::vector<std::int64_t> G{1, mod(2 * N + 1, M), mod(-1, M), mod(-(2 * N + 1), M)};
  std::sort(G.begin(), G.end());
  G.erase(std::unique(G.begin(), G.end()), G.end());
  p.cusps = gammaH_cusps(M, G);
  p.nu2 = 0;
  p.nu3 = 0;
  p.genus = genus_from_data(p.index, p.nu2, p.nu3, p.cusps);
  return p;
}

CurveProfile x0_profile(std::int64_t N) {
  require_level(N);
  CurveProfile p;
  p.kind = CurveKind::X0;
  p.N = N;
  i128 idx = N;
  std::int64_t nu2 = (N % 4 == 0) ? 0 : 1;
  std::int64_t nu3 = (N % 9 == 0) ? 0 : 1;
  for (auto [q, e] : factorize(N)) {
    idx = idx / q * (q + 1);
    nu2 *= 1 + kronecker_minus4(q);
    nu3 *= 1 + kronecker_minus3(q);
  }
  p.index = checked(idx);
  p.nu2 = nu2;
  p.nu3 = nu3;
  p.cusps = gamma0_cusps(N);
  p.genus = genus_from_data(p.index, p.nu2, p.nu3, p.cusps);
  return p;
}

std::int64_t fricke_fixed_points(std::int64_t p) {
  require_prime(p);
  if (p <= 3) throw InvalidArgument("fricke_fixed_points is defined here for p > 3");
  std::int64_t nu = class_number(-4 * p);
  if (p % 4 == 3) nu += class_number(-p);
  return nu;
}

std::int64_t x0_star_genus(std::int64_t p) {
  require_prime(p);
  if (p <= 3) return 0;  // X_0(2), X_0(3) already have genus 0
  const std::int64_t g0 = x0_profile(p).genus;
  // 2 g0 - 2 = 2 (2 g* - 2) + nu
  const std::int64_t num = 2 * g0 - 2 - fricke_fixed_points(p);
  if (mod(num, 4) != 0) throw Error("Fricke quotient genus is not integral");
  return num / 4 + 1;
}

CurveProfile x0_star_profile(std::int64_t p) {
  require_prime(p);
  CurveProfile prof;
  prof.kind = CurveKind::X0Star;
  prof.N = p;
  prof.index = 0;  // not a subgroup of PSL2(Z)
  prof.nu2 = 0;
  prof.nu3 = 0;
  prof.cusps = 1;  // w_p swaps 0 and infinity
  prof.genus = x0_star_genus(p);
  return prof;
}

std::int64_t minus_newspace_dim(std::int64_t p) {
  require_prime(p);
  return x0_star_genus(p);
}

std::int64_t covering_degree_XN_X0(std::int64_t N) {
  const auto xn = gamma_N_profile_formula(N);
  const auto x0 = x0_profile(N);
  if (xn.index % x0.index != 0) throw Error("X_N -> X_0(N) degree is not integral");
  return xn.index / x0.index;
}

}  // namespace ceresa
