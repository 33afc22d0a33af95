#include "ceresa/selftest.hpp"

#include <chrono>

#include "ceresa/arith.hpp"
#include "ceresa/heegner.hpp"
#include "ceresa/modular_geometry.hpp"
#include "ceresa/pullback.hpp"

namespace ceresa {

namespace {

class Timer {
 public:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void record(SuiteResult& s, bool ok, const std::string& what) {
  ++s.checks;
  if (ok) return;
  if (s.failures++ == 0) s.first_failure = what;
}

}  // namespace

SuiteResult eichler_suite(std::int64_t max_n) {
  SuiteResult s;
  s.name = "eichler_relation";
  Timer timer;
  for (std::int64_t n = 1; n <= max_n; ++n) {
    Rational lhs = 0;
    for (std::int64_t t = -isqrt(4 * n); t * t <= 4 * n; ++t) {
      const std::int64_t k = 4 * n - t * t;
      lhs += k == 0 ? Rational(-1, 12) : hurwitz_class_number(k);
    }
    Rational rhs = 0;
    for (auto d : divisors(n)) rhs += std::max(d, n / d);
    record(s, lhs == rhs, "n = " + std::to_string(n));
  }
  s.seconds = timer.elapsed();
  return s;
}

SuiteResult genus_table_suite() {
  SuiteResult s;
  s.name = "genus_tables";
  Timer timer;
  for (std::int64_t p : {37, 43, 53, 61, 79, 83, 89, 101, 131})
    record(s, x0_star_genus(p) == 1, "genus X_0^*(" + std::to_string(p) + ") = 1");
  for (std::int64_t p : {67, 73, 97, 103, 107, 109, 113, 127})
    record(s, x0_star_genus(p) >= 2, "genus X_0^*(" + std::to_string(p) + ") >= 2");
  record(s, x0_profile(37).genus == 2, "genus X_0(37) = 2");
  record(s, minus_newspace_dim(37) == 1, "dim S_2^new(37)^- = 1");
  s.seconds = timer.elapsed();
  return s;
}

SuiteResult pullback_round_trip_suite(const std::vector<std::int64_t>& levels,
                                      std::int64_t max_norm_numerator) {
  SuiteResult s;
  s.name = "pullback_round_trip";
  Timer timer;
  for (auto N : levels) {
    for (std::int64_t n = 1; n <= max_norm_numerator; ++n) {
      for (std::int64_t r1 = 0; r1 <= N; ++r1) {
        if (mod(n + r1 * r1, 4 * N) != 0) continue;
        const auto key = make_heegner_key(N, n, r1);
        const auto d = decompose_heegner(N, key);
        const auto residual = round_trip_residual(d);
        const AmbientGenerator lead{n, DiscElement(N, key.r1, 0)};
        const auto it = d.terms.find(lead);
        const bool ok =
            residual.heeg.empty() && it != d.terms.end() && it->second == 1;
        record(s, ok, "N = " + std::to_string(N) + ", n = " + std::to_string(n) +
                          ", r1 = " + std::to_string(r1));
      }
    }
  }
  s.seconds = timer.elapsed();
  return s;
}

std::vector<SuiteResult> run_selftest() {
  return {eichler_suite(), genus_table_suite(), pullback_round_trip_suite()};
}

}  // namespace ceresa
