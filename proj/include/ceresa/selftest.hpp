#pragma once

// Built-in consistency suites run by `ceresa selftest`.

#include <cstdint>
#include <string>
#include <vector>

namespace ceresa {

struct SuiteResult {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::string first_failure;
  double seconds = 0;

  bool ok() const { return failures == 0; }
};

/// sum_{t^2 <= 4n} H(4n - t^2) = sum_{d | n} max(d, n/d), with H(0) = -1/12.
SuiteResult eichler_suite(std::int64_t max_n = 200);
/// Genus of X_0^*(p) against the known genus-1 and genus->=2 primes, and
/// genus(X_0(37)) = 2 with a one-dimensional minus newspace.
SuiteResult genus_table_suite();
/// decompose_heegner followed by pullback returns the indicator vector.
SuiteResult pullback_round_trip_suite(const std::vector<std::int64_t>& levels = {1, 2, 3, 5, 6},
                                      std::int64_t max_norm_numerator = 400);

std::vector<SuiteResult> run_selftest();

}  // namespace ceresa
