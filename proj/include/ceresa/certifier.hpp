#pragma once

// Decidable sufficient criteria for the nontriviality of the Gross-Kudla-Schoen
// diagonal cycle and the Ceresa cycle of X_N. The criteria never show
// triviality; "unknown" only means none of them applies.

#include <optional>
#include <string>
#include <vector>

#include "ceresa/arith.hpp"
#include "ceresa/modular_geometry.hpp"
#include "ceresa/newform_client.hpp"

namespace ceresa {

enum class Verdict { ProvenNontrivial, Unknown };

enum class Clause { A1Prime, A2PrimeSquare, BBound, AnalyticWitness, None };

std::string to_string(Verdict v);
std::string to_string(Clause c);

/// Primes 11 <= p <= 71 other than the exceptional ones.
const std::vector<std::int64_t>& bound_B_primes();

/// Primes whose division of N alone settles the question.
const std::vector<std::int64_t>& exceptional_primes();  // 37, 43, 53, 61, 67

/// 2^6 3^4 5^2 7^2 prod bound_B_primes().
BigInt bound_B();

struct CertificateWitness {
  Clause clause = Clause::None;
  /// A1/A2: the prime. A1 may instead carry an unsplit cofactor > 1 coprime to
  /// every prime <= 71 (then `prime` is empty).
  std::optional<BigInt> prime;
  std::optional<BigInt> cofactor;
  /// Analytic: level M | N and the newform there.
  std::optional<Witness> newform;
};

enum class LookupStatus { Complete, Indeterminate, NotAttempted };
std::string to_string(LookupStatus s);

struct Certificate {
  BigInt N;
  Verdict verdict = Verdict::Unknown;
  Clause clause = Clause::None;
  /// Every clause that fires, in evaluation order.
  std::vector<CertificateWitness> witnesses;
  /// Closed-form profile of X_N; absent above the formula's range.
  std::optional<CurveProfile> curve_profile;
  LookupStatus newform_lookup = LookupStatus::NotAttempted;
  std::optional<FetchMode> newform_mode;
  std::vector<std::int64_t> unavailable_levels;
  std::vector<std::string> lookup_errors;
  std::string justification;
};

struct NewformSource {
  NewformClient* client = nullptr;
  FetchMode mode = FetchMode::Offline;
  /// Divisors above this level are not looked up.
  std::int64_t max_level = 1000000;
};

/// Evaluates B (N > bound_B()), A1, A2 and then the analytic clause over the
/// divisors of N; the first one that fires becomes `clause`. B is tested first
/// because it needs no factorization. Without a source the analytic clause is
/// skipped. Newform lookup failures only make the lookup indeterminate.
Certificate certify(const BigInt& N, const std::optional<NewformSource>& source = std::nullopt);

/// Human-readable account of the certificate.
std::string explain(const Certificate& c);

}  // namespace ceresa
