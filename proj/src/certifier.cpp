#include "ceresa/certifier.hpp"

#include <algorithm>
#include <sstream>

#include "ceresa/errors.hpp"

namespace ceresa {

namespace {

constexpr std::int64_t kProfileLimit = 1000000000;

const char* kCoverage =
    "covers the Gross-Kudla-Schoen cycle Delta_GKS(X_N, e) in CH^2(X_N^3) and the Ceresa cycle "
    "in CH^{g-1}(Jac X_N) for every basepoint e: nonvanishing of the Abel-Jacobi image at the "
    "cusp infinity implies nontriviality for all basepoints";

const char* kTrust =
    "analytic ranks are taken from the newform database (or fixtures derived from it) as given; "
    "rank exactly 1 with root number -1 is read as L'(f,1) != 0";

std::string describe(const CertificateWitness& w) {
  std::ostringstream os;
  switch (w.clause) {
    case Clause::A1Prime:
      if (w.prime)
        os << "prime " << to_string(*w.prime) << " divides N";
      else
        os << "N has a cofactor " << to_string(*w.cofactor)
           << " coprime to all primes <= 71, hence a prime factor > 71";
      break;
    case Clause::A2PrimeSquare:
      os << to_string(*w.prime) << "^2 divides N";
      break;
    case Clause::BBound:
      os << "N > B = " << to_string(bound_B());
      break;
    case Clause::AnalyticWitness: {
      const auto& r = w.newform->record;
      os << "newform " << r.label << " at level " << w.newform->level
         << " | N: root number -1, analytic rank " << r.analytic_rank << " (source "
         << to_string(r.source) << ")";
      break;
    }
    case Clause::None: break;
  }
  return os.str();
}

std::string clause_reason(Clause c) {
  switch (c) {
    case Clause::A1Prime:
      return "N is divisible by a prime p in {37, 43, 53, 61, 67} or p > 71; for such p the "
             "Fricke-minus newspace of level p contains a form with L'(f,1) != 0, and the "
             "statement for p passes to every multiple of p by pushforward along X_N -> X_p";
    case Clause::A2PrimeSquare:
      return "N is divisible by p^2 for a prime p >= 11; X_0^*(p^2) then has genus >= 2, giving a "
             "Fricke-minus newform at level p^2 with L'(f,1) != 0, and the statement passes to "
             "multiples of p^2";
    case Clause::BBound:
      return "N exceeds B = 2^6 3^4 5^2 7^2 prod p (11 <= p <= 71, p not in {37, 43, 53, 61, 67}), "
             "so N is divisible by 2^7, 3^5, 5^3, 7^3, p^2 (p >= 11) or a prime covered by the "
             "prime clause; each of these levels carries a newform with L'(f,1) != 0";
    case Clause::AnalyticWitness:
      return "a weight-2 Fricke-minus newform f at a level M | N has L'(f,1) != 0; the Heegner "
             "divisor pulled back to X_N then gives a non-torsion Chow-Heegner divisor, and the "
             "statement passes from M to N";
    case Clause::None:
      return "no criterion applies; the criteria are sufficient, not necessary, so this is not "
             "a claim of triviality";
  }
  return {};
}

std::optional<BigInt> prime_square_at_least_11(const BigFactorization& f) {
  for (const auto& [p, e] : f.factors)
    if (p >= 11 && e >= 2) return p;
  return std::nullopt;
}

}  // namespace

std::string to_string(Verdict v) {
  return v == Verdict::ProvenNontrivial ? "proven_nontrivial" : "unknown";
}

std::string to_string(Clause c) {
  switch (c) {
    case Clause::A1Prime: return "A1_prime";
    case Clause::A2PrimeSquare: return "A2_prime_square";
    case Clause::BBound: return "B_bound";
    case Clause::AnalyticWitness: return "analytic_witness";
    case Clause::None: return "none";
  }
  return "?";
}

std::string to_string(LookupStatus s) {
  switch (s) {
    case LookupStatus::Complete: return "complete";
    case LookupStatus::Indeterminate: return "indeterminate";
    case LookupStatus::NotAttempted: return "not_attempted";
  }
  return "?";
}

const std::vector<std::int64_t>& bound_B_primes() {
  static const std::vector<std::int64_t> primes{11, 13, 17, 19, 23, 29, 31, 41, 47, 59, 71};
  return primes;
}

const std::vector<std::int64_t>& exceptional_primes() {
  static const std::vector<std::int64_t> primes{37, 43, 53, 61, 67};
  return primes;
}

BigInt bound_B() {
  BigInt b = 64 * 81 * 25 * 49;
  for (auto p : bound_B_primes()) b *= p;
  return b;
}

Certificate certify(const BigInt& N, const std::optional<NewformSource>& source) {
  if (N < 1) throw InvalidArgument("level N must be >= 1");
  Certificate c;
  c.N = N;

  if (N > bound_B()) c.witnesses.push_back({Clause::BBound, std::nullopt, std::nullopt, {}});

  // A1: strip primes <= 71; anything left has a prime factor > 71
  BigInt rest = N;
  std::vector<BigInt> a1_primes;
  for (std::int64_t p = 2; p <= 71; ++p) {
    if (!is_prime(p)) continue;
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    for (auto q : exceptional_primes())
      if (q == p) a1_primes.push_back(p);
  }
  const BigFactorization f = factorize(N);
  if (rest > 1) {
    bool named = false;
    for (const auto& [p, e] : f.factors)
      if (p > 71) {
        a1_primes.push_back(p);
        named = true;
        break;
      }
    if (!named) c.witnesses.push_back({Clause::A1Prime, std::nullopt, rest, {}});
  }
  std::sort(a1_primes.begin(), a1_primes.end());
  if (!a1_primes.empty())
    c.witnesses.push_back({Clause::A1Prime, a1_primes.front(), std::nullopt, {}});

  // A2 needs the square part; an incomplete factorization only arises far
  // above B, where clause B already holds
  if (auto p = prime_square_at_least_11(f))
    c.witnesses.push_back({Clause::A2PrimeSquare, *p, std::nullopt, {}});

  if (source && source->client != nullptr) {
    c.newform_mode = source->mode;
    if (!f.complete) {
      c.newform_lookup = LookupStatus::Indeterminate;
      c.lookup_errors.push_back("N could not be factored completely");
    } else {
      std::vector<std::int64_t> levels;
      for (const auto& d : divisors(f, BigInt(source->max_level)))
        if (d <= source->max_level) levels.push_back(d.get_si());
      const auto scan = source->client->witness_minus_rank1(levels, source->mode);
      c.unavailable_levels = scan.unavailable_levels;
      c.lookup_errors = scan.errors;
      if (scan.witness) {
        c.witnesses.push_back({Clause::AnalyticWitness, std::nullopt, std::nullopt, scan.witness});
        c.newform_lookup = LookupStatus::Complete;
      } else {
        c.newform_lookup =
            scan.indeterminate() ? LookupStatus::Indeterminate : LookupStatus::Complete;
      }
    }
  }

  if (!c.witnesses.empty()) {
    c.verdict = Verdict::ProvenNontrivial;
    c.clause = c.witnesses.front().clause;
  }
  if (N <= kProfileLimit) c.curve_profile = gamma_N_profile_formula(N.get_si());
  c.justification = clause_reason(c.clause);
  return c;
}

std::string explain(const Certificate& c) {
  std::ostringstream os;
  os << "X_N for N = " << to_string(c.N) << " (Gamma_1(2N) cap Gamma(2))\n";
  os << "verdict: " << to_string(c.verdict) << "\n";
  os << "clause: " << to_string(c.clause) << "\n";
  os << "reason: " << clause_reason(c.clause) << "\n";
  for (const auto& w : c.witnesses)
    os << "  witness [" << to_string(w.clause) << "] " << describe(w) << "\n";
  if (c.verdict == Verdict::ProvenNontrivial) {
    os << "scope: " << kCoverage << "\n";
  } else {
    os << "note: the criteria are sufficient only; 'unknown' does not mean the cycles are "
          "trivial\n";
  }
  if (c.newform_mode) {
    os << "newform lookup (" << to_string(*c.newform_mode) << "): " << to_string(c.newform_lookup);
    if (!c.unavailable_levels.empty()) {
      os << "; no data for levels";
      for (auto M : c.unavailable_levels) os << " " << M;
    }
    os << "\n";
    for (const auto& e : c.lookup_errors) os << "  lookup error: " << e << "\n";
    os << "data trust: " << kTrust << "\n";
  } else {
    os << "newform lookup: not attempted\n";
  }
  if (c.curve_profile) {
    const auto& p = *c.curve_profile;
    os << "curve: index " << p.index << ", cusps " << p.cusps << ", nu2 " << p.nu2 << ", nu3 "
       << p.nu3 << ", genus " << p.genus << "\n";
  } else {
    os << "curve: profile not computed for N > " << kProfileLimit << "\n";
  }
  return os.str();
}

}  // namespace ceresa
