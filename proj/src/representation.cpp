#include "ceresa/representation.hpp"

#include "ceresa/errors.hpp"

namespace ceresa {

std::int64_t norm_numerator(std::int64_t N, const Rational& m) {
  if (N < 1) throw InvalidArgument("level N must be >= 1");
  Rational scaled = Rational(4 * N) * m;
  scaled.canonicalize();
  if (scaled.get_den() != 1)
    throw InvalidArgument("norm " + to_string(m) + " has denominator not dividing 4N = " +
                          std::to_string(4 * N));
  if (!scaled.get_num().fits_slong_p()) throw InvalidArgument("norm too large");
  return scaled.get_num().get_si();
}

int rep_count_p(std::int64_t N, std::int64_t n, std::int64_t r2) {
  if (N < 1) throw InvalidArgument("level N must be >= 1");
  if (n < 0) throw InvalidArgument("a_P: negative norm");
  if (!is_square(n)) return 0;
  const std::int64_t s = isqrt(n);
  const std::int64_t M = 2 * N;
  const std::int64_t r = mod(r2, M);
  // x+ = ((r + 2Nk)/2N) I with r + 2Nk = +s or -s
  int count = 0;
  if (mod(s, M) == r) ++count;
  if (s != 0 && mod(-s, M) == r) ++count;
  return count;
}

int a_P(std::int64_t N, const Rational& m_plus, std::int64_t r2) {
  if (m_plus < 0) throw InvalidArgument("a_P: negative norm " + to_string(m_plus));
  return rep_count_p(N, norm_numerator(N, m_plus), r2);
}

}  // namespace ceresa
