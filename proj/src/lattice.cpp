#include "ceresa/lattice.hpp"

#include <algorithm>
#include <utility>

#include "ceresa/errors.hpp"

namespace ceresa {

namespace {

void require_level(std::int64_t N) {
  if (N < 1) throw InvalidArgument("level N must be >= 1, got " + std::to_string(N));
}

Matrix2 mat(Rational a, Rational b, Rational c, Rational d) {
  return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

GramLattice make(LatticeKind kind, std::int64_t N, std::vector<Matrix2> basis) {
  GramLattice lat{kind, N, std::move(basis), {}};
  const auto n = lat.basis.size();
  lat.gram.assign(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lat.gram[i][j] = pairing(lat.basis[i], lat.basis[j], N);
  return lat;
}

RationalMatrix inverse(RationalMatrix a) {
  const auto n = a.size();
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw InvalidArgument("singular Gram matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

Rational pairing(const Matrix2& x, const Matrix2& y, std::int64_t N) {
  // adj(y) = (d, -b; -c, a)
  const Rational tr = x[0] * y[3] - x[1] * y[2] - x[2] * y[1] + x[3] * y[0];
  return Rational(N) * tr;
}

std::string to_string(LatticeKind k) {
  switch (k) {
    case LatticeKind::W: return "L_W";
    case LatticeKind::P: return "P";
    case LatticeKind::L: return "L";
  }
  return "?";
}

Rational determinant(const RationalMatrix& m_in) {
  RationalMatrix m = m_in;
  const auto n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

std::vector<BigInt> smith_invariants(const RationalMatrix& m_in) {
  const auto rows = m_in.size();
  const auto cols = rows ? m_in[0].size() : 0;
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (m_in[i][j].get_den() != 1) throw InvalidArgument("Smith form needs an integral matrix");
      a[i][j] = m_in[i][j].get_num();
    }

  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // pivot: smallest nonzero |entry| in the remaining block
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (!found || abs(a[i][j]) < abs(a[pi][pj]))) {
          pi = i, pj = j, found = true;
        }
    if (!found) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility condition d_t | rest
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

Rational GramLattice::determinant() const { return ceresa::determinant(gram); }

Signature GramLattice::signature() const {
  // Congruence diagonalization; a zero pivot with a nonzero off-diagonal
  // entry is repaired by adding row/column j to i.
  RationalMatrix a = gram;
  const auto n = a.size();
  Signature s;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] == 0) {
      std::size_t j = i + 1;
      while (j < n && a[i][j] == 0) ++j;
      if (j == n) continue;
      // (e_i + s e_j, e_i + s e_j) = 2 s a_ij + a_jj; one sign is nonzero.
      const Rational sgn = (2 * a[i][j] + a[j][j] != 0) ? 1 : -1;
      for (std::size_t k = 0; k < n; ++k) a[i][k] += sgn * a[j][k];
      for (std::size_t k = 0; k < n; ++k) a[k][i] += sgn * a[k][j];
    }
    for (std::size_t r = i + 1; r < n; ++r) {
      if (a[r][i] == 0) continue;
      const Rational f = a[r][i] / a[i][i];
      for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[i][k];
      for (std::size_t k = 0; k < n; ++k) a[k][r] -= f * a[k][i];
    }
    (a[i][i] > 0 ? s.positive : s.negative) += 1;
  }
  return s;
}

std::vector<Matrix2> GramLattice::dual_basis() const {
  const auto inv = inverse(gram);
  std::vector<Matrix2> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Matrix2 v{0, 0, 0, 0};
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (int k = 0; k < 4; ++k) v[k] += inv[i][j] * basis[j][k];
    out.push_back(v);
  }
  return out;
}

std::vector<BigInt> GramLattice::discriminant_invariants() const {
  auto inv = smith_invariants(gram);
  inv.erase(std::remove(inv.begin(), inv.end(), BigInt(1)), inv.end());
  return inv;
}

BigInt GramLattice::discriminant_order() const {
  BigInt order = 1;
  for (const auto& d : smith_invariants(gram)) order *= d;
  return order;
}

GramLattice build_lattice_W(std::int64_t N) {
  require_level(N);
  return make(LatticeKind::W, N,
              {mat(1, 0, 0, -1), mat(0, Rational(-1, N), 0, 0), mat(0, 0, 1, 0)});
}

GramLattice build_lattice_P(std::int64_t N) {
  require_level(N);
  return make(LatticeKind::P, N, {mat(1, 0, 0, 1)});
}

GramLattice build_lattice_L(std::int64_t N) {
  require_level(N);
  auto basis = build_lattice_W(N).basis;
  basis.push_back(mat(1, 0, 0, 1));
  return make(LatticeKind::L, N, std::move(basis));
}

DiscElement::DiscElement(std::int64_t N, std::int64_t r1, std::int64_t r2) : N_(N) {
  require_level(N);
  r1_ = mod(r1, 2 * N);
  r2_ = mod(r2, 2 * N);
}

DiscElement DiscElement::operator+(const DiscElement& o) const {
  if (o.N_ != N_) throw InvalidArgument("adding discriminant elements of different levels");
  return {N_, r1_ + o.r1_, r2_ + o.r2_};
}

Matrix2 DiscElement::representative() const {
  const Rational den(2 * N_);
  return {Rational(r1_ + r2_) / den, 0, 0, Rational(r2_ - r1_) / den};
}

DiscElement DiscElement::from_representative(std::int64_t N, const Matrix2& m) {
  require_level(N);
  if (m[1] != 0 || m[2] != 0) throw InvalidArgument("representative must be diagonal");
  // 2N*m00 = r1 + r2, 2N*m11 = r2 - r1 (mod 2N); solving needs halves, so
  // work with the numerators directly.
  const Rational s = Rational(2 * N) * m[0];
  const Rational t = Rational(2 * N) * m[3];
  if (s.get_den() != 1 || t.get_den() != 1)
    throw InvalidArgument("representative is not in L'");
  const BigInt sum = s.get_num() + t.get_num();    // 2 r2
  const BigInt diff = s.get_num() - t.get_num();   // 2 r1
  if (!mpz_even_p(sum.get_mpz_t())) throw InvalidArgument("representative is not in L'");
  return {N, BigInt(diff / 2).get_si(), BigInt(sum / 2).get_si()};
}

Rational q_mod1(const DiscElement& mu, Side side) {
  const auto N = mu.N();
  const Rational four_n(4 * N);
  switch (side) {
    case Side::W: return frac(Rational(-mu.r1() * mu.r1()) / four_n);
    case Side::P: return frac(Rational(mu.r2() * mu.r2()) / four_n);
    case Side::Full:
      return frac(Rational(mu.r2() * mu.r2() - mu.r1() * mu.r1()) / four_n);
  }
  return 0;
}

std::int64_t q_numerator(const DiscElement& mu) {
  return mod(mu.r2() * mu.r2() - mu.r1() * mu.r1(), 4 * mu.N());
}

}  // namespace ceresa
