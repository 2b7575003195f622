#pragma once

// Exact integer and rational linear algebra used by the geometry and ring
// layers: echelon forms with unimodular transforms, Hermite normal form,
// integer kernels, integer and rational solving, determinants.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polytame/errors.hpp"

namespace polytame {

using Int = std::int64_t;
using BigInt = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Int>;
using IntMatrix = std::vector<IntVector>;
using BigMatrix = std::vector<std::vector<BigInt>>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

inline Int to_int(const BigInt& v) {
  if (!v.fits_slong_p()) throw DomainError("integer overflow: value exceeds 64-bit range");
  return v.get_si();
}

inline Int to_int(const Rational& v) {
  if (v.get_den() != 1) throw DomainError("expected an integer, got a fraction");
  return to_int(BigInt(v.get_num()));
}

inline BigInt big(Int v) { return BigInt(static_cast<long>(v)); }

inline Int dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += big(a[i]) * big(b[i]);
  return to_int(s);
}

namespace detail {

inline void add_multiple(std::vector<BigInt>& dst, const std::vector<BigInt>& src, const BigInt& q) {
  for (std::size_t j = 0; j < dst.size(); ++j) dst[j] -= q * src[j];
}

/// Row-reduces `a` to echelon form using unimodular integer row operations
/// and applies the same operations to `u` when given. Pivots end up positive.
/// Returns the pivot columns (their count is the rank).
inline std::vector<std::size_t> integer_echelon(BigMatrix& a, BigMatrix* u) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < rows; ++i) {
        if (sgn(a[i][c]) == 0) continue;
        if (!best || abs(a[i][c]) < abs(a[*best][c])) best = i;
      }
      if (!best) break;
      if (*best != r) {
        std::swap(a[r], a[*best]);
        if (u) std::swap((*u)[r], (*u)[*best]);
      }
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (sgn(a[i][c]) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        add_multiple(a[i], a[r], q);
        if (u) add_multiple((*u)[i], (*u)[r], q);
        if (sgn(a[i][c]) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= rows || sgn(a[r][c]) == 0) continue;
    if (sgn(a[r][c]) < 0) {
      for (auto& x : a[r]) x = -x;
      if (u)
        for (auto& x : (*u)[r]) x = -x;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline BigMatrix identity_big(std::size_t n) {
  BigMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace detail

/// Row Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into [0, pivot). Zero rows are dropped. Unique per lattice.
inline BigMatrix hermite_normal_form(BigMatrix a) {
  auto pivots = detail::integer_echelon(a, nullptr);
  a.resize(pivots.size());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const std::size_t c = pivots[r];
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (sgn(q) != 0) detail::add_multiple(a[i], a[r], q);
    }
  }
  return a;
}

/// Basis (in Hermite normal form) of the integer kernel { u : m u = 0 }.
inline IntMatrix integer_kernel(const IntMatrix& m, std::size_t ncols) {
  BigMatrix a(ncols, std::vector<BigInt>(m.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) a[j][i] = big(m[i][j]);
  BigMatrix u = detail::identity_big(ncols);
  auto pivots = detail::integer_echelon(a, &u);
  BigMatrix kernel(u.begin() + static_cast<std::ptrdiff_t>(pivots.size()), u.end());
  kernel = hermite_normal_form(std::move(kernel));
  IntMatrix out;
  out.reserve(kernel.size());
  for (auto& row : kernel) {
    IntVector v;
    v.reserve(row.size());
    for (auto& x : row) v.push_back(to_int(x));
    out.push_back(std::move(v));
  }
  return out;
}

/// Some integer solution of m a = rhs, or nothing if none exists.
/// Deterministic: free parameters of the echelon transform are set to zero.
inline std::optional<IntVector> solve_integer(const IntMatrix& m, std::size_t ncols, const IntVector& rhs) {
  const std::size_t rows = m.size();
  BigMatrix a(ncols, std::vector<BigInt>(rows, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) a[j][i] = big(m[i][j]);
  BigMatrix u = detail::identity_big(ncols);
  auto pivots = detail::integer_echelon(a, &u);
  // a = U m^T is echelon; m a = rhs  <=>  a^T y = rhs with solution = U^T y.
  std::vector<BigInt> y(ncols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const std::size_t c = pivots[r];
    BigInt acc = big(rhs[c]);
    for (std::size_t i = 0; i < r; ++i) acc -= a[i][c] * y[i];
    if (!mpz_divisible_p(acc.get_mpz_t(), a[r][c].get_mpz_t())) return std::nullopt;
    mpz_divexact(y[r].get_mpz_t(), acc.get_mpz_t(), a[r][c].get_mpz_t());
  }
  for (std::size_t c = 0; c < rows; ++c) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < pivots.size(); ++i) acc += a[i][c] * y[i];
    if (acc != big(rhs[c])) return std::nullopt;
  }
  IntVector sol(ncols, 0);
  for (std::size_t j = 0; j < ncols; ++j) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < pivots.size(); ++i) acc += u[i][j] * y[i];
    sol[j] = to_int(acc);
  }
  return sol;
}

struct RowEchelon {
  RationalMatrix rows;  ///< reduced row echelon form, zero rows removed
  std::vector<std::size_t> pivots;
};

inline RowEchelon reduced_row_echelon(RationalMatrix a, std::size_t ncols) {
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < ncols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  return {std::move(a), std::move(pivots)};
}

inline std::size_t rank_of(const RationalMatrix& a, std::size_t ncols) {
  return reduced_row_echelon(a, ncols).pivots.size();
}

/// Basis of { x : a x = 0 } over the rationals, one vector per free column.
inline RationalMatrix rational_nullspace(const RationalMatrix& a, std::size_t ncols) {
  auto ech = reduced_row_echelon(a, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  RationalMatrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(ncols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Scales a nonzero rational vector to a primitive integer vector (same direction).
inline IntVector primitive_integer(const RationalVector& v) {
  BigInt l = 1;
  for (auto& x : v) l = lcm(l, BigInt(x.get_den()));
  std::vector<BigInt> w;
  BigInt g = 0;
  for (auto& x : v) {
    BigInt t = BigInt(x.get_num()) * (l / BigInt(x.get_den()));
    g = gcd(g, t);
    w.push_back(t);
  }
  IntVector out;
  for (auto& t : w) out.push_back(to_int(sgn(g) ? BigInt(t / g) : t));
  return out;
}

/// Any solution of a x = b over the rationals (free variables zero).
inline std::optional<RationalVector> solve_rational(const RationalMatrix& a, std::size_t ncols, const RationalVector& b) {
  RationalMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto ech = reduced_row_echelon(aug, ncols + 1);
  RationalVector x(ncols, 0);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    if (ech.pivots[r] == ncols) return std::nullopt;
    x[ech.pivots[r]] = ech.rows[r][ncols];
  }
  return x;
}

/// Bareiss fraction-free determinant.
inline BigInt determinant(BigMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m[p][k]) == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// gcd of all maximal (cols x cols) minors of a rows x cols integer matrix,
/// rows >= cols. Equals 1 exactly when the columns span a saturated sublattice.
inline BigInt gcd_of_maximal_minors(const IntMatrix& m, std::size_t cols) {
  const std::size_t rows = m.size();
  if (cols == 0) return 1;
  if (rows < cols) return 0;
  BigInt g = 0;
  std::vector<std::size_t> pick(cols);
  for (std::size_t i = 0; i < cols; ++i) pick[i] = i;
  while (true) {
    BigMatrix sub(cols, std::vector<BigInt>(cols));
    for (std::size_t i = 0; i < cols; ++i)
      for (std::size_t j = 0; j < cols; ++j) sub[i][j] = big(m[pick[i]][j]);
    g = gcd(g, determinant(std::move(sub)));
    if (g == 1) return g;
    std::size_t i = cols;
    while (i > 0 && pick[i - 1] == rows - cols + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < cols; ++j) pick[j] = pick[j - 1] + 1;
  }
  return g;
}

}  // namespace polytame
