#pragma once

// Random generators and brute-force oracles shared by the unit tests and
// the acceptance driver. The oracles avoid the library's own linear algebra.

#include <algorithm>
#include <functional>
#include <random>
#include <tuple>
#include <vector>

#include "polytame/polytame.hpp"

namespace support {

using namespace polytame;
using Rng = std::mt19937_64;

inline Int uniform(Rng& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

/// Exact Gauss-Jordan solve of a (rows x cols) system; nullopt if inconsistent or not unique.
inline std::optional<RationalVector> solve_unique(RationalMatrix a, RationalVector b) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) return std::nullopt;  // free column
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r < cols) return std::nullopt;
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  RationalVector x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
  return x;
}

inline RationalVector as_rational(const IntPoint& p) {
  RationalVector v;
  for (auto c : p.coords) v.push_back(Rational(static_cast<long>(c)));
  return v;
}

/// Whether p lies in conv(pts), by Caratheodory over all subsets of size <= d+1.
inline bool in_hull_oracle(const RationalVector& p, const std::vector<IntPoint>& pts) {
  const std::size_t d = p.size(), n = pts.size();
  for (std::size_t size = 1; size <= std::min(n, d + 1); ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) idx.push_back(i);
      RationalMatrix a(d + 1, RationalVector(size));
      RationalVector b(d + 1);
      for (std::size_t j = 0; j < size; ++j) {
        for (std::size_t i = 0; i < d; ++i) a[i][j] = Rational(static_cast<long>(pts[idx[j]].coords[i]));
        a[d][j] = 1;
      }
      for (std::size_t i = 0; i < d; ++i) b[i] = p[i];
      b[d] = 1;
      if (auto lam = solve_unique(a, b))
        if (std::all_of(lam->begin(), lam->end(), [](const Rational& x) { return x >= 0; })) return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return false;
}

inline bool in_hull_oracle(const IntPoint& p, const std::vector<IntPoint>& pts) {
  return in_hull_oracle(as_rational(p), pts);
}

/// Extreme points of a finite set: those not in the hull of the others.
inline std::vector<IntPoint> extreme_points_oracle(std::vector<IntPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<IntPoint> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<IntPoint> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (others.empty() || !in_hull_oracle(pts[i], others)) out.push_back(pts[i]);
  }
  return out;
}

/// Integer points of conv(pts) by scanning the bounding box.
inline std::vector<IntPoint> lattice_points_oracle(const std::vector<IntPoint>& pts) {
  const std::size_t d = pts[0].dim();
  IntVector lo = pts[0].coords, hi = pts[0].coords;
  for (auto& p : pts)
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], p.coords[i]);
      hi[i] = std::max(hi[i], p.coords[i]);
    }
  std::vector<IntPoint> out;
  IntVector cur = lo;
  while (true) {
    IntPoint c(cur);
    if (in_hull_oracle(c, pts)) out.push_back(c);
    std::size_t i = d;
    while (i > 0 && cur[i - 1] == hi[i - 1]) {
      cur[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) return out;
    ++cur[i - 1];
  }
}

/// All u with |u_i| <= bound and sum u_i (x_i, 1) = 0, excluding u = 0.
inline std::vector<IntVector> kernel_box(const std::vector<IntPoint>& pts, Int bound) {
  const std::size_t m = pts.size(), d = m ? pts[0].dim() : 0;
  std::vector<IntVector> out;
  IntVector u(m, -bound);
  if (m == 0) return out;
  while (true) {
    bool zero = std::all_of(u.begin(), u.end(), [](Int x) { return x == 0; });
    if (!zero) {
      bool in = true;
      Int s = 0;
      for (auto x : u) s += x;
      if (s != 0) in = false;
      for (std::size_t k = 0; in && k < d; ++k) {
        Int t = 0;
        for (std::size_t i = 0; i < m; ++i) t += u[i] * pts[i].coords[k];
        if (t != 0) in = false;
      }
      if (in) out.push_back(u);
    }
    std::size_t i = 0;
    while (i < m && u[i] == bound) u[i++] = -bound;
    if (i == m) break;
    ++u[i];
  }
  return out;
}

/// Multiplies out prod f(x_i)^{e_i} directly from the image table.
inline RingElement image_product(const GradedHom& f, const IntVector& e) {
  RingElement r = RingElement::constant(f.field(), f.cod().ambient_dim(), 1);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (Int k = 0; k < e[i]; ++k) r = r * f.image(i);
  return r;
}

/// Well-definedness by checking every small kernel vector.
inline bool relations_hold_exhaustively(const GradedHom& f, Int bound = 3) {
  for (auto& u : kernel_box(f.dom().lattice_points(), bound)) {
    IntVector pos(u.size()), neg(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      pos[i] = std::max<Int>(u[i], 0);
      neg[i] = std::max<Int>(-u[i], 0);
    }
    if (!(image_product(f, pos) == image_product(f, neg))) return false;
  }
  return true;
}

/// Random lattice polytope from a few points in [lo, hi]^d with at most max_points lattice points.
inline LatticePolytope random_polytope(Rng& rng, std::size_t d, std::size_t max_points, Int lo = 0, Int hi = 2,
                                       std::size_t npts = 0) {
  while (true) {
    std::size_t n = npts ? npts : static_cast<std::size_t>(uniform(rng, 1, static_cast<Int>(d) + 2));
    std::vector<IntPoint> pts;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector c(d);
      for (auto& x : c) x = uniform(rng, lo, hi);
      pts.emplace_back(c);
    }
    auto P = convex_hull(pts);
    if (P.num_points() <= max_points) return P;
  }
}

inline Rational random_scalar(Rng& rng, Field k, bool nonzero = true) {
  while (true) {
    Rational r;
    if (k.is_rational()) {
      r = Rational(static_cast<long>(uniform(rng, -3, 3)), static_cast<unsigned long>(uniform(rng, 1, 2)));
      r.canonicalize();
    } else
      r = k.normalize(Rational(static_cast<long>(uniform(rng, 0, k.characteristic() - 1))));
    if (!nonzero || r != 0) return r;
  }
}

/// Random degree-1 element with up to nterms terms on L(cod).
inline RingElement random_degree_one(Rng& rng, Field k, const LatticePolytope& cod, std::size_t nterms) {
  RingElement e(k, cod.ambient_dim());
  const auto& L = cod.lattice_points();
  for (std::size_t t = 0; t < nterms; ++t) {
    const auto& y = L[static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(L.size()) - 1))];
    e = e + generator(k, y, random_scalar(rng, k));
  }
  return e;
}

/// Random element of degree 0 with small exponents in nvars variables.
inline RingElement random_poly(Rng& rng, Field k, std::size_t nvars, std::size_t nterms, Int maxexp) {
  RingElement e(k, nvars);
  for (std::size_t t = 0; t < nterms; ++t) {
    IntVector ex(nvars);
    for (auto& x : ex) x = uniform(rng, 0, maxexp);
    e = e + RingElement::monomial(k, IntPoint(ex), 0, random_scalar(rng, k));
  }
  return e;
}

/// A verified hom k[P] -> k[R] built from a random affine exponent map on a
/// few random irreducible-ish polynomials; R is the smallest box that fits.
inline GradedHom random_discrete_hom(Rng& rng, Field k, const LatticePolytope& P, std::size_t nvars,
                                     const std::vector<RingElement>& polys, Int coef_hi, bool with_units) {
  const std::size_t d = P.ambient_dim(), l = polys.size();
  IntMatrix A(l, IntVector(d));
  IntVector t(l);
  for (auto& row : A)
    for (auto& x : row) x = uniform(rng, -coef_hi, coef_hi);
  for (auto& x : t) x = uniform(rng, 0, coef_hi);
  const auto& L = P.lattice_points();
  std::vector<IntVector> alpha;
  for (auto& x : L) {
    IntVector a(l);
    for (std::size_t r = 0; r < l; ++r) a[r] = dot(A[r], x.coords) + t[r];
    alpha.push_back(a);
  }
  for (std::size_t r = 0; r < l; ++r) {
    Int mn = alpha[0][r];
    for (auto& a : alpha) mn = std::min(mn, a[r]);
    for (auto& a : alpha) a[r] -= mn;
  }
  // Units s * r^(w.x - min) are multiplicatively affine, so they respect every relation.
  const Rational s = with_units ? random_scalar(rng, k) : Rational(1);
  const Rational r = with_units ? random_scalar(rng, k) : Rational(1);
  IntVector w(d);
  for (auto& x : w) x = uniform(rng, -1, 1);
  Int wmin = 0;
  for (std::size_t i = 0; i < L.size(); ++i) wmin = std::min(wmin, dot(w, L[i].coords));
  std::vector<RingElement> imgs;
  std::vector<IntPoint> support;
  for (std::size_t i = 0; i < L.size(); ++i) {
    Rational u = s;
    for (Int e = 0; e < dot(w, L[i].coords) - wmin; ++e) u = k.mul(u, r);
    RingElement e = RingElement::constant(k, nvars, u);
    for (std::size_t r = 0; r < l; ++r) e = e * polys[r].pow(alpha[i][r]);
    RingElement h(k, nvars);
    for (auto& [m, c] : e.terms()) {
      h.add_term({m.exponents, 1}, c);
      support.push_back(m.point());
    }
    imgs.push_back(h);
  }
  IntVector lo = support[0].coords, hi = support[0].coords;
  for (auto& p : support)
    for (std::size_t i = 0; i < nvars; ++i) {
      lo[i] = std::min(lo[i], p.coords[i]);
      hi[i] = std::max(hi[i], p.coords[i]);
    }
  std::vector<IntPoint> box;
  for (std::size_t mask = 0; mask < (std::size_t{1} << nvars); ++mask) {
    IntVector c(nvars);
    for (std::size_t i = 0; i < nvars; ++i) c[i] = (mask >> i) & 1 ? hi[i] : lo[i];
    box.emplace_back(c);
  }
  return verified(GradedHom(P, convex_hull(box), k, std::move(imgs)));
}

/// Every (v, phi) with Phi(c x_i) = v + c phi_i and v, phi_i nonnegative integral, found by
/// scanning each v_k over 0..min.
inline std::vector<std::pair<IntVector, std::vector<IntVector>>> all_multiple_splits(
    const std::vector<IntVector>& at, Int c) {
  const std::size_t l = at.empty() ? 0 : at[0].size();
  std::vector<std::vector<Int>> per_coord(l);
  for (std::size_t k = 0; k < l; ++k) {
    Int mn = at[0][k];
    for (auto& a : at) mn = std::min(mn, a[k]);
    for (Int v = 0; v <= mn; ++v) {
      bool ok = true;
      for (auto& a : at) ok = ok && (a[k] - v) % c == 0;
      if (ok) per_coord[k].push_back(v);
    }
  }
  std::vector<std::pair<IntVector, std::vector<IntVector>>> out;
  std::vector<std::size_t> idx(l, 0);
  for (auto& pc : per_coord)
    if (pc.empty()) return out;
  while (true) {
    IntVector v(l);
    for (std::size_t k = 0; k < l; ++k) v[k] = per_coord[k][idx[k]];
    std::vector<IntVector> phi;
    for (auto& a : at) {
      IntVector p(l);
      for (std::size_t k = 0; k < l; ++k) p[k] = (a[k] - v[k]) / c;
      phi.push_back(p);
    }
    out.emplace_back(v, phi);
    std::size_t k = 0;
    while (k < l && ++idx[k] == per_coord[k].size()) idx[k++] = 0;
    if (k == l) break;
  }
  return out;
}

/// Every nonnegative split alpha(i,j) = p_i + q_j + b with min_i p_ik = min_j q_jk = 0, by exhausting
/// b_k and p_0k per coordinate (the remaining entries are then forced).
inline std::vector<std::tuple<std::vector<IntVector>, std::vector<IntVector>, IntVector>> minimal_product_splits(
    const std::vector<IntVector>& alpha, std::size_t m, std::size_t n) {
  const std::size_t l = alpha[0].size();
  auto at = [&](std::size_t i, std::size_t j) { return alpha[i * n + j]; };
  std::vector<std::vector<std::tuple<IntVector, IntVector, Int>>> per_coord(l);
  for (std::size_t k = 0; k < l; ++k) {
    const Int a00 = at(0, 0)[k];
    for (Int b = 0; b <= a00; ++b)
      for (Int p0 = 0; p0 + b <= a00; ++p0) {
        IntVector p(m), q(n);
        const Int q0 = a00 - b - p0;
        for (std::size_t j = 0; j < n; ++j) q[j] = at(0, j)[k] - p0 - b;
        for (std::size_t i = 0; i < m; ++i) p[i] = at(i, 0)[k] - q0 - b;
        bool ok = *std::min_element(p.begin(), p.end()) == 0 && *std::min_element(q.begin(), q.end()) == 0;
        for (std::size_t i = 0; ok && i < m; ++i)
          for (std::size_t j = 0; ok && j < n; ++j) ok = at(i, j)[k] == p[i] + q[j] + b;
        if (ok) per_coord[k].emplace_back(p, q, b);
      }
  }
  std::vector<std::tuple<std::vector<IntVector>, std::vector<IntVector>, IntVector>> out;
  for (auto& pc : per_coord)
    if (pc.empty()) return out;
  std::vector<std::size_t> idx(l, 0);
  while (true) {
    std::vector<IntVector> P(m, IntVector(l)), Q(n, IntVector(l));
    IntVector b(l);
    for (std::size_t k = 0; k < l; ++k) {
      auto& [p, q, bk] = per_coord[k][idx[k]];
      for (std::size_t i = 0; i < m; ++i) P[i][k] = p[i];
      for (std::size_t j = 0; j < n; ++j) Q[j][k] = q[j];
      b[k] = bk;
    }
    out.emplace_back(P, Q, b);
    std::size_t k = 0;
    while (k < l && ++idx[k] == per_coord[k].size()) idx[k++] = 0;
    if (k == l) break;
  }
  return out;
}

/// Whether pts are exactly the lattice points of a face of P.
inline bool is_face_of(const LatticePolytope& P, const LatticePolytope& F) {
  if (F.ambient_dim() != P.ambient_dim()) return false;
  for (auto& x : F.lattice_points())
    if (!P.index_of(x)) return false;
  auto desc = face_of_point_set(P, F.lattice_points());
  return desc && desc->points.size() == F.num_points();
}

}  // namespace support
