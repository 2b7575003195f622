#pragma once

// Exact lattice polytopes: hulls, facets, faces, lattice points, and the
// standard constructions (join, multiple, product, Minkowski sum, pyramids).

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polytame/errors.hpp"
#include "polytame/integer_linalg.hpp"

namespace polytame {

struct IntPoint {
  IntVector coords;

  IntPoint() = default;
  explicit IntPoint(IntVector c) : coords(std::move(c)) {}
  IntPoint(std::initializer_list<Int> c) : coords(c) {}

  std::size_t dim() const { return coords.size(); }
  Int operator[](std::size_t i) const { return coords[i]; }
  Int& operator[](std::size_t i) { return coords[i]; }

  auto operator<=>(const IntPoint&) const = default;
  bool operator==(const IntPoint&) const = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + std::to_string(coords[i]);
    return s + ")";
  }
};

inline void require_same_dim(const IntPoint& a, const IntPoint& b) {
  if (a.dim() != b.dim()) throw DomainError("point dimension mismatch");
}

inline IntPoint operator+(const IntPoint& a, const IntPoint& b) {
  require_same_dim(a, b);
  IntPoint r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] += b[i];
  return r;
}

inline IntPoint operator-(const IntPoint& a, const IntPoint& b) {
  require_same_dim(a, b);
  IntPoint r = a;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= b[i];
  return r;
}

inline IntPoint scaled(const IntPoint& a, Int c) {
  IntPoint r = a;
  for (auto& x : r.coords) x *= c;
  return r;
}

inline IntPoint concat(const IntPoint& a, const IntPoint& b) {
  IntPoint r = a;
  r.coords.insert(r.coords.end(), b.coords.begin(), b.coords.end());
  return r;
}

inline IntPoint zero_point(std::size_t d) { return IntPoint(IntVector(d, 0)); }

/// normal . x <= offset
struct Facet {
  IntVector normal;
  Int offset = 0;
  auto operator<=>(const Facet&) const = default;
  Int slack(const IntPoint& p) const { return offset - dot(normal, p.coords); }
};

/// normal . x == value
struct AffineEquation {
  IntVector normal;
  Int value = 0;
  auto operator<=>(const AffineEquation&) const = default;
};

class LatticePolytope;
LatticePolytope convex_hull(const std::vector<IntPoint>& points);

class LatticePolytope {
 public:
  /// The empty polytope in R^d.
  static LatticePolytope empty(std::size_t ambient) {
    LatticePolytope p;
    p.ambient_dim_ = ambient;
    p.dim_ = -1;
    return p;
  }

  std::size_t ambient_dim() const { return ambient_dim_; }
  int dim() const { return dim_; }
  bool is_empty() const { return dim_ < 0; }
  const std::vector<IntPoint>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<AffineEquation>& equations() const { return equations_; }
  const std::vector<IntPoint>& lattice_points() const { return lattice_points_; }
  std::size_t num_points() const { return lattice_points_.size(); }

  bool contains(const IntPoint& p) const {
    if (p.dim() != ambient_dim_ || is_empty()) return false;
    for (auto& e : equations_)
      if (dot(e.normal, p.coords) != e.value) return false;
    for (auto& f : facets_)
      if (f.slack(p) < 0) return false;
    return true;
  }

  bool contains(const RationalVector& p) const {
    if (p.size() != ambient_dim_ || is_empty()) return false;
    auto eval = [&](const IntVector& n) {
      Rational s = 0;
      for (std::size_t i = 0; i < n.size(); ++i) s += Rational(big(n[i])) * p[i];
      return s;
    };
    for (auto& e : equations_)
      if (eval(e.normal) != Rational(big(e.value))) return false;
    for (auto& f : facets_)
      if (eval(f.normal) > Rational(big(f.offset))) return false;
    return true;
  }

  std::optional<std::size_t> index_of(const IntPoint& p) const {
    auto it = std::lower_bound(lattice_points_.begin(), lattice_points_.end(), p);
    if (it == lattice_points_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - lattice_points_.begin());
  }

  std::size_t require_index(const IntPoint& p) const {
    auto i = index_of(p);
    if (!i) throw DomainError("point " + p.str() + " is not a lattice point of the polytope");
    return *i;
  }

  bool operator==(const LatticePolytope& o) const {
    return ambient_dim_ == o.ambient_dim_ && vertices_ == o.vertices_;
  }

  /// True when both polytopes have the same lattice-point set.
  bool same_points(const LatticePolytope& o) const {
    return ambient_dim_ == o.ambient_dim_ && lattice_points_ == o.lattice_points_;
  }

 private:
  friend LatticePolytope convex_hull(const std::vector<IntPoint>& points);
  std::size_t ambient_dim_ = 0;
  int dim_ = -1;
  std::vector<IntPoint> vertices_;
  std::vector<Facet> facets_;
  std::vector<AffineEquation> equations_;
  std::vector<IntPoint> lattice_points_;
};

namespace detail {

inline __int128 small_det(std::vector<std::vector<__int128>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  __int128 total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<__int128>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<__int128> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      sub.push_back(std::move(row));
    }
    __int128 d = small_det(std::move(sub));
    total += ((j % 2) ? -1 : 1) * m[0][j] * d;
  }
  return total;
}

inline Int narrow(__int128 v) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
    throw DomainError("integer overflow in polytope computation");
  return static_cast<Int>(v);
}

/// Normal vector orthogonal to k-1 difference vectors in Z^k (generalized cross product).
inline IntVector cross_normal(const std::vector<IntVector>& diffs, std::size_t k) {
  IntVector n(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::vector<__int128>> sub;
    for (auto& d : diffs) {
      std::vector<__int128> row;
      for (std::size_t c = 0; c < k; ++c)
        if (c != j) row.push_back(d[c]);
      sub.push_back(std::move(row));
    }
    __int128 v = small_det(std::move(sub));
    n[j] = narrow((j % 2) ? -v : v);
  }
  Int g = 0;
  for (auto x : n) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (auto& x : n) x /= g;
  return n;
}

struct AffineHull {
  IntPoint base;
  std::vector<std::size_t> pivots;  ///< coordinates on which projection is injective
  RationalMatrix directions;        ///< RREF rows spanning the direction space
  std::vector<AffineEquation> equations;
};

inline AffineHull affine_hull(const std::vector<IntPoint>& pts) {
  AffineHull h;
  h.base = pts[0];
  const std::size_t d = pts[0].dim();
  RationalMatrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RationalVector row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = big(pts[i][j] - pts[0][j]);
    diffs.push_back(std::move(row));
  }
  auto ech = reduced_row_echelon(diffs, d);
  h.pivots = ech.pivots;
  h.directions = ech.rows;
  for (auto& v : rational_nullspace(diffs, d)) {
    IntVector n = primitive_integer(v);
    h.equations.push_back({n, dot(n, pts[0].coords)});
  }
  std::sort(h.equations.begin(), h.equations.end());
  return h;
}

inline IntVector project(const IntPoint& p, const std::vector<std::size_t>& pivots) {
  IntVector r;
  r.reserve(pivots.size());
  for (auto c : pivots) r.push_back(p[c]);
  return r;
}

}  // namespace detail

inline std::size_t lattice_box_limit() { return 20'000'000; }

/// Convex hull of a nonempty set of integer points of uniform dimension.
inline LatticePolytope convex_hull(const std::vector<IntPoint>& input) {
  if (input.empty()) throw DomainError("convex hull of an empty point list");
  const std::size_t d = input[0].dim();
  for (auto& p : input)
    if (p.dim() != d) throw DomainError("convex hull: mixed point dimensions");
  std::vector<IntPoint> pts = input;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  LatticePolytope P;
  P.ambient_dim_ = d;
  auto hull = detail::affine_hull(pts);
  const std::size_t k = hull.pivots.size();
  P.dim_ = static_cast<int>(k);
  P.equations_ = hull.equations;

  if (k == 0) {
    P.vertices_ = {pts[0]};
    P.lattice_points_ = {pts[0]};
    return P;
  }

  std::vector<IntVector> proj;
  for (auto& p : pts) proj.push_back(detail::project(p, hull.pivots));

  // A midpoint of two other points is never a vertex.
  std::vector<std::size_t> cand;
  {
    std::set<IntVector> all(proj.begin(), proj.end());
    std::set<IntVector> inner;
    for (std::size_t i = 0; i < proj.size(); ++i)
      for (std::size_t j = i + 1; j < proj.size(); ++j) {
        IntVector m(k);
        bool even = true;
        for (std::size_t c = 0; c < k && even; ++c) {
          Int s = proj[i][c] + proj[j][c];
          if (s % 2) even = false;
          m[c] = s / 2;
        }
        if (even && all.count(m)) inner.insert(m);
      }
    for (std::size_t i = 0; i < proj.size(); ++i)
      if (!inner.count(proj[i])) cand.push_back(i);
  }

  std::set<Facet> found;

  // Supporting hyperplanes through k affinely independent candidates.
  std::vector<std::size_t> pick(k);
  const std::size_t n = cand.size();
  auto try_subset = [&] {
    std::vector<IntVector> diffs;
    const IntVector& a = proj[cand[pick[0]]];
    for (std::size_t t = 1; t < k; ++t) {
      IntVector dv(k);
      for (std::size_t c = 0; c < k; ++c) dv[c] = proj[cand[pick[t]]][c] - a[c];
      diffs.push_back(std::move(dv));
    }
    IntVector nv = detail::cross_normal(diffs, k);
    if (std::all_of(nv.begin(), nv.end(), [](Int x) { return x == 0; })) return;
    Int b = dot(nv, a);
    bool le = true, ge = true;
    for (auto i : cand) {
      Int v = dot(nv, proj[i]);
      if (v > b) le = false;
      if (v < b) ge = false;
      if (!le && !ge) return;
    }
    if (le) found.insert({nv, b});
    if (ge) {
      for (auto& x : nv) x = -x;
      found.insert({nv, -b});
    }
  };
  if (n >= k) {
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      try_subset();
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  // Lift facets: zeros on non-pivot coordinates.
  std::vector<Facet> projected(found.begin(), found.end());
  for (auto& f : projected) {
    IntVector full(d, 0);
    for (std::size_t c = 0; c < k; ++c) full[hull.pivots[c]] = f.normal[c];
    P.facets_.push_back({full, f.offset});
  }
  std::sort(P.facets_.begin(), P.facets_.end());

  for (auto i : cand) {
    RationalMatrix tight;
    for (auto& f : projected)
      if (dot(f.normal, proj[i]) == f.offset) {
        RationalVector row;
        for (auto x : f.normal) row.push_back(big(x));
        tight.push_back(std::move(row));
      }
    if (rank_of(tight, k) == k) P.vertices_.push_back(pts[i]);
  }

  // Lattice points: scan the projected bounding box, lift through the affine hull.
  IntVector lo(k), hi(k);
  for (std::size_t c = 0; c < k; ++c) {
    lo[c] = hi[c] = proj[0][c];
    for (auto& p : proj) {
      lo[c] = std::min(lo[c], p[c]);
      hi[c] = std::max(hi[c], p[c]);
    }
  }
  double box = 1;
  for (std::size_t c = 0; c < k; ++c) box *= static_cast<double>(hi[c] - lo[c] + 1);
  if (box > static_cast<double>(lattice_box_limit()))
    throw DomainError("polytope too large for lattice-point enumeration");
  IntVector cur = lo;
  while (true) {
    bool inside = true;
    for (auto& f : projected)
      if (dot(f.normal, cur) > f.offset) {
        inside = false;
        break;
      }
    if (inside) {
      IntPoint full = hull.base;
      bool integral = true;
      if (k < d) {
        for (std::size_t j = 0; j < d && integral; ++j) {
          Rational v = big(hull.base[j]);
          for (std::size_t r = 0; r < k; ++r)
            v += Rational(big(cur[r] - hull.base[hull.pivots[r]])) * hull.directions[r][j];
          if (v.get_den() != 1)
            integral = false;
          else
            full[j] = to_int(v);
        }
      } else {
        full = IntPoint(cur);
      }
      if (integral) P.lattice_points_.push_back(full);
    }
    std::size_t c = k;
    while (c > 0 && cur[c - 1] == hi[c - 1]) {
      cur[c - 1] = lo[c - 1];
      --c;
    }
    if (c == 0) break;
    ++cur[c - 1];
  }
  std::sort(P.lattice_points_.begin(), P.lattice_points_.end());
  return P;
}

inline LatticePolytope hull_or_empty(const std::vector<IntPoint>& pts, std::size_t ambient) {
  return pts.empty() ? LatticePolytope::empty(ambient) : convex_hull(pts);
}

/// Affine dimension of a point set (-1 when empty).
inline int affine_dim(const std::vector<IntPoint>& pts) {
  if (pts.empty()) return -1;
  return static_cast<int>(detail::affine_hull(pts).pivots.size());
}

struct FaceDescriptor {
  int dim = -1;
  std::vector<std::size_t> tight_facets;
  std::vector<IntPoint> vertices;
  std::vector<IntPoint> points;  ///< lattice points of the face, lexicographic

  bool is_empty() const { return points.empty(); }
};

namespace detail {

inline std::vector<std::size_t> facets_tight_on(const LatticePolytope& P, const std::vector<IntPoint>& s) {
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < P.facets().size(); ++i) {
    bool all = true;
    for (auto& p : s)
      if (P.facets()[i].slack(p) != 0) {
        all = false;
        break;
      }
    if (all) t.push_back(i);
  }
  return t;
}

template <class Range>
std::vector<IntPoint> tight_subset(const LatticePolytope& P, const Range& pts, const std::vector<std::size_t>& facets) {
  std::vector<IntPoint> r;
  for (auto& p : pts) {
    bool ok = true;
    for (auto i : facets)
      if (P.facets()[i].slack(p) != 0) {
        ok = false;
        break;
      }
    if (ok) r.push_back(p);
  }
  return r;
}

inline FaceDescriptor face_from_facets(const LatticePolytope& P, std::vector<std::size_t> tight) {
  FaceDescriptor f;
  f.vertices = tight_subset(P, P.vertices(), tight);
  f.points = tight_subset(P, P.lattice_points(), tight);
  f.tight_facets = facets_tight_on(P, f.vertices);
  f.dim = affine_dim(f.vertices);
  return f;
}

}  // namespace detail

/// All nonempty faces, ordered by (dim, lattice points).
inline std::vector<FaceDescriptor> enumerate_faces(const LatticePolytope& P) {
  if (P.is_empty()) return {};
  std::set<std::vector<IntPoint>> seen;
  std::vector<std::vector<IntPoint>> queue = {P.vertices()};
  seen.insert(P.vertices());
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    auto cur = queue[qi];
    for (std::size_t fi = 0; fi < P.facets().size(); ++fi) {
      auto sub = detail::tight_subset(P, cur, {fi});
      if (sub.empty() || sub.size() == cur.size()) continue;
      if (seen.insert(sub).second) queue.push_back(sub);
    }
  }
  std::vector<FaceDescriptor> faces;
  for (auto& verts : queue) faces.push_back(detail::face_from_facets(P, detail::facets_tight_on(P, verts)));
  std::sort(faces.begin(), faces.end(), [](const FaceDescriptor& a, const FaceDescriptor& b) {
    return std::tie(a.dim, a.points) < std::tie(b.dim, b.points);
  });
  return faces;
}

/// The face whose lattice points are exactly `s`, if any. Empty `s` gives the empty face.
inline std::optional<FaceDescriptor> face_of_point_set(const LatticePolytope& P, std::vector<IntPoint> s) {
  for (auto& p : s)
    if (!P.index_of(p)) throw DomainError("point set is not contained in the polytope's lattice points");
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) {
    FaceDescriptor f;
    for (std::size_t i = 0; i < P.facets().size(); ++i) f.tight_facets.push_back(i);
    return f;
  }
  auto face = detail::face_from_facets(P, detail::facets_tight_on(P, s));
  if (face.points != s) return std::nullopt;
  return face;
}

/// The face as a polytope in its own right (same ambient space).
inline LatticePolytope face_polytope(const LatticePolytope& P, const FaceDescriptor& f) {
  return hull_or_empty(f.vertices, P.ambient_dim());
}

inline IntPoint join_left(const IntPoint& x, std::size_t other_dim) {
  IntPoint r = x;
  r.coords.resize(x.dim() + other_dim + 1, 0);
  return r;
}

inline IntPoint join_right(const IntPoint& y, std::size_t other_dim) {
  IntPoint r = zero_point(other_dim);
  r.coords.insert(r.coords.end(), y.coords.begin(), y.coords.end());
  r.coords.push_back(1);
  return r;
}

/// conv of the two skew embeddings (x,0,0) and (0,y,1).
inline LatticePolytope join(const LatticePolytope& P, const LatticePolytope& Q) {
  const std::size_t m = P.ambient_dim(), n = Q.ambient_dim();
  std::vector<IntPoint> pts;
  for (auto& v : P.vertices()) pts.push_back(join_left(v, n));
  for (auto& v : Q.vertices()) pts.push_back(join_right(v, m));
  auto J = hull_or_empty(pts, m + n + 1);
  if (J.num_points() != P.num_points() + Q.num_points())
    throw DomainError("join introduced new lattice points");
  return J;
}

inline LatticePolytope multiple(const LatticePolytope& P, Int c) {
  if (c <= 0) throw DomainError("multiple requires a positive factor");
  std::vector<IntPoint> pts;
  for (auto& v : P.vertices()) pts.push_back(scaled(v, c));
  return hull_or_empty(pts, P.ambient_dim());
}

inline LatticePolytope product(const LatticePolytope& P, const LatticePolytope& Q) {
  std::vector<IntPoint> pts;
  for (auto& a : P.vertices())
    for (auto& b : Q.vertices()) pts.push_back(concat(a, b));
  auto R = hull_or_empty(pts, P.ambient_dim() + Q.ambient_dim());
  std::vector<IntPoint> expect;
  for (auto& a : P.lattice_points())
    for (auto& b : Q.lattice_points()) expect.push_back(concat(a, b));
  if (R.lattice_points() != expect) throw DomainError("product lattice points are not the cartesian product");
  return R;
}

inline LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q) {
  if (P.ambient_dim() != Q.ambient_dim()) throw DomainError("Minkowski sum: dimension mismatch");
  std::vector<IntPoint> pts;
  for (auto& a : P.vertices())
    for (auto& b : Q.vertices()) pts.push_back(a + b);
  return hull_or_empty(pts, P.ambient_dim());
}

inline LatticePolytope translate(const LatticePolytope& P, const IntPoint& w) {
  std::vector<IntPoint> pts;
  for (auto& v : P.vertices()) pts.push_back(v + w);
  return hull_or_empty(pts, P.ambient_dim());
}

struct Pyramid {
  IntPoint apex;
  LatticePolytope base;
};

/// Whether P is a lattice pyramid with apex v: L(P) = {v} u L(base), dim base = dim P - 1.
inline std::optional<LatticePolytope> pyramid_base(const LatticePolytope& P, const IntPoint& v) {
  if (!P.index_of(v)) return std::nullopt;
  if (std::find(P.vertices().begin(), P.vertices().end(), v) == P.vertices().end()) return std::nullopt;
  std::vector<IntPoint> rest;
  for (auto& p : P.lattice_points())
    if (p != v) rest.push_back(p);
  if (affine_dim(rest) != P.dim() - 1) return std::nullopt;
  return hull_or_empty(rest, P.ambient_dim());
}

/// Lexicographically smallest apex presenting P as a lattice pyramid.
inline std::optional<Pyramid> pyramid_apex(const LatticePolytope& P) {
  for (auto& v : P.vertices())
    if (auto base = pyramid_base(P, v)) return Pyramid{v, *base};
  return std::nullopt;
}

/// All a >= 0 over L(P) with sum a = c and sum a_i x_i = x, in lexicographic order.
inline std::vector<IntVector> height_representations(const LatticePolytope& P, Int c, const IntPoint& x) {
  if (c <= 0) throw DomainError("height must be positive");
  if (!multiple(P, c).index_of(x)) throw DomainError("point " + x.str() + " is not in L(cP)");
  const auto& L = P.lattice_points();
  const std::size_t n = L.size();
  std::vector<IntVector> out;
  IntVector a(n, 0);
  IntPoint acc = zero_point(P.ambient_dim());
  std::size_t visited = 0;
  auto rec = [&](auto&& self, std::size_t i, Int left) -> void {
    if (++visited > 5'000'000) throw DomainError("height representation search too large");
    if (i + 1 == n) {
      a[i] = left;
      IntPoint s = acc + scaled(L[i], left);
      if (s == x) out.push_back(a);
      a[i] = 0;
      return;
    }
    for (Int t = left; t >= 0; --t) {
      a[i] = t;
      IntPoint saved = acc;
      acc = acc + scaled(L[i], t);
      self(self, i + 1, left - t);
      acc = saved;
    }
    a[i] = 0;
  };
  if (n > 0) rec(rec, 0, c);
  std::sort(out.begin(), out.end());
  return out;
}

/// Some integer a (possibly negative) over L(P) with sum a = c and sum a_i x_i = x.
inline std::optional<IntVector> integer_representation(const LatticePolytope& P, Int c, const IntPoint& x) {
  const auto& L = P.lattice_points();
  const std::size_t d = P.ambient_dim();
  IntMatrix m(d + 1, IntVector(L.size()));
  for (std::size_t j = 0; j < L.size(); ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = L[j][i];
    m[d][j] = 1;
  }
  IntVector rhs = x.coords;
  rhs.push_back(c);
  return solve_integer(m, L.size(), rhs);
}

/// x -> matrix * x + offset with rational entries.
struct AffineRationalMap {
  RationalMatrix matrix;  ///< l rows, d columns
  RationalVector offset;  ///< length l

  std::size_t target_dim() const { return offset.size(); }

  RationalVector operator()(const RationalVector& x) const {
    RationalVector r = offset;
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) r[i] += matrix[i][j] * x[j];
    return r;
  }

  RationalVector operator()(const IntPoint& x) const {
    RationalVector v;
    for (auto c : x.coords) v.push_back(big(c));
    return (*this)(v);
  }

  IntVector integral_value(const IntPoint& x) const {
    IntVector r;
    for (auto& v : (*this)(x)) r.push_back(to_int(v));
    return r;
  }

  bool integral_on(const std::vector<IntPoint>& pts) const {
    for (auto& p : pts)
      for (auto& v : (*this)(p))
        if (v.get_den() != 1) return false;
    return true;
  }

  /// The affine map with the given values at the given points, constant
  /// along directions normal to their affine hull. Throws when the values
  /// are not affine in the points.
  static AffineRationalMap fit(const std::vector<IntPoint>& pts, const std::vector<IntVector>& values) {
    if (pts.empty() || pts.size() != values.size()) throw DomainError("affine fit: bad input sizes");
    const std::size_t d = pts[0].dim(), l = values[0].size();
    auto hull = detail::affine_hull(pts);
    const std::size_t k = hull.pivots.size();
    // Greedy affine basis.
    std::vector<std::size_t> basis = {0};
    RationalMatrix diffs;
    for (std::size_t i = 1; i < pts.size() && basis.size() < k + 1; ++i) {
      RationalVector row;
      for (auto c : hull.pivots) row.push_back(big(pts[i][c] - pts[0][c]));
      auto trial = diffs;
      trial.push_back(row);
      if (rank_of(trial, k) > diffs.size()) {
        diffs = std::move(trial);
        basis.push_back(i);
      }
    }
    RationalMatrix sys;
    for (auto b : basis) {
      RationalVector row;
      for (auto c : hull.pivots) row.push_back(big(pts[b][c]));
      row.push_back(1);
      sys.push_back(std::move(row));
    }
    AffineRationalMap m;
    m.matrix.assign(l, RationalVector(d, 0));
    m.offset.assign(l, 0);
    for (std::size_t r = 0; r < l; ++r) {
      RationalVector rhs;
      for (auto b : basis) rhs.push_back(big(values[b][r]));
      auto sol = solve_rational(sys, k + 1, rhs);
      if (!sol) throw DomainError("affine fit: singular system");
      for (std::size_t c = 0; c < k; ++c) m.matrix[r][hull.pivots[c]] = (*sol)[c];
      m.offset[r] = (*sol)[k];
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto v = m(pts[i]);
      for (std::size_t r = 0; r < l; ++r)
        if (v[r] != Rational(big(values[i][r]))) throw DomainError("values are not affine on the points");
    }
    return m;
  }
};

}  // namespace polytame
