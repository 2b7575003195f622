#pragma once

// Constructive decomposition of graded homomorphisms out of joins, multiples
// and products into certificate trees whose only non-standard leaves are
// homomorphisms out of the factor polytopes (or their faces).

#include <algorithm>
#include <set>
#include <variant>
#include <vector>

#include "polytame/discrete_form.hpp"
#include "polytame/errors.hpp"
#include "polytame/tame_calculus.hpp"

namespace polytame {

struct JoinStructure {
  LatticePolytope P, Q;
};
struct MultipleStructure {
  LatticePolytope P;
  Int c = 1;
};
struct ProductStructure {
  LatticePolytope P, Q;
};
using DomainStructure = std::variant<JoinStructure, MultipleStructure, ProductStructure>;

namespace detail {

inline GradedHom ensure_verified(const GradedHom& f) { return f.is_verified() ? f : verified(f); }

/// Componentwise minimum of the codomain's lattice points.
inline IntPoint lower_corner(const LatticePolytope& R) {
  IntPoint m = R.lattice_points().at(0);
  for (auto& p : R.lattice_points())
    for (std::size_t i = 0; i < m.dim(); ++i) m[i] = std::min(m[i], p[i]);
  return m;
}

/// Same hom with the codomain translated by w.
inline GradedHom translate_hom(const GradedHom& f, const IntPoint& w) {
  std::vector<RingElement> img;
  for (auto& e : f.images()) {
    RingElement r(e.field(), e.nvars());
    for (auto& [m, c] : e.terms()) r.add_term({(m.point() + scaled(w, m.degree)).coords, m.degree}, c);
    img.push_back(std::move(r));
  }
  GradedHom g(f.dom(), translate(f.cod(), w), f.field(), std::move(img));
  if (f.is_verified()) g.mark_verified();
  return g;
}

inline IntPoint negate(IntPoint p) {
  for (auto& x : p.coords) x = -x;
  return p;
}

/// prod_k irreducibles[k]^e[k] as a degree-0 element.
inline RingElement irreducible_power(const DiscreteHom& d, const IntVector& e) {
  RingElement r = RingElement::constant(d.field, d.codomain.ambient_dim(), 1);
  for (std::size_t k = 0; k < e.size(); ++k)
    if (e[k] > 0) r = r * d.irreducibles[k].pow(e[k]);
  return r;
}

inline void add_vertices(std::vector<IntPoint>& pts, const RingElement& e) {
  if (e.is_zero()) return;
  auto N = newton_polytope(e);
  pts.insert(pts.end(), N.vertices().begin(), N.vertices().end());
}

inline std::vector<IntPoint> pairwise_sums(const std::vector<IntPoint>& a, const std::vector<IntPoint>& b) {
  std::vector<IntPoint> r;
  for (auto& x : a)
    for (auto& y : b) r.push_back(x + y);
  return r;
}

inline LatticePolytope hull_with_origin(std::vector<IntPoint> pts, std::size_t ambient) {
  pts.push_back(zero_point(ambient));
  return convex_hull(pts);
}

/// k[dom] -> k[pt] -> k[target]: the constant hom x -> q, as a free extension of k -> k.
inline CertPtr constant_cert(const LatticePolytope& dom, const LatticePolytope& target, const RingElement& q) {
  const Field k = q.field();
  auto point = convex_hull({IntPoint()});
  auto ext = make_cert(cert::FreeExtension{make_cert(cert::IdentityK{k, target, 0}), IntPoint(), q});
  std::vector<IntPoint> to_point(dom.num_points(), IntPoint());
  auto collapse = make_cert(cert::MonomialMap{dom, point, k, to_point});
  return make_cert(cert::Compose{ext, collapse});
}

inline CertPtr finish(CertPtr c, const LatticePolytope& restricted_cod, const IntPoint& shift) {
  c = make_cert(cert::PolytopeChange{c, std::nullopt, std::nullopt, restricted_cod, std::nullopt});
  if (std::any_of(shift.coords.begin(), shift.coords.end(), [](Int x) { return x != 0; }))
    c = make_cert(cert::PolytopeChange{c, std::nullopt, std::nullopt, std::nullopt, LatticeMap::translation(shift)});
  return c;
}

inline void require_round_trip(const CertPtr& c, const GradedHom& f, const char* what) {
  if (!check_cert(c, f)) {
    replay(c);  // surfaces the node-level error if there is one
    throw DomainError(std::string(what) + ": certificate does not reproduce the homomorphism");
  }
}

}  // namespace detail

struct StrippedHom {
  bool trivial = true;     ///< no kernel monomials; prefix is the identity
  CertPtr prefix;          ///< k[dom] -> k[F]: face retraction followed by codomain restriction
  FaceDescriptor face;     ///< the face F carrying the nonzero images
  GradedHom reduced;       ///< k[F] -> k[cod], no kernel monomials
};

/// Factors f as reduced o (retraction onto the face of nonzero images).
inline StrippedHom strip_kernel_monomials(const GradedHom& f_in) {
  GradedHom f = detail::ensure_verified(f_in);
  const Field k = f.field();
  const auto& D = f.dom();
  StrippedHom s;
  auto support = nonzero_set(f);
  auto F = face_of_point_set(D, support);
  if (!F) throw DomainError("nonzero generators do not form a face; not a valid homomorphism");
  s.face = *F;
  if (support.size() == D.num_points()) {
    s.trivial = true;
    s.prefix = make_cert(cert::MonomialMap{D, D, k, D.lattice_points()});
    s.reduced = f;
    return s;
  }
  s.trivial = false;
  auto face_poly = face_polytope(D, *F);
  s.prefix = make_cert(cert::PolytopeChange{make_cert(cert::FaceRetraction{D, F->points, k}), std::nullopt,
                                            std::nullopt, face_poly, std::nullopt});
  std::vector<RingElement> img;
  for (auto& x : face_poly.lattice_points()) img.push_back(f.image(x));
  s.reduced = GradedHom(face_poly, f.cod(), k, std::move(img)).mark_verified();
  return s;
}

struct MultipleSplit {
  IntVector v;                         ///< translation part
  AffineRationalMap phi;               ///< affine map on the base polytope
  std::vector<IntVector> phi_values;   ///< phi at L(P)
};

/// Phi(c x) = v + c phi(x) with v the componentwise minimum of Phi(c x_i) over all generators.
inline MultipleSplit split_multiple_exponents(const AffineRationalMap& Phi, Int c, const LatticePolytope& P) {
  if (c <= 0) throw DomainError("multiple split: factor must be positive");
  const auto& L = P.lattice_points();
  const std::size_t l = Phi.target_dim();
  const auto cP = multiple(P, c);
  for (auto& y : cP.lattice_points())
    for (auto& val : Phi(y))
      if (val.get_den() != 1 || sgn(val) < 0) throw DomainError("multiple split: map is not nonnegative integral on L(cP)");
  MultipleSplit s;
  s.v.assign(l, 0);
  std::vector<IntVector> at;
  for (auto& x : L) at.push_back(Phi.integral_value(scaled(x, c)));
  for (std::size_t k = 0; k < l; ++k) {
    s.v[k] = at[0][k];
    for (auto& a : at) s.v[k] = std::min(s.v[k], a[k]);
  }
  s.phi.matrix = Phi.matrix;
  s.phi.offset = Phi.offset;
  for (std::size_t k = 0; k < l; ++k) s.phi.offset[k] = (Phi.offset[k] - Rational(big(s.v[k]))) / Rational(big(c));
  for (std::size_t i = 0; i < L.size(); ++i) {
    IntVector val(l);
    auto r = s.phi(L[i]);
    for (std::size_t k = 0; k < l; ++k) {
      if (r[k].get_den() != 1 || sgn(r[k]) < 0)
        throw DomainError("multiple split: divisibility failure; map does not come from an integral map on cP");
      val[k] = to_int(r[k]);
      if (at[i][k] != s.v[k] + c * val[k]) throw DomainError("multiple split: postcondition failed");
    }
    s.phi_values.push_back(std::move(val));
  }
  return s;
}

struct ProductSplit {
  IntVector u_P, u_Q;
  std::vector<IntVector> p;  ///< over L(P)
  std::vector<IntVector> q;  ///< over L(Q)
  IntVector b;
};

/// alpha(x_i, y_j) = p_i + q_j + b with p, q the minimal translates.
inline ProductSplit split_product_exponents(const std::vector<IntVector>& alpha, const LatticePolytope& P,
                                            const LatticePolytope& Q) {
  const std::size_t m = P.num_points(), n = Q.num_points();
  if (alpha.size() != m * n || m == 0 || n == 0) throw DomainError("product split: table has the wrong size");
  const std::size_t l = alpha[0].size();
  for (auto& a : alpha) {
    if (a.size() != l) throw DomainError("product split: ragged table");
    for (auto x : a)
      if (x < 0) throw DomainError("product split: negative exponent");
  }
  auto at = [&](std::size_t i, std::size_t j) -> const IntVector& { return alpha[i * n + j]; };
  ProductSplit s;
  s.u_P.assign(l, 0);
  s.u_Q.assign(l, 0);
  for (std::size_t k = 0; k < l; ++k) {
    s.u_P[k] = at(0, 0)[k];
    for (std::size_t i = 0; i < m; ++i) s.u_P[k] = std::min(s.u_P[k], at(i, 0)[k]);
    s.u_Q[k] = at(0, 0)[k];
    for (std::size_t j = 0; j < n; ++j) s.u_Q[k] = std::min(s.u_Q[k], at(0, j)[k]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    IntVector v(l);
    for (std::size_t k = 0; k < l; ++k) v[k] = at(i, 0)[k] - s.u_P[k];
    s.p.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < n; ++j) {
    IntVector v(l);
    for (std::size_t k = 0; k < l; ++k) v[k] = at(0, j)[k] - s.u_Q[k];
    s.q.push_back(std::move(v));
  }
  s.b.assign(l, 0);
  for (std::size_t k = 0; k < l; ++k) {
    s.b[k] = at(0, 0)[k] - s.p[0][k] - s.q[0][k];
    if (s.b[k] < 0) throw DomainError("product split: negative constant part; map is not affine");
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < l; ++k)
        if (at(i, j)[k] != s.p[i][k] + s.q[j][k] + s.b[k])
          throw DomainError("product split: table does not split; map is not affine on the product");
  return s;
}

/// Certificate for f: k[cP] -> k[R] without kernel monomials.
inline CertPtr decompose_multiple(const GradedHom& f_in, const LatticePolytope& P, Int c) {
  GradedHom f = detail::ensure_verified(f_in);
  const auto cP = multiple(P, c);
  if (!f.dom().same_points(cP)) throw DomainError("domain is not the stated multiple of the base polytope");
  if (!zero_set(f).empty()) throw DomainError("kernel monomials present; strip them first");
  const Field k = f.field();
  const std::size_t e = f.cod().ambient_dim();
  const IntPoint shift = detail::lower_corner(f.cod());
  GradedHom g = detail::translate_hom(f, detail::negate(shift));
  const auto& Rp = g.cod();

  DiscreteHom d = to_discrete(g);
  auto split = split_multiple_exponents(alpha_map(d), c, P);

  const auto& L = P.lattice_points();
  const Rational s = d.units[cP.require_index(scaled(L[0], c))];
  std::vector<RingElement> theta;
  std::vector<IntPoint> theta_pts;
  for (std::size_t i = 0; i < L.size(); ++i) {
    IntPoint y = scaled(L[0], c - 1) + L[i];
    Rational t = k.div(d.units[cP.require_index(y)], s);
    RingElement th = rehomogenize(detail::irreducible_power(d, split.phi_values[i]).scaled(t));
    detail::add_vertices(theta_pts, th);
    theta.push_back(std::move(th));
  }
  auto T_theta = detail::hull_with_origin(theta_pts, e);
  GradedHom Theta(P, T_theta, k, std::move(theta));
  RingElement psi = rehomogenize(detail::irreducible_power(d, split.v).scaled(s));

  std::vector<IntPoint> psi_pts, blown;
  detail::add_vertices(psi_pts, psi);
  for (auto& v : T_theta.vertices()) blown.push_back(scaled(v, c));
  std::vector<IntPoint> w_pts = Rp.lattice_points();
  w_pts.insert(w_pts.end(), blown.begin(), blown.end());
  w_pts.insert(w_pts.end(), psi_pts.begin(), psi_pts.end());
  for (auto& p : detail::pairwise_sums(psi_pts, blown)) w_pts.push_back(p);
  auto W = detail::hull_with_origin(w_pts, e);

  auto psi_cert = detail::constant_cert(cP, W, psi);
  auto blow = make_cert(cert::HomotheticBlowup{make_cert(cert::AssumedTame{Theta, kAssumedReason}), c});
  blow = make_cert(cert::PolytopeChange{blow, std::nullopt, std::nullopt, W, std::nullopt});
  auto star = make_cert(cert::MinkowskiStar{psi_cert, blow, W});
  auto result = detail::finish(star, Rp, shift);
  detail::require_round_trip(result, f, "multiple decomposition");
  return result;
}

/// Certificate for f: k[P x Q] -> k[R] without kernel monomials.
inline CertPtr decompose_product(const GradedHom& f_in, const LatticePolytope& P, const LatticePolytope& Q) {
  GradedHom f = detail::ensure_verified(f_in);
  const auto PQ = product(P, Q);
  if (!f.dom().same_points(PQ)) throw DomainError("domain is not the product of the stated factors");
  if (!zero_set(f).empty()) throw DomainError("kernel monomials present; strip them first");
  const Field k = f.field();
  const std::size_t e = f.cod().ambient_dim();
  const IntPoint shift = detail::lower_corner(f.cod());
  GradedHom g = detail::translate_hom(f, detail::negate(shift));
  const auto& Rp = g.cod();

  DiscreteHom d = to_discrete(g);
  auto split = split_product_exponents(d.alpha, P, Q);
  const std::size_t m = P.num_points(), n = Q.num_points();
  const Rational u00 = d.units[0];

  std::vector<RingElement> pi, rho;
  std::vector<IntPoint> a_pts, b_pts, beta_pts;
  for (std::size_t i = 0; i < m; ++i) {
    Rational sigma = k.div(d.units[i * n], u00);
    pi.push_back(rehomogenize(detail::irreducible_power(d, split.p[i]).scaled(sigma)));
    detail::add_vertices(a_pts, pi.back());
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational r = k.div(d.units[j], u00);
    rho.push_back(rehomogenize(detail::irreducible_power(d, split.q[j]).scaled(r)));
    detail::add_vertices(b_pts, rho.back());
  }
  RingElement beta = rehomogenize(detail::irreducible_power(d, split.b).scaled(u00));
  detail::add_vertices(beta_pts, beta);
  auto ab = convex_hull(detail::pairwise_sums(a_pts, b_pts)).vertices();
  std::vector<IntPoint> t_pts = Rp.lattice_points();
  for (auto* v : {&a_pts, &b_pts, &beta_pts, &ab}) t_pts.insert(t_pts.end(), v->begin(), v->end());
  for (auto& p : detail::pairwise_sums(ab, beta_pts)) t_pts.push_back(p);
  auto T = detail::hull_with_origin(t_pts, e);

  std::vector<IntPoint> to_P, to_Q;
  for (auto& z : PQ.lattice_points()) {
    IntVector x(z.coords.begin(), z.coords.begin() + static_cast<std::ptrdiff_t>(P.ambient_dim()));
    IntVector y(z.coords.begin() + static_cast<std::ptrdiff_t>(P.ambient_dim()), z.coords.end());
    to_P.push_back(IntPoint(x));
    to_Q.push_back(IntPoint(y));
  }
  auto fP = make_cert(cert::Compose{make_cert(cert::AssumedTame{GradedHom(P, T, k, pi), kAssumedReason}),
                                    make_cert(cert::MonomialMap{PQ, P, k, to_P})});
  auto fQ = make_cert(cert::Compose{make_cert(cert::AssumedTame{GradedHom(Q, T, k, rho), kAssumedReason}),
                                    make_cert(cert::MonomialMap{PQ, Q, k, to_Q})});
  auto B = detail::constant_cert(PQ, T, beta);
  auto star = make_cert(cert::MinkowskiStar{make_cert(cert::MinkowskiStar{fP, fQ, T}), B, T});
  auto result = detail::finish(star, Rp, shift);
  detail::require_round_trip(result, f, "product decomposition");
  return result;
}

/// Certificate for any F: k[join(P,Q)] -> k[R].
inline CertPtr decompose_join(const GradedHom& F_in, const LatticePolytope& P, const LatticePolytope& Q) {
  GradedHom F = detail::ensure_verified(F_in);
  const auto J = join(P, Q);
  if (!F.dom().same_points(J)) throw DomainError("domain is not the join of the stated polytopes");
  if (F.cod().num_points() == 0) throw DomainError("codomain has no lattice points");
  const Field k = F.field();
  const IntPoint shift = F.cod().lattice_points()[0];
  GradedHom G = detail::translate_hom(F, detail::negate(shift));
  const auto& Rp = G.cod();
  const std::size_t m = P.ambient_dim(), n = Q.ambient_dim(), D = m + n + 1;

  std::vector<RingElement> fi, gi;
  for (auto& x : P.lattice_points()) fi.push_back(G.image(join_left(x, n)));
  for (auto& y : Q.lattice_points()) gi.push_back(G.image(join_right(y, m)));
  GradedHom f(P, Rp, k, std::move(fi)), g(Q, Rp, k, std::move(gi));

  LatticeMap left{IntMatrix(D, IntVector(m, 0)), IntVector(D, 0)};
  for (std::size_t i = 0; i < m; ++i) left.matrix[i][i] = 1;
  LatticeMap right{IntMatrix(D, IntVector(n, 0)), IntVector(D, 0)};
  for (std::size_t i = 0; i < n; ++i) right.matrix[m + i][i] = 1;
  right.offset[D - 1] = 1;

  const RingElement Z = generator(k, zero_point(Rp.ambient_dim()));
  const IntPoint x0 = P.lattice_points().at(0), y0 = Q.lattice_points().at(0);
  const IntPoint apex_P = join_right(y0, m), apex_Q = join_left(x0, n);

  std::vector<IntPoint> collapse_Q, collapse_P, jp_pts, jq_pts;
  for (auto& z : J.lattice_points()) {
    bool on_left = z[D - 1] == 0;
    collapse_Q.push_back(on_left ? z : apex_P);
    collapse_P.push_back(on_left ? apex_Q : z);
  }
  for (auto& x : P.lattice_points()) jp_pts.push_back(join_left(x, n));
  jp_pts.push_back(apex_P);
  for (auto& y : Q.lattice_points()) jq_pts.push_back(join_right(y, m));
  jq_pts.push_back(apex_Q);
  auto JP = convex_hull(jp_pts), JQ = convex_hull(jq_pts);

  auto aP_base = make_cert(cert::PolytopeChange{make_cert(cert::AssumedTame{f, kAssumedReason}), std::nullopt, left,
                                                std::nullopt, std::nullopt});
  auto aP = make_cert(cert::Compose{make_cert(cert::FreeExtension{aP_base, apex_P, Z}),
                                    make_cert(cert::MonomialMap{J, JP, k, collapse_Q})});
  auto aQ_base = make_cert(cert::PolytopeChange{make_cert(cert::AssumedTame{g, kAssumedReason}), std::nullopt, right,
                                                std::nullopt, std::nullopt});
  auto aQ = make_cert(cert::Compose{make_cert(cert::FreeExtension{aQ_base, apex_Q, Z}),
                                    make_cert(cert::MonomialMap{J, JQ, k, collapse_P})});
  auto star = make_cert(cert::MinkowskiStar{aP, aQ, Rp});
  auto result = detail::finish(star, Rp, shift);
  detail::require_round_trip(result, F, "join decomposition");
  return result;
}

namespace detail {

inline LatticePolytope coordinate_projection(const std::vector<IntPoint>& pts, std::size_t from, std::size_t to,
                                             std::size_t ambient) {
  std::vector<IntPoint> proj;
  for (auto& z : pts)
    proj.push_back(IntPoint(IntVector(z.coords.begin() + static_cast<std::ptrdiff_t>(from),
                                      z.coords.begin() + static_cast<std::ptrdiff_t>(to))));
  return hull_or_empty(proj, ambient);
}

}  // namespace detail

/// Full decomposition: strips kernel monomials where required, then applies
/// the construction matching the stated domain structure.
inline CertPtr decompose(const GradedHom& f_in, const DomainStructure& structure) {
  GradedHom f = detail::ensure_verified(f_in);
  if (auto* js = std::get_if<JoinStructure>(&structure)) return decompose_join(f, js->P, js->Q);

  if (auto* ms = std::get_if<MultipleStructure>(&structure))
    if (!f.dom().same_points(multiple(ms->P, ms->c)))
      throw DomainError("domain is not the stated multiple of the base polytope");
  if (auto* ps = std::get_if<ProductStructure>(&structure))
    if (!f.dom().same_points(product(ps->P, ps->Q))) throw DomainError("domain is not the product of the stated factors");

  auto st = strip_kernel_monomials(f);
  if (st.trivial) {
    if (auto* ms = std::get_if<MultipleStructure>(&structure)) return decompose_multiple(f, ms->P, ms->c);
    auto& ps = std::get<ProductStructure>(structure);
    return decompose_product(f, ps.P, ps.Q);
  }
  CertPtr reduced;
  const auto& h = st.reduced;
  if (h.dom().is_empty()) {
    reduced = make_cert(cert::IdentityK{f.field(), f.cod(), h.dom().ambient_dim()});
  } else if (auto* ms = std::get_if<MultipleStructure>(&structure)) {
    std::vector<IntPoint> base;
    for (auto& v : st.face.vertices) {
      IntPoint b = v;
      for (auto& x : b.coords) {
        if (x % ms->c) throw DomainError("face of cP is not a multiple of a face of P");
        x /= ms->c;
      }
      base.push_back(b);
    }
    reduced = decompose_multiple(h, convex_hull(base), ms->c);
  } else {
    auto& ps = std::get<ProductStructure>(structure);
    const std::size_t m = ps.P.ambient_dim(), total = m + ps.Q.ambient_dim();
    auto FP = detail::coordinate_projection(st.face.points, 0, m, m);
    auto FQ = detail::coordinate_projection(st.face.points, m, total, total - m);
    reduced = decompose_product(h, FP, FQ);
  }
  auto result = make_cert(cert::Compose{reduced, st.prefix});
  detail::require_round_trip(result, f, "decomposition");
  return result;
}

}  // namespace polytame
