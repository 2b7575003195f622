#pragma once

// Certificate trees built from the standard constructors (free extensions,
// Minkowski sums, homothetic blow-ups, polytope changes, compositions) over
// axiom leaves, and their replay into concrete graded homomorphisms.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "polytame/errors.hpp"
#include "polytame/polytopal_ring.hpp"

namespace polytame {

/// x -> matrix * x + offset, an injective lattice map onto a saturated sublattice.
struct LatticeMap {
  IntMatrix matrix;  ///< target_dim rows, source_dim columns
  IntVector offset;

  std::size_t source_dim() const { return matrix.empty() ? 0 : matrix[0].size(); }
  std::size_t target_dim() const { return offset.size(); }

  IntPoint operator()(const IntPoint& x) const {
    IntPoint r(offset);
    for (std::size_t i = 0; i < offset.size(); ++i) r[i] += dot(matrix[i], x.coords);
    return r;
  }

  static LatticeMap translation(const IntPoint& w) {
    LatticeMap m;
    const std::size_t d = w.dim();
    m.matrix.assign(d, IntVector(d, 0));
    for (std::size_t i = 0; i < d; ++i) m.matrix[i][i] = 1;
    m.offset = w.coords;
    return m;
  }

  void check_embedding(std::size_t source) const {
    for (auto& row : matrix)
      if (row.size() != source) throw DomainError("lattice map has the wrong number of columns");
    if (matrix.size() != offset.size()) throw DomainError("lattice map offset has the wrong length");
    if (gcd_of_maximal_minors(matrix, source) != 1)
      throw DomainError("lattice map is not unimodular onto its image");
  }

  bool operator==(const LatticeMap&) const = default;
};

struct TameCert;
using CertPtr = std::shared_ptr<const TameCert>;

namespace cert {

/// k -> k followed by the structure map into k[codomain]; domain is the empty polytope.
struct IdentityK {
  Field field;
  LatticePolytope codomain = LatticePolytope::empty(0);
  std::size_t domain_ambient = 0;
};

struct MonomialMap {
  LatticePolytope dom, cod;
  Field field;
  std::vector<IntPoint> point_map;  ///< indexed by L(dom)
};

struct AssumedTame {
  GradedHom hom;
  std::string reason;
};

struct FaceRetraction {
  LatticePolytope polytope;
  std::vector<IntPoint> face_points;
  Field field;
};

struct FreeExtension {
  CertPtr base;
  IntPoint apex;
  RingElement apex_image;
};

struct MinkowskiStar {
  CertPtr left, right;
  LatticePolytope working_target;
};

struct HomotheticBlowup {
  CertPtr child;
  Int c = 1;
};

/// Domain: restriction to a subpolytope, or transport along a lattice map.
/// Codomain: replacement by any polytope containing the images, or transport.
struct PolytopeChange {
  CertPtr child;
  std::optional<LatticePolytope> new_dom;
  std::optional<LatticeMap> dom_map;
  std::optional<LatticePolytope> new_cod;
  std::optional<LatticeMap> cod_map;
};

struct Compose {
  CertPtr outer, inner;
};

}  // namespace cert

struct TameCert {
  std::variant<cert::IdentityK, cert::MonomialMap, cert::AssumedTame, cert::FaceRetraction, cert::FreeExtension,
               cert::MinkowskiStar, cert::HomotheticBlowup, cert::PolytopeChange, cert::Compose>
      node;

  std::string kind() const {
    static const char* names[] = {"identity_k",        "monomial_map",     "assumed_tame",
                                  "face_retraction",   "free_extension",   "minkowski_star",
                                  "homothetic_blowup", "polytope_change",  "compose"};
    return names[node.index()];
  }
};

template <class Node>
CertPtr make_cert(Node n) {
  return std::make_shared<const TameCert>(TameCert{std::move(n)});
}

/// Replay failure carrying the path of the offending node.
class CertError : public DomainError {
 public:
  using DomainError::DomainError;
};

namespace detail {

inline LatticePolytope map_polytope(const LatticePolytope& P, const LatticeMap& m) {
  std::vector<IntPoint> pts;
  for (auto& v : P.vertices()) pts.push_back(m(v));
  auto R = hull_or_empty(pts, m.target_dim());
  if (R.num_points() != P.num_points()) throw DomainError("lattice map does not biject lattice points");
  return R;
}

inline RingElement map_element(const RingElement& e, const LatticeMap& m) {
  RingElement r(e.field(), m.target_dim());
  for (auto& [mono, c] : e.terms()) {
    IntPoint y = m(IntPoint(mono.exponents));
    // Homogenized map (y, h) -> (A y + h t, h).
    IntPoint shifted = y;
    for (std::size_t i = 0; i < shifted.dim(); ++i) shifted[i] += (mono.degree - 1) * m.offset[i];
    r.add_term({shifted.coords, mono.degree}, c);
  }
  return r;
}

inline GradedHom replay_node(const cert::IdentityK& n) {
  return GradedHom(LatticePolytope::empty(n.domain_ambient), n.codomain, n.field, {}).mark_verified();
}

inline GradedHom replay_node(const cert::MonomialMap& n) {
  if (n.point_map.size() != n.dom.num_points()) throw DomainError("monomial map table has the wrong size");
  std::vector<RingElement> img;
  for (auto& y : n.point_map) {
    if (!n.cod.index_of(y)) throw DomainError("monomial map sends a generator outside the codomain");
    img.push_back(generator(n.field, y));
  }
  return verified(GradedHom(n.dom, n.cod, n.field, std::move(img)));
}

inline GradedHom replay_node(const cert::AssumedTame& n) { return verified(n.hom); }

inline GradedHom replay_node(const cert::FaceRetraction& n) {
  auto F = face_of_point_set(n.polytope, n.face_points);
  if (!F) throw DomainError("face retraction: point set is not a face");
  return face_retraction_hom(n.polytope, *F, n.field);
}

inline GradedHom replay_at(const CertPtr& c, const std::string& path);

inline GradedHom replay_node(const cert::FreeExtension& n, const std::string& path) {
  GradedHom f0 = replay_at(n.base, path + "/base");
  const auto& P0 = f0.dom();
  if (n.apex.dim() != P0.ambient_dim()) throw DomainError("free extension: apex dimension differs from the base");
  if (P0.index_of(n.apex)) throw DomainError("free extension: apex already lies in the base");
  std::vector<IntPoint> pts = P0.lattice_points();
  pts.push_back(n.apex);
  auto P = convex_hull(pts);
  auto base = pyramid_base(P, n.apex);
  if (!base || !base->same_points(P0)) throw DomainError("free extension: not a lattice pyramid over the base");
  const auto& q = n.apex_image;
  if (!(q.field() == f0.field())) throw DomainError("free extension: apex image over the wrong field");
  if (!q.is_homogeneous(1)) throw DomainError("free extension: apex image must be homogeneous of degree 1");
  std::size_t apex_idx = P.require_index(n.apex);
  for (auto& u : relation_basis(P).vectors)
    if (u[apex_idx] != 0) throw DomainError("free extension: apex participates in a relation");
  std::vector<RingElement> img;
  for (auto& x : P.lattice_points()) img.push_back(x == n.apex ? q : f0.image(x));
  return verified(GradedHom(P, f0.cod(), f0.field(), std::move(img)));
}

inline GradedHom replay_node(const cert::MinkowskiStar& n, const std::string& path) {
  GradedHom f = replay_at(n.left, path + "/left");
  GradedHom g = replay_at(n.right, path + "/right");
  const auto& T = n.working_target;
  if (!f.dom().same_points(g.dom())) throw DomainError("Minkowski sum: factors have different domains");
  if (!f.cod().same_points(g.cod())) throw DomainError("Minkowski sum: factors have different codomains");
  if (!(f.field() == g.field())) throw DomainError("Minkowski sum: field mismatch");
  if (T.ambient_dim() != f.cod().ambient_dim()) throw DomainError("Minkowski sum: working target in wrong dimension");
  if (!T.index_of(zero_point(T.ambient_dim())))
    throw DomainError("Minkowski sum: degree divisor (origin) is not a lattice point of the working target");
  std::vector<RingElement> img;
  for (std::size_t i = 0; i < f.images().size(); ++i) {
    const auto &a = f.image(i), &b = g.image(i);
    if (!a.is_zero() && !b.is_zero()) {
      auto na = newton_polytope(a), nb = newton_polytope(b);
      for (auto& va : na.vertices())
        for (auto& vb : nb.vertices())
          if (!T.contains(va + vb))
            throw DomainError("Minkowski sum: Newton polytopes of the images at " + f.dom().lattice_points()[i].str() +
                              " do not fit in the working target");
    }
    RingElement prod = a * b;
    RingElement r(prod.field(), prod.nvars());
    for (auto& [m, c] : prod.terms()) r.add_term({m.exponents, m.degree - 1}, c);
    img.push_back(std::move(r));
  }
  return verified(GradedHom(f.dom(), T, f.field(), std::move(img)));
}

inline GradedHom replay_node(const cert::HomotheticBlowup& n, const std::string& path) {
  GradedHom f = replay_at(n.child, path + "/child");
  if (n.c <= 0) throw DomainError("homothetic blow-up: factor must be positive");
  if (!zero_set(f).empty()) throw DomainError("homothetic blow-up: kernel contains monomials");
  const auto& P = f.dom();
  auto cP = multiple(P, n.c);
  auto cQ = multiple(f.cod(), n.c);
  const Field k = f.field();
  auto lower = [&](const RingElement& e) {
    RingElement r(k, e.nvars());
    for (auto& [m, c] : e.terms()) r.add_term({m.exponents, 1}, c);
    return r;
  };
  std::vector<RingElement> img;
  for (auto& x : cP.lattice_points()) {
    auto reps = height_representations(P, n.c, x);
    std::optional<RingElement> value;
    if (!reps.empty()) {
      for (auto& a : reps) {
        RingElement v = image_power_product(f, a);
        if (!value)
          value = v;
        else if (!(*value == v))
          throw DomainError("homothetic blow-up: representations of " + x.str() + " disagree");
      }
    } else {
      auto a = integer_representation(P, n.c, x);
      if (!a) throw DomainError("homothetic blow-up: lattice point " + x.str() + " of cP is not representable");
      IntVector pos(a->size()), neg(a->size());
      for (std::size_t i = 0; i < a->size(); ++i) {
        pos[i] = (*a)[i] > 0 ? (*a)[i] : 0;
        neg[i] = (*a)[i] < 0 ? -(*a)[i] : 0;
      }
      auto q = div_exact(image_power_product(f, pos), image_power_product(f, neg), true);
      if (!q)
        throw DomainError("homothetic blow-up: non-normal obstruction at " + x.str() +
                          " (quotient is not a polynomial)");
      value = *q;
    }
    if (!value->is_homogeneous(n.c)) throw DomainError("homothetic blow-up: image of " + x.str() + " has wrong degree");
    img.push_back(lower(*value));
  }
  return verified(GradedHom(cP, cQ, k, std::move(img)));
}

inline GradedHom replay_node(const cert::PolytopeChange& n, const std::string& path) {
  GradedHom f = replay_at(n.child, path + "/child");
  if (n.new_dom && n.dom_map) throw DomainError("polytope change: both a new domain and a domain map given");
  if (n.new_cod && n.cod_map) throw DomainError("polytope change: both a new codomain and a codomain map given");
  LatticePolytope dom = f.dom();
  std::vector<RingElement> img = f.images();
  if (n.dom_map) {
    n.dom_map->check_embedding(dom.ambient_dim());
    LatticePolytope nd = map_polytope(dom, *n.dom_map);
    std::vector<RingElement> moved(nd.num_points());
    for (std::size_t i = 0; i < dom.num_points(); ++i)
      moved[nd.require_index((*n.dom_map)(dom.lattice_points()[i]))] = img[i];
    dom = nd;
    img = std::move(moved);
  } else if (n.new_dom) {
    if (n.new_dom->ambient_dim() != dom.ambient_dim()) throw DomainError("polytope change: new domain in wrong dimension");
    std::vector<RingElement> kept;
    for (auto& x : n.new_dom->lattice_points()) {
      auto i = dom.index_of(x);
      if (!i) throw DomainError("polytope change: new domain is not contained in the old one");
      kept.push_back(img[*i]);
    }
    dom = *n.new_dom;
    img = std::move(kept);
  }
  LatticePolytope cod = f.cod();
  if (n.cod_map) {
    n.cod_map->check_embedding(cod.ambient_dim());
    cod = map_polytope(cod, *n.cod_map);
    for (auto& e : img) e = map_element(e, *n.cod_map);
  } else if (n.new_cod) {
    if (n.new_cod->ambient_dim() != cod.ambient_dim()) throw DomainError("polytope change: new codomain in wrong dimension");
    for (auto& e : img)
      for (auto& [m, c] : e.terms())
        if (!n.new_cod->index_of(m.point()))
          throw DomainError("polytope change: image escapes the new codomain at " + m.point().str());
    cod = *n.new_cod;
  }
  return verified(GradedHom(dom, cod, f.field(), std::move(img)));
}

inline GradedHom replay_node(const cert::Compose& n, const std::string& path) {
  GradedHom inner = replay_at(n.inner, path + "/inner");
  GradedHom outer = replay_at(n.outer, path + "/outer");
  return compose_homs(outer, inner);
}

inline GradedHom replay_at(const CertPtr& c, const std::string& path) {
  if (!c) throw CertError(path + ": missing certificate node");
  const std::string here = path.empty() ? c->kind() : path + ":" + c->kind();
  try {
    return std::visit(
        [&](const auto& n) -> GradedHom {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, cert::IdentityK> || std::is_same_v<N, cert::MonomialMap> ||
                        std::is_same_v<N, cert::AssumedTame> || std::is_same_v<N, cert::FaceRetraction>)
            return replay_node(n);
          else
            return replay_node(n, here);
        },
        c->node);
  } catch (const CertError&) {
    throw;
  } catch (const std::exception& e) {
    throw CertError(here + ": " + e.what());
  }
}

}  // namespace detail

/// Bottom-up evaluation; every intermediate hom is verified. Errors name the node path.
inline GradedHom replay(const CertPtr& c) { return detail::replay_at(c, ""); }

/// Same domain, codomain, field and image table.
inline bool same_hom(const GradedHom& a, const GradedHom& b) {
  return a.dom().same_points(b.dom()) && a.cod().same_points(b.cod()) && a.field() == b.field() &&
         a.images() == b.images();
}

/// Whether the certificate replays to exactly the target's image table.
inline bool check_cert(const CertPtr& c, const GradedHom& target) {
  try {
    return same_hom(replay(c), target);
  } catch (const std::exception&) {
    return false;
  }
}

inline void collect_assumed(const CertPtr& c, std::vector<const cert::AssumedTame*>& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, cert::AssumedTame>) out.push_back(&n);
        if constexpr (std::is_same_v<N, cert::FreeExtension>) collect_assumed(n.base, out);
        if constexpr (std::is_same_v<N, cert::MinkowskiStar>) {
          collect_assumed(n.left, out);
          collect_assumed(n.right, out);
        }
        if constexpr (std::is_same_v<N, cert::HomotheticBlowup> || std::is_same_v<N, cert::PolytopeChange>)
          collect_assumed(n.child, out);
        if constexpr (std::is_same_v<N, cert::Compose>) {
          collect_assumed(n.outer, out);
          collect_assumed(n.inner, out);
        }
      },
      c->node);
}

inline std::vector<const cert::AssumedTame*> assumed_tame_leaves(const CertPtr& c) {
  std::vector<const cert::AssumedTame*> out;
  collect_assumed(c, out);
  return out;
}

inline std::size_t cert_size(const CertPtr& c) {
  std::size_t n = 1;
  std::visit(
      [&](const auto& x) {
        using N = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<N, cert::FreeExtension>) n += cert_size(x.base);
        if constexpr (std::is_same_v<N, cert::MinkowskiStar>) n += cert_size(x.left) + cert_size(x.right);
        if constexpr (std::is_same_v<N, cert::HomotheticBlowup> || std::is_same_v<N, cert::PolytopeChange>)
          n += cert_size(x.child);
        if constexpr (std::is_same_v<N, cert::Compose>) n += cert_size(x.outer) + cert_size(x.inner);
      },
      c->node);
  return n;
}

// Validating constructors: build the node and replay it once.

inline CertPtr checked(CertPtr c) {
  replay(c);
  return c;
}

inline CertPtr mk_identity_k(Field k, LatticePolytope codomain = LatticePolytope::empty(0), std::size_t domain_ambient = 0) {
  return checked(make_cert(cert::IdentityK{k, std::move(codomain), domain_ambient}));
}

inline CertPtr mk_monomial_map(LatticePolytope dom, LatticePolytope cod, Field k, std::vector<IntPoint> point_map) {
  return checked(make_cert(cert::MonomialMap{std::move(dom), std::move(cod), k, std::move(point_map)}));
}

inline const char* kAssumedReason = "hypothesis: homomorphisms out of the factor polytope are tame";

inline CertPtr mk_assumed_tame(GradedHom h, std::string reason = kAssumedReason) {
  return checked(make_cert(cert::AssumedTame{std::move(h), std::move(reason)}));
}

inline CertPtr mk_face_retraction(LatticePolytope P, const FaceDescriptor& F, Field k) {
  return checked(make_cert(cert::FaceRetraction{std::move(P), F.points, k}));
}

inline CertPtr mk_free_extension(CertPtr base, IntPoint apex, RingElement q) {
  return checked(make_cert(cert::FreeExtension{std::move(base), std::move(apex), std::move(q)}));
}

inline CertPtr mk_minkowski_star(CertPtr left, CertPtr right, LatticePolytope target) {
  return checked(make_cert(cert::MinkowskiStar{std::move(left), std::move(right), std::move(target)}));
}

inline CertPtr mk_homothetic_blowup(CertPtr child, Int c) {
  return checked(make_cert(cert::HomotheticBlowup{std::move(child), c}));
}

inline CertPtr mk_polytope_change(CertPtr child, std::optional<LatticePolytope> new_dom,
                                  std::optional<LatticePolytope> new_cod) {
  return checked(make_cert(cert::PolytopeChange{std::move(child), std::move(new_dom), std::nullopt, std::move(new_cod),
                                                std::nullopt}));
}

inline CertPtr mk_lattice_change(CertPtr child, std::optional<LatticeMap> dom_map, std::optional<LatticeMap> cod_map) {
  return checked(make_cert(
      cert::PolytopeChange{std::move(child), std::nullopt, std::move(dom_map), std::nullopt, std::move(cod_map)}));
}

inline CertPtr mk_compose(CertPtr outer, CertPtr inner) {
  return checked(make_cert(cert::Compose{std::move(outer), std::move(inner)}));
}

}  // namespace polytame
