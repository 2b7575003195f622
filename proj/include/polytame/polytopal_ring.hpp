#pragma once

// Polytopal monoid rings k[P], their binomial relations, and graded
// homomorphisms k[P] -> k[Q] given by images of the degree-1 generators.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polytame/errors.hpp"
#include "polytame/field.hpp"
#include "polytame/lattice_geometry.hpp"
#include "polytame/polynomial.hpp"

namespace polytame {

/// The degree-1 generator of k[Q] at lattice point y.
inline RingElement generator(Field f, const IntPoint& y, const Rational& c = 1) {
  return RingElement::monomial(f, y, 1, c);
}

class GradedHom {
 public:
  GradedHom() = default;

  /// Checks shapes, degree-1 homogeneity and support in L(cod). Does not
  /// check well-definedness; see verify_hom.
  GradedHom(LatticePolytope dom, LatticePolytope cod, Field field, std::vector<RingElement> images)
      : dom_(std::move(dom)), cod_(std::move(cod)), field_(field), images_(std::move(images)) {
    if (images_.size() != dom_.num_points())
      throw DomainError("image table has " + std::to_string(images_.size()) + " entries, domain has " +
                        std::to_string(dom_.num_points()) + " generators");
    for (std::size_t i = 0; i < images_.size(); ++i) {
      const auto& e = images_[i];
      const std::string where = "image of " + dom_.lattice_points()[i].str();
      if (!(e.field() == field_)) throw DomainError(where + ": field mismatch");
      if (e.nvars() != cod_.ambient_dim()) throw DomainError(where + ": wrong number of variables");
      if (!e.is_homogeneous(1)) throw DomainError(where + " is not homogeneous of degree 1");
      for (auto& [m, c] : e.terms())
        if (!cod_.index_of(m.point()))
          throw DomainError(where + ": monomial exponent " + m.point().str() + " outside the codomain");
    }
  }

  const LatticePolytope& dom() const { return dom_; }
  const LatticePolytope& cod() const { return cod_; }
  const Field& field() const { return field_; }
  const std::vector<RingElement>& images() const { return images_; }
  const RingElement& image(std::size_t i) const { return images_[i]; }
  const RingElement& image(const IntPoint& x) const { return images_[dom_.require_index(x)]; }

  bool is_verified() const { return verified_; }

  bool operator==(const GradedHom& o) const {
    return dom_ == o.dom_ && cod_ == o.cod_ && field_ == o.field_ && images_ == o.images_;
  }

  /// Marks the hom as well-defined; callers must have established this.
  GradedHom& mark_verified() {
    verified_ = true;
    return *this;
  }

 private:
  LatticePolytope dom_;
  LatticePolytope cod_;
  Field field_;
  std::vector<RingElement> images_;
  bool verified_ = false;
};

/// Integer kernel basis of the columns (x_i, 1), in Hermite normal form.
inline IntMatrix relation_basis_of_points(const std::vector<IntPoint>& pts) {
  if (pts.empty()) return {};
  const std::size_t d = pts[0].dim();
  IntMatrix m(d + 1, IntVector(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = pts[j][i];
    m[d][j] = 1;
  }
  return integer_kernel(m, pts.size());
}

struct RelationBasis {
  IntMatrix vectors;  ///< indexed by L(P)

  static IntVector positive_part(const IntVector& u) {
    IntVector r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] > 0 ? u[i] : 0;
    return r;
  }
  static IntVector negative_part(const IntVector& u) {
    IntVector r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] < 0 ? -u[i] : 0;
    return r;
  }
};

inline RelationBasis relation_basis(const LatticePolytope& P) { return {relation_basis_of_points(P.lattice_points())}; }

/// Generators mapped to zero.
inline std::vector<IntPoint> zero_set(const GradedHom& f) {
  std::vector<IntPoint> z;
  for (std::size_t i = 0; i < f.images().size(); ++i)
    if (f.image(i).is_zero()) z.push_back(f.dom().lattice_points()[i]);
  return z;
}

inline std::vector<IntPoint> nonzero_set(const GradedHom& f) {
  std::vector<IntPoint> s;
  for (std::size_t i = 0; i < f.images().size(); ++i)
    if (!f.image(i).is_zero()) s.push_back(f.dom().lattice_points()[i]);
  return s;
}

struct HomFailure {
  std::string kind;             ///< "relation" or "non_face_zero_set"
  IntVector relation;           ///< violated basis vector over L(dom), for "relation"
  std::vector<IntPoint> points; ///< the zero set, for "non_face_zero_set"
};

struct HomReport {
  bool ok = true;
  std::vector<HomFailure> failures;
};

/// Product of images raised to the exponents, over the listed generator indices.
inline RingElement image_power_product(const GradedHom& f, const IntVector& exps) {
  RingElement r = RingElement::constant(f.field(), f.cod().ambient_dim(), 1);
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] > 0) r = r * f.image(i).pow(exps[i]);
  return r;
}

/// Verification with cached relation bases per supporting face.
class HomVerifier {
 public:
  HomReport verify(const GradedHom& f) {
    HomReport rep;
    const auto& L = f.dom().lattice_points();
    auto support = nonzero_set(f);
    if (support.size() != L.size() && !face_of_point_set(f.dom(), support)) {
      rep.ok = false;
      rep.failures.push_back({"non_face_zero_set", {}, zero_set(f)});
      return rep;
    }
    auto& basis = basis_for(support);
    std::vector<std::size_t> index;
    for (auto& p : support) index.push_back(f.dom().require_index(p));
    for (auto& u : basis) {
      IntVector full(L.size(), 0);
      for (std::size_t j = 0; j < u.size(); ++j) full[index[j]] = u[j];
      auto lhs = image_power_product(f, RelationBasis::positive_part(full));
      auto rhs = image_power_product(f, RelationBasis::negative_part(full));
      if (!(lhs == rhs)) {
        rep.ok = false;
        rep.failures.push_back({"relation", full, {}});
      }
    }
    return rep;
  }

 private:
  const IntMatrix& basis_for(const std::vector<IntPoint>& pts) {
    auto it = cache_.find(pts);
    if (it == cache_.end()) it = cache_.emplace(pts, relation_basis_of_points(pts)).first;
    return it->second;
  }
  std::map<std::vector<IntPoint>, IntMatrix> cache_;
};

inline HomReport verify_hom(const GradedHom& f) {
  HomVerifier v;
  return v.verify(f);
}

/// Returns f marked verified, or throws with the first failure.
inline GradedHom verified(GradedHom f) {
  auto rep = verify_hom(f);
  if (!rep.ok) {
    const auto& fl = rep.failures.front();
    std::string msg = fl.kind == "relation" ? "homomorphism violates a binomial relation"
                                            : "zero set of the homomorphism is not the complement of a face";
    throw DomainError(msg);
  }
  return f.mark_verified();
}

/// f extended multiplicatively to the monoid element with exponent vector m over L(dom).
inline RingElement apply_monomial(const GradedHom& f, const IntVector& m) {
  if (!f.is_verified()) throw DomainError("apply_monomial requires a verified homomorphism");
  if (m.size() != f.dom().num_points()) throw DomainError("exponent vector length mismatch");
  for (auto e : m)
    if (e < 0) throw DomainError("negative exponent in a monoid element");
  return image_power_product(f, m);
}

/// g after f.
inline GradedHom compose_homs(const GradedHom& g, const GradedHom& f) {
  if (!f.is_verified() || !g.is_verified()) throw DomainError("composition requires verified homomorphisms");
  if (!f.cod().same_points(g.dom())) throw DomainError("composition: codomain and domain polytopes differ");
  if (!(f.field() == g.field())) throw DomainError("composition: field mismatch");
  std::vector<RingElement> out;
  for (auto& img : f.images()) {
    RingElement r(g.field(), g.cod().ambient_dim());
    for (auto& [m, c] : img.terms()) r += g.image(m.point()).scaled(c);
    out.push_back(std::move(r));
  }
  return GradedHom(f.dom(), g.cod(), f.field(), std::move(out)).mark_verified();
}

inline GradedHom identity_hom(const LatticePolytope& P, Field k) {
  std::vector<RingElement> img;
  for (auto& x : P.lattice_points()) img.push_back(generator(k, x));
  return GradedHom(P, P, k, std::move(img)).mark_verified();
}

/// x -> x on L(F), x -> 0 elsewhere.
inline GradedHom face_retraction_hom(const LatticePolytope& P, const FaceDescriptor& F, Field k) {
  std::vector<RingElement> img;
  for (auto& x : P.lattice_points()) {
    bool on = std::binary_search(F.points.begin(), F.points.end(), x);
    img.push_back(on ? generator(k, x) : RingElement(k, P.ambient_dim()));
  }
  return GradedHom(P, P, k, std::move(img)).mark_verified();
}

inline GradedHom constant_hom(const LatticePolytope& dom, const LatticePolytope& cod, const RingElement& value) {
  std::vector<RingElement> img(dom.num_points(), value);
  return verified(GradedHom(dom, cod, value.field(), std::move(img)));
}

/// All well-defined graded homs k[P] -> k[Q] over a small prime field,
/// enumerated over coefficient tables with the first entry most significant.
inline std::vector<GradedHom> enumerate_homs(const LatticePolytope& P, const LatticePolytope& Q, Field k) {
  const std::size_t m = P.num_points(), n = Q.num_points();
  if (k.is_rational() || k.characteristic() > 3) throw DomainError("enumeration requires F2 or F3");
  if (m * n > 12) throw DomainError("enumeration guard exceeded: |L(P)|*|L(Q)| > 12");
  const Int p = k.characteristic();
  const std::size_t cells = m * n;
  std::vector<Int> digits(cells, 0);
  std::vector<GradedHom> out;
  HomVerifier verifier;
  while (true) {
    std::vector<RingElement> img;
    for (std::size_t i = 0; i < m; ++i) {
      RingElement e(k, Q.ambient_dim());
      for (std::size_t j = 0; j < n; ++j)
        if (digits[i * n + j]) e.add_term({Q.lattice_points()[j].coords, 1}, big(digits[i * n + j]));
      img.push_back(std::move(e));
    }
    GradedHom f(P, Q, k, std::move(img));
    if (verifier.verify(f).ok) out.push_back(f.mark_verified());
    std::size_t c = cells;
    while (c > 0 && digits[c - 1] == p - 1) digits[--c] = 0;
    if (c == 0) break;
    ++digits[c - 1];
  }
  return out;
}

}  // namespace polytame
