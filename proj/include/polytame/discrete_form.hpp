#pragma once

// Translation between monomial-kernel-free graded homomorphisms and their
// discrete data: a shared list of irreducibles, an affine exponent map
// alpha: L(dom) -> Z_+^l, and one unit scalar per generator.

#include <algorithm>
#include <map>
#include <vector>

#include "polytame/errors.hpp"
#include "polytame/factorization.hpp"
#include "polytame/polytopal_ring.hpp"

namespace polytame {

struct DiscreteHom {
  LatticePolytope domain;
  LatticePolytope codomain;
  Field field;
  std::vector<RingElement> irreducibles;  ///< degree 0, canonical, sorted
  std::vector<IntVector> alpha;           ///< indexed by L(domain)
  std::vector<Rational> units;            ///< indexed by L(domain)

  std::size_t length() const { return irreducibles.size(); }

  bool operator==(const DiscreteHom& o) const {
    return domain == o.domain && codomain == o.codomain && field == o.field && irreducibles == o.irreducibles &&
           alpha == o.alpha && units == o.units;
  }
};

/// f(x) / Y as a degree-0 polynomial.
inline RingElement dehomogenize(const GradedHom& f, const IntPoint& x) {
  const RingElement& img = f.image(x);
  if (img.is_zero()) throw DomainError("cannot dehomogenize a zero image at " + x.str());
  RingElement r(img.field(), img.nvars());
  for (auto& [m, c] : img.terms()) r.add_term({m.exponents, m.degree - 1}, c);
  return r;
}

inline RingElement rehomogenize(const RingElement& e) {
  RingElement r(e.field(), e.nvars());
  for (auto& [m, c] : e.terms()) r.add_term({m.exponents, m.degree + 1}, c);
  return r;
}

inline bool is_nonnegative_polytope(const LatticePolytope& P) {
  for (auto& p : P.lattice_points())
    for (auto c : p.coords)
      if (c < 0) return false;
  return true;
}

namespace detail {

inline void check_alpha_affine(const LatticePolytope& dom, const std::vector<IntVector>& alpha, std::size_t l) {
  for (auto& u : relation_basis(dom).vectors)
    for (std::size_t k = 0; k < l; ++k) {
      BigInt s = 0;
      for (std::size_t i = 0; i < u.size(); ++i) s += big(u[i]) * big(alpha[i][k]);
      if (s != 0) throw DomainError("exponent map violates a relation of the domain");
    }
}

inline RingElement discrete_image(const DiscreteHom& d, std::size_t i) {
  const std::size_t n = d.codomain.ambient_dim();
  RingElement r = RingElement::constant(d.field, n, d.units[i]);
  for (std::size_t k = 0; k < d.length(); ++k)
    if (d.alpha[i][k] > 0) r = r * d.irreducibles[k].pow(d.alpha[i][k]);
  return rehomogenize(r);
}

}  // namespace detail

/// Rebuilds the homomorphism; throws if alpha breaks a relation or an image leaves L(cod).
inline GradedHom from_discrete(const DiscreteHom& d, bool normalize_units = false) {
  const std::size_t m = d.domain.num_points();
  if (d.alpha.size() != m || d.units.size() != m) throw DomainError("discrete data has the wrong number of rows");
  for (auto& a : d.alpha) {
    if (a.size() != d.length()) throw DomainError("exponent vector length differs from the irreducible count");
    for (auto x : a)
      if (x < 0) throw DomainError("negative exponent in discrete data");
  }
  for (auto& u : d.units)
    if (sgn(u) == 0) throw DomainError("zero unit in discrete data");
  detail::check_alpha_affine(d.domain, d.alpha, d.length());
  DiscreteHom dd = d;
  if (normalize_units) std::fill(dd.units.begin(), dd.units.end(), Rational(1));
  std::vector<RingElement> img;
  for (std::size_t i = 0; i < m; ++i) img.push_back(detail::discrete_image(dd, i));
  return verified(GradedHom(d.domain, d.codomain, d.field, std::move(img)));
}

/// Discrete data of a verified hom without kernel monomials into a nonnegative codomain.
inline DiscreteHom to_discrete(const GradedHom& f) {
  if (!f.is_verified() && !verify_hom(f).ok) throw DomainError("homomorphism is not well defined");
  if (!zero_set(f).empty()) throw DomainError("homomorphism has kernel monomials; strip them first");
  if (!is_nonnegative_polytope(f.cod())) throw DomainError("codomain must lie in the nonnegative orthant");
  const Field k = f.field();
  const std::size_t n = f.cod().ambient_dim();
  const auto& L = f.dom().lattice_points();

  std::vector<RingElement> known;
  std::vector<std::map<std::size_t, Int>> exps(L.size());
  std::vector<Rational> units(L.size());
  auto index_of = [&](const RingElement& p) {
    auto it = std::find(known.begin(), known.end(), p);
    if (it != known.end()) return static_cast<std::size_t>(it - known.begin());
    known.push_back(p);
    return known.size() - 1;
  };
  for (std::size_t i = 0; i < L.size(); ++i) {
    RingElement phi = dehomogenize(f, L[i]);
    const RingElement original = phi;
    for (std::size_t j = 0; j < known.size(); ++j)
      while (auto q = div_exact(phi, known[j])) {
        phi = *q;
        ++exps[i][j];
      }
    auto fr = factor_polynomial(phi);
    for (auto& [p, m] : fr.factors) exps[i][index_of(p)] += m;
    RingElement prod = RingElement::constant(k, n, 1);
    for (auto& [j, m] : exps[i]) prod = prod * known[j].pow(m);
    units[i] = k.div(original.leading_term().second, prod.leading_term().second);
  }

  std::vector<std::size_t> order(known.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return known[a] < known[b]; });
  DiscreteHom d{f.dom(), f.cod(), k, {}, {}, units};
  for (auto j : order) d.irreducibles.push_back(known[j]);
  for (std::size_t i = 0; i < L.size(); ++i) {
    IntVector a(known.size(), 0);
    for (std::size_t r = 0; r < order.size(); ++r) {
      auto it = exps[i].find(order[r]);
      if (it != exps[i].end()) a[r] = it->second;
    }
    d.alpha.push_back(std::move(a));
  }
  detail::check_alpha_affine(d.domain, d.alpha, d.length());
  for (std::size_t i = 0; i < L.size(); ++i)
    if (!(detail::discrete_image(d, i) == f.image(i))) throw DomainError("discrete form does not reproduce the image");
  return d;
}

/// The affine extension of alpha as a rational map on the ambient space of the domain.
inline AffineRationalMap alpha_map(const DiscreteHom& d) {
  return AffineRationalMap::fit(d.domain.lattice_points(), d.alpha);
}

/// Value of the affine extension of alpha at a rational point of the domain,
/// computed two independent ways and cross-checked.
inline RationalVector evaluate_alpha_rational(const DiscreteHom& d, const RationalVector& point) {
  if (!d.domain.contains(point)) throw DomainError("point lies outside the domain polytope");
  const auto& L = d.domain.lattice_points();
  RationalVector via_fit = alpha_map(d)(point);

  // Affine combination of a basis chosen greedily from the end of L.
  const std::size_t n = d.domain.ambient_dim();
  std::vector<std::size_t> basis;
  RationalMatrix rows;
  for (std::size_t t = L.size(); t-- > 0;) {
    RationalVector row;
    for (auto c : L[t].coords) row.push_back(big(c));
    row.push_back(1);
    auto trial = rows;
    trial.push_back(row);
    if (rank_of(trial, n + 1) > rows.size()) {
      rows = std::move(trial);
      basis.push_back(t);
    }
  }
  RationalMatrix sys(n + 1, RationalVector(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i <= n; ++i) sys[i][j] = rows[j][i];
  RationalVector rhs = point;
  rhs.push_back(1);
  auto lambda = solve_rational(sys, basis.size(), rhs);
  if (!lambda) throw DomainError("point is not in the affine hull of the domain");
  RationalVector via_comb(d.length(), 0);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t k = 0; k < d.length(); ++k) via_comb[k] += (*lambda)[j] * Rational(big(d.alpha[basis[j]][k]));
  if (via_fit != via_comb) throw DomainError("affine extension of alpha is not well defined");
  return via_fit;
}

}  // namespace polytame
