#pragma once

// Exact sparse (Laurent) polynomials with an explicit degree coordinate.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polytame/errors.hpp"
#include "polytame/field.hpp"
#include "polytame/lattice_geometry.hpp"

namespace polytame {

struct Monomial {
  IntVector exponents;
  Int degree = 0;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  Monomial operator*(const Monomial& o) const {
    if (exponents.size() != o.exponents.size()) throw DomainError("monomial variable count mismatch");
    Monomial r = *this;
    for (std::size_t i = 0; i < exponents.size(); ++i) r.exponents[i] += o.exponents[i];
    r.degree += o.degree;
    return r;
  }

  Monomial operator/(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < exponents.size(); ++i) r.exponents[i] -= o.exponents[i];
    r.degree -= o.degree;
    return r;
  }

  bool nonnegative() const {
    if (degree < 0) return false;
    for (auto e : exponents)
      if (e < 0) return false;
    return true;
  }

  IntPoint point() const { return IntPoint(exponents); }
};

class RingElement {
 public:
  using TermMap = std::map<Monomial, Rational>;

  RingElement() = default;
  RingElement(Field f, std::size_t nvars) : field_(f), nvars_(nvars) {}

  static RingElement monomial(Field f, const IntPoint& exps, Int degree, const Rational& coeff = 1) {
    RingElement r(f, exps.dim());
    r.add_term({exps.coords, degree}, coeff);
    return r;
  }

  static RingElement constant(Field f, std::size_t nvars, const Rational& c, Int degree = 0) {
    return monomial(f, zero_point(nvars), degree, c);
  }

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.exponents.size() != nvars_) throw DomainError("monomial variable count mismatch");
    auto it = terms_.find(m);
    Rational v = field_.normalize(it == terms_.end() ? c : it->second + c);
    if (sgn(v) == 0) {
      if (it != terms_.end()) terms_.erase(it);
    } else if (it == terms_.end()) {
      terms_.emplace(m, v);
    } else {
      it->second = v;
    }
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Lexicographically largest term.
  std::pair<Monomial, Rational> leading_term() const {
    if (terms_.empty()) throw DomainError("leading term of zero");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
  }

  bool is_homogeneous(Int d) const {
    for (auto& [m, c] : terms_)
      if (m.degree != d) return false;
    return true;
  }

  bool is_monomial() const { return terms_.size() == 1; }

  RingElement operator-() const {
    RingElement r = *this;
    for (auto& [m, c] : r.terms_) c = field_.normalize(-c);
    return r;
  }

  RingElement& operator+=(const RingElement& o) {
    check_compatible(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  RingElement& operator-=(const RingElement& o) {
    check_compatible(o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }

  friend RingElement operator*(const RingElement& a, const RingElement& b) {
    a.check_compatible(b);
    RingElement r(a.field_, a.nvars_);
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  RingElement scaled(const Rational& s) const {
    RingElement r(field_, nvars_);
    for (auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
  }

  RingElement shifted(const Monomial& by) const {
    RingElement r(field_, nvars_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m * by, c);
    return r;
  }

  RingElement pow(Int e) const {
    if (e < 0) throw DomainError("negative power of a ring element");
    RingElement r = constant(field_, nvars_, 1);
    RingElement b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  bool operator==(const RingElement& o) const {
    return field_ == o.field_ && nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  /// Total order used for canonical sorting: by term list.
  bool operator<(const RingElement& o) const {
    if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
    return std::lexicographical_compare(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                        [](const auto& x, const auto& y) {
                                          if (x.first != y.first) return x.first < y.first;
                                          return x.second < y.second;
                                        });
  }

  std::vector<IntPoint> support() const {
    std::vector<IntPoint> s;
    for (auto& [m, c] : terms_) s.push_back(m.point());
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.get_str() + "*" + IntPoint(m.exponents).str() + "^" + std::to_string(m.degree);
    }
    return s;
  }

  void check_compatible(const RingElement& o) const {
    if (!(field_ == o.field_)) throw DomainError("field mismatch: " + field_.name() + " vs " + o.field_.name());
    if (nvars_ != o.nvars_) throw DomainError("ring elements live in different lattices");
  }

 private:
  Field field_;
  std::size_t nvars_ = 0;
  TermMap terms_;
};

inline RingElement mul_elements(const RingElement& a, const RingElement& b) { return a * b; }

/// Exact quotient a / b. With `laurent` false the quotient must be a
/// polynomial (no negative exponents); otherwise Laurent quotients are allowed.
inline std::optional<RingElement> div_exact(const RingElement& a, const RingElement& b, bool laurent = false) {
  if (b.is_zero()) throw DomainError("division by zero ring element");
  a.check_compatible(b);
  RingElement q(a.field(), a.nvars());
  if (a.is_zero()) return q;
  const std::size_t n = a.nvars();
  // Per-coordinate range any exact quotient must lie in (Newton polytopes add).
  auto range = [&](const RingElement& e) {
    IntVector lo(n + 1), hi(n + 1);
    bool first = true;
    for (auto& [m, c] : e.terms()) {
      for (std::size_t i = 0; i <= n; ++i) {
        Int v = i < n ? m.exponents[i] : m.degree;
        if (first || v < lo[i]) lo[i] = v;
        if (first || v > hi[i]) hi[i] = v;
      }
      first = false;
    }
    return std::pair{lo, hi};
  };
  auto [alo, ahi] = range(a);
  auto [blo, bhi] = range(b);
  auto [lb, lc] = b.leading_term();
  RingElement r = a;
  while (!r.is_zero()) {
    auto [lm, c] = r.leading_term();
    Monomial t = lm / lb;
    for (std::size_t i = 0; i <= n; ++i) {
      Int v = i < n ? t.exponents[i] : t.degree;
      if (v < alo[i] - blo[i] || v > ahi[i] - bhi[i]) return std::nullopt;
    }
    if (!laurent && !t.nonnegative()) return std::nullopt;
    Rational coeff = a.field().div(c, lc);
    q.add_term(t, coeff);
    r -= b.shifted(t).scaled(coeff);
  }
  return q;
}

/// Convex hull of the exponent vectors (degree coordinate dropped).
inline LatticePolytope newton_polytope(const RingElement& e) {
  if (e.is_zero()) throw DomainError("Newton polytope of zero");
  return convex_hull(e.support());
}

}  // namespace polytame
