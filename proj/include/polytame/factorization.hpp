#pragma once

// Polynomial factorization.
//   Z[T]: Zassenhaus (factor mod a good prime, Hensel lift, recombine).
//   Q[X_1..X_e]: Kronecker substitution to one variable after a generic
//   shift, univariate factorization, then recombination of the univariate
//   factors by trial division.
//   F_p[X_1..X_e]: exhaustive search for divisors of increasing degree.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "polytame/errors.hpp"
#include "polytame/field.hpp"
#include "polytame/polynomial.hpp"

namespace polytame {

struct FactorizationResult {
  Rational unit;
  std::vector<std::pair<RingElement, Int>> factors;  ///< canonical irreducibles with multiplicities, sorted

  RingElement expand(Field k, std::size_t nvars) const {
    RingElement r = RingElement::constant(k, nvars, unit);
    for (auto& [f, m] : factors) r = r * f.pow(m);
    return r;
  }
};

namespace upoly {

using ZPoly = std::vector<BigInt>;  ///< coefficient i of T^i
using FpPoly = std::vector<std::uint64_t>;

// ---------- Z[T] ----------

inline void trim(ZPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}
inline int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]))
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline ZPoly sub(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline ZPoly scale(ZPoly a, const BigInt& c) {
  for (auto& x : a) x *= c;
  trim(a);
  return a;
}

inline BigInt content(const ZPoly& a) {
  BigInt g = 0;
  for (auto& x : a) g = gcd(g, x);
  return g;
}

/// Primitive part with positive leading coefficient.
inline ZPoly primitive(ZPoly a) {
  trim(a);
  if (a.empty()) return a;
  BigInt g = content(a);
  if (sgn(a.back()) < 0) g = -g;
  for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return a;
}

inline ZPoly derivative(const ZPoly& a) {
  ZPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

/// a / b in Z[T] when exact.
inline std::optional<ZPoly> div_exact(ZPoly a, const ZPoly& b) {
  trim(a);
  if (b.empty()) throw DomainError("polynomial division by zero");
  if (a.empty()) return ZPoly{};
  if (deg(a) < deg(b)) return std::nullopt;
  ZPoly q(a.size() - b.size() + 1, 0);
  for (int i = deg(a) - deg(b); i >= 0; --i) {
    const BigInt& top = a[static_cast<std::size_t>(i) + b.size() - 1];
    if (sgn(top) == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    BigInt c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), b.back().get_mpz_t());
    q[static_cast<std::size_t>(i)] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[static_cast<std::size_t>(i) + j] -= c * b[j];
  }
  trim(a);
  if (!a.empty()) return std::nullopt;
  trim(q);
  return q;
}

/// Pseudo-remainder of a by b.
inline ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  trim(a);
  while (!a.empty() && deg(a) >= deg(b)) {
    BigInt la = a.back();
    const int shift = deg(a) - deg(b);
    a = scale(a, b.back());
    for (std::size_t j = 0; j < b.size(); ++j) a[static_cast<std::size_t>(shift) + j] -= la * b[j];
    trim(a);
  }
  return a;
}

/// gcd in Z[T] via primitive remainder sequences; primitive, positive leading coefficient.
inline ZPoly gcd_z(ZPoly a, ZPoly b) {
  a = primitive(a);
  b = primitive(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    ZPoly r = primitive(pseudo_rem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return primitive(a);
}

// ---------- F_p[T] ----------

struct Fp {
  std::uint64_t p;

  std::uint64_t mulm(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t powm(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
      if (e & 1) r = mulm(r, a);
      a = mulm(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return powm(a, p - 2); }

  static void trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  FpPoly from_z(const ZPoly& a) const {
    FpPoly r;
    BigInt P = static_cast<unsigned long>(p);
    for (auto& x : a) {
      BigInt m = x % P;
      if (m < 0) m += P;
      r.push_back(m.get_ui());
    }
    trim(r);
    return r;
  }

  FpPoly add(FpPoly a, const FpPoly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
    trim(a);
    return a;
  }
  FpPoly sub(FpPoly a, const FpPoly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
  }
  FpPoly mul(const FpPoly& a, const FpPoly& b) const {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i])
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulm(a[i], b[j])) % p;
    trim(r);
    return r;
  }
  FpPoly scale(FpPoly a, std::uint64_t c) const {
    for (auto& x : a) x = mulm(x, c);
    trim(a);
    return a;
  }
  FpPoly monic(const FpPoly& a) const { return a.empty() ? a : scale(a, inv(a.back())); }

  std::pair<FpPoly, FpPoly> divrem(FpPoly a, const FpPoly& b) const {
    if (b.empty()) throw DomainError("division by zero polynomial mod p");
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    FpPoly q(a.size() - b.size() + 1, 0);
    const std::uint64_t il = inv(b.back());
    for (std::size_t i = a.size() - b.size() + 1; i-- > 0;) {
      std::uint64_t c = mulm(a[i + b.size() - 1], il);
      q[i] = c;
      if (!c) continue;
      for (std::size_t j = 0; j < b.size(); ++j) a[i + j] = (a[i + j] + p - mulm(c, b[j])) % p;
    }
    trim(a);
    trim(q);
    return {q, a};
  }
  FpPoly rem(const FpPoly& a, const FpPoly& b) const { return divrem(a, b).second; }

  FpPoly gcd(FpPoly a, FpPoly b) const {
    while (!b.empty()) {
      FpPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  /// s, t with s a + t b = 1 (a, b coprime).
  std::pair<FpPoly, FpPoly> xgcd(const FpPoly& a, const FpPoly& b) const {
    FpPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
      auto [q, r] = divrem(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      FpPoly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.size() != 1) throw DomainError("Hensel lifting: factors are not coprime mod p");
    std::uint64_t c = inv(r0[0]);
    return {scale(s0, c), scale(t0, c)};
  }

  FpPoly powmod(FpPoly base, BigInt e, const FpPoly& m) const {
    FpPoly r = {1};
    base = rem(base, m);
    while (sgn(e) > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base), m);
      e >>= 1;
      if (sgn(e) > 0) base = rem(mul(base, base), m);
    }
    return r;
  }

  FpPoly derivative(const FpPoly& a) const {
    FpPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mulm(a[i], i % p));
    trim(r);
    return r;
  }

  /// Distinct-degree factorization of a squarefree monic polynomial: (product, degree) pairs.
  std::vector<std::pair<FpPoly, int>> ddf(FpPoly f) const {
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly x = {0, 1};
    FpPoly h = x;
    for (int d = 1; static_cast<int>(f.size()) - 1 >= 2 * d; ++d) {
      h = powmod(h, BigInt(static_cast<unsigned long>(p)), f);
      FpPoly g = gcd(sub(h, x), f);
      if (g.size() > 1) {
        out.push_back({g, d});
        f = divrem(f, g).first;
        h = rem(h, f);
      }
    }
    if (f.size() > 1) out.push_back({monic(f), static_cast<int>(f.size()) - 1});
    return out;
  }

  /// Equal-degree splitting (Cantor-Zassenhaus, odd p) into monic irreducibles of degree d.
  void edf(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) const {
    const int n = static_cast<int>(f.size()) - 1;
    if (n == d) {
      out.push_back(monic(f));
      return;
    }
    BigInt e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    while (true) {
      FpPoly a(static_cast<std::size_t>(n), 0);
      for (auto& c : a) c = rng() % p;
      trim(a);
      if (a.size() < 2) continue;
      FpPoly b = sub(powmod(a, e, f), {1});
      FpPoly g = gcd(b, f);
      if (g.size() > 1 && g.size() < f.size()) {
        edf(g, d, rng, out);
        edf(divrem(f, g).first, d, rng, out);
        return;
      }
    }
  }

  std::vector<FpPoly> factor_squarefree(const FpPoly& f) const {
    std::mt19937_64 rng(0x5eed + p);
    std::vector<FpPoly> out;
    for (auto& [g, d] : ddf(monic(f))) edf(g, d, rng, out);
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline ZPoly mod_nonneg(ZPoly a, const BigInt& m) {
  for (auto& x : a) {
    x %= m;
    if (x < 0) x += m;
  }
  trim(a);
  return a;
}

inline ZPoly symmetric(ZPoly a, const BigInt& m) {
  BigInt half = m / 2;
  for (auto& x : a) {
    x %= m;
    if (x < 0) x += m;
    if (x > half) x -= m;
  }
  trim(a);
  return a;
}

inline ZPoly to_z(const FpPoly& a) {
  ZPoly r;
  for (auto c : a) r.push_back(BigInt(static_cast<unsigned long>(c)));
  return r;
}

/// Lifts g = A0 * B0 (mod p), A0 monic, to g = A * B (mod p^a).
inline std::pair<ZPoly, ZPoly> hensel_lift(const ZPoly& g, const FpPoly& A0, const FpPoly& B0, const Fp& F,
                                           int a) {
  const FpPoly t = F.xgcd(A0, B0).second;
  ZPoly A = to_z(A0), B = to_z(B0);
  BigInt pk = static_cast<unsigned long>(F.p);
  const BigInt P = pk;
  for (int k = 1; k < a; ++k) {
    ZPoly e = sub(g, mul(A, B));
    for (auto& x : e) {
      if (!mpz_divisible_p(x.get_mpz_t(), pk.get_mpz_t())) throw DomainError("Hensel lifting invariant broken");
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
    }
    FpPoly ep = F.from_z(e);
    FpPoly dA = F.rem(F.mul(ep, t), A0);
    auto [dB, r] = F.divrem(F.sub(ep, F.mul(B0, dA)), A0);
    if (!r.empty()) throw DomainError("Hensel lifting: inexact division");
    ZPoly zA = to_z(dA), zB = to_z(dB);
    A.resize(std::max(A.size(), zA.size()), 0);
    B.resize(std::max(B.size(), zB.size()), 0);
    for (std::size_t i = 0; i < zA.size(); ++i) A[i] += pk * zA[i];
    for (std::size_t i = 0; i < zB.size(); ++i) B[i] += pk * zB[i];
    pk *= P;
    A = mod_nonneg(A, pk);
    B = mod_nonneg(B, pk);
  }
  return {A, B};
}

inline bool is_prime_small(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Irreducible factors of a squarefree primitive g with positive leading coefficient and g(0) != 0.
inline std::vector<ZPoly> zassenhaus(const ZPoly& g) {
  if (deg(g) <= 1) return {g};
  const BigInt& lc = g.back();
  // Choose among a few good primes the one giving the fewest modular factors.
  std::optional<Fp> best;
  std::size_t best_count = 0;
  int good = 0;
  for (unsigned long p = 3; good < 5 && p < 5000; p += 2) {
    if (!is_prime_small(p)) continue;
    if (mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
    Fp F{p};
    FpPoly gp = F.from_z(g);
    if (F.gcd(gp, F.derivative(gp)).size() != 1) continue;
    ++good;
    std::size_t count = 0;
    for (auto& [h, d] : F.ddf(F.monic(gp))) count += (h.size() - 1) / static_cast<std::size_t>(d);
    if (!best || count < best_count) {
      best = F;
      best_count = count;
    }
    if (count == 1) break;
  }
  if (!best) throw DomainError("factorization: no good prime found");
  const Fp F = *best;
  if (best_count == 1) return {g};
  std::vector<FpPoly> mod_factors = F.factor_squarefree(F.from_z(g));

  // Coefficient bound for lc * (any factor).
  BigInt norm2 = 0;
  for (auto& c : g) norm2 += c * c;
  BigInt norm = sqrt(norm2) + 1;
  BigInt bound = 2 * abs(lc) * norm;
  bound <<= static_cast<unsigned long>(deg(g));
  int a = 1;
  BigInt pa = static_cast<unsigned long>(F.p);
  while (pa <= bound) {
    pa *= static_cast<unsigned long>(F.p);
    ++a;
  }

  // Sequential two-factor lifting.
  std::vector<ZPoly> lifted;
  ZPoly rest = g;
  for (std::size_t i = 0; i + 1 < mod_factors.size(); ++i) {
    FpPoly others = F.from_z(ZPoly{rest.back()});
    for (std::size_t j = i + 1; j < mod_factors.size(); ++j) others = F.mul(others, mod_factors[j]);
    auto [A, B] = hensel_lift(rest, mod_factors[i], others, F, a);
    lifted.push_back(A);
    rest = B;
  }
  {
    BigInt inv;
    BigInt l = rest.back() % pa;
    if (l < 0) l += pa;
    mpz_invert(inv.get_mpz_t(), l.get_mpz_t(), pa.get_mpz_t());
    lifted.push_back(mod_nonneg(scale(rest, inv), pa));
  }

  // Recombination.
  std::vector<ZPoly> result;
  ZPoly cur = g;
  std::vector<ZPoly> avail = lifted;
  std::size_t s = 1;
  while (2 * s <= avail.size()) {
    bool found = false;
    std::vector<std::size_t> pick(s);
    for (std::size_t i = 0; i < s; ++i) pick[i] = i;
    while (true) {
      ZPoly v = {cur.back()};
      for (auto i : pick) v = mod_nonneg(mul(v, avail[i]), pa);
      ZPoly h = primitive(symmetric(v, pa));
      if (deg(h) > 0) {
        if (auto q = div_exact(cur, h)) {
          result.push_back(h);
          cur = *q;
          std::vector<ZPoly> next;
          for (std::size_t i = 0; i < avail.size(); ++i)
            if (std::find(pick.begin(), pick.end(), i) == pick.end()) next.push_back(avail[i]);
          avail = std::move(next);
          found = true;
          break;
        }
      }
      std::size_t i = s;
      while (i > 0 && pick[i - 1] == avail.size() - s + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (deg(cur) > 0) result.push_back(primitive(cur));
  return result;
}

struct ZFactorization {
  BigInt content;                            ///< signed
  std::vector<std::pair<ZPoly, Int>> factors;  ///< primitive, positive leading coefficient
};

/// Complete factorization over Z of a nonzero polynomial.
inline ZFactorization factor_z(ZPoly f) {
  trim(f);
  if (f.empty()) throw DomainError("factorization of zero");
  ZFactorization out;
  out.content = content(f);
  if (sgn(f.back()) < 0) out.content = -out.content;
  ZPoly g = primitive(f);
  Int tpow = 0;
  while (sgn(g[0]) == 0) {
    g.erase(g.begin());
    ++tpow;
  }
  if (tpow) out.factors.push_back({ZPoly{0, 1}, tpow});
  if (deg(g) > 0) {
    ZPoly gd = gcd_z(g, derivative(g));
    ZPoly rad = deg(gd) > 0 ? *div_exact(g, gd) : g;
    for (auto& h : zassenhaus(primitive(rad))) {
      Int m = 0;
      while (auto q = div_exact(g, h)) {
        g = *q;
        ++m;
      }
      out.factors.push_back({h, m});
    }
  }
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

}  // namespace upoly

namespace detail {

/// Canonical form of a nonzero element and the scalar removed:
/// over Q primitive integer coefficients with lex-leading coefficient positive,
/// over F_p monic in lex order.
inline std::pair<RingElement, Rational> normalize_factor(const RingElement& e) {
  const Field k = e.field();
  if (!k.is_rational()) {
    Rational lc = e.leading_term().second;
    return {e.scaled(k.inv(lc)), lc};
  }
  BigInt l = 1, g = 0;
  for (auto& [m, c] : e.terms()) l = lcm(l, BigInt(c.get_den()));
  for (auto& [m, c] : e.terms()) g = gcd(g, BigInt(c.get_num()) * (l / BigInt(c.get_den())));
  Rational s = Rational(g) / Rational(l);
  if (sgn(e.leading_term().second) < 0) s = -s;
  return {e.scaled(1 / s), s};
}

inline RingElement substitute_shift(const RingElement& e, const IntVector& shift) {
  // X_i -> X_i + shift_i
  const Field k = e.field();
  const std::size_t n = e.nvars();
  RingElement r(k, n);
  for (auto& [m, c] : e.terms()) {
    RingElement t = RingElement::constant(k, n, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (m.exponents[i] == 0) continue;
      IntVector ev(n, 0);
      ev[i] = 1;
      RingElement lin = RingElement::monomial(k, IntPoint(ev), 0) + RingElement::constant(k, n, big(shift[i]));
      t = t * lin.pow(m.exponents[i]);
    }
    r += t;
  }
  return r;
}

inline std::size_t search_limit() { return 1u << 22; }

/// Exhaustive factorization over F_p of a polynomial without monomial content.
inline std::vector<std::pair<RingElement, Int>> factor_fp_exhaustive(RingElement f) {
  const Field k = f.field();
  const std::size_t n = f.nvars();
  const Int p = k.characteristic();
  std::vector<std::pair<RingElement, Int>> out;
  auto total_degree = [](const RingElement& e) {
    Int d = 0;
    for (auto& [m, c] : e.terms()) {
      Int s = 0;
      for (auto x : m.exponents) s += x;
      d = std::max(d, s);
    }
    return d;
  };
  while (total_degree(f) > 0) {
    const Int td = total_degree(f);
    IntVector box(n, 0);
    for (auto& [m, c] : f.terms())
      for (std::size_t i = 0; i < n; ++i) box[i] = std::max(box[i], m.exponents[i]);
    std::optional<RingElement> divisor;
    for (Int t = 1; 2 * t <= td && !divisor; ++t) {
      // Monomials of total degree <= t inside the exponent box.
      std::vector<IntVector> mons;
      IntVector cur(n, 0);
      while (true) {
        Int s = 0;
        for (auto x : cur) s += x;
        if (s <= t) mons.push_back(cur);
        std::size_t i = n;
        while (i > 0 && cur[i - 1] == box[i - 1]) cur[--i] = 0;
        if (i == 0) break;
        ++cur[i - 1];
      }
      double count = 1;
      for (std::size_t i = 0; i < mons.size(); ++i) count *= static_cast<double>(p);
      if (count > static_cast<double>(search_limit())) throw DomainError("finite-field factorization search too large");
      std::vector<Int> digits(mons.size(), 0);
      while (!divisor) {
        std::size_t c = mons.size();
        while (c > 0 && digits[c - 1] == p - 1) digits[--c] = 0;
        if (c == 0) break;
        ++digits[c - 1];
        RingElement h(k, n);
        for (std::size_t i = 0; i < mons.size(); ++i)
          if (digits[i]) h.add_term({mons[i], 0}, big(digits[i]));
        if (h.leading_term().second != 1 || total_degree(h) != t) continue;
        if (div_exact(f, h)) divisor = h;
      }
    }
    RingElement h = divisor ? *divisor : normalize_factor(f).first;
    Int mult = 0;
    while (auto q = div_exact(f, h)) {
      f = *q;
      ++mult;
    }
    out.push_back({h, mult});
  }
  return out;
}

/// Factorization over Q of a polynomial without monomial content and with nonzero total degree.
inline std::vector<std::pair<RingElement, Int>> factor_q_nonmonomial(RingElement f) {
  const Field k = f.field();
  const std::size_t n = f.nvars();
  std::vector<std::pair<RingElement, Int>> out;
  IntVector degs(n, 0);
  for (auto& [m, c] : f.terms())
    for (std::size_t i = 0; i < n; ++i) degs[i] = std::max(degs[i], m.exponents[i]);

  // Generic shift so the univariate image has few spurious factors.
  IntVector shift(n, 0);
  if (n >= 2)
    for (std::size_t i = 0; i < n; ++i) shift[i] = static_cast<Int>(i + 1);
  RingElement g = normalize_factor(substitute_shift(f, shift)).first;

  std::vector<BigInt> radix(n, 1);
  BigInt span = 1;
  for (std::size_t i = 0; i < n; ++i) {
    radix[i] = span;
    span *= big(degs[i] + 1);
  }
  if (span > 100000) throw DomainError("polynomial degree too large for Kronecker substitution");
  const std::size_t len = span.get_ui();

  auto kron = [&](const RingElement& e) {
    upoly::ZPoly u(len, 0);
    for (auto& [m, c] : e.terms()) {
      BigInt idx = 0;
      for (std::size_t i = 0; i < n; ++i) idx += radix[i] * big(m.exponents[i]);
      u[idx.get_ui()] += BigInt(c.get_num());
    }
    upoly::trim(u);
    return u;
  };
  auto unkron = [&](const upoly::ZPoly& u) -> std::optional<RingElement> {
    if (u.size() > len) return std::nullopt;
    RingElement r(k, n);
    for (std::size_t t = 0; t < u.size(); ++t) {
      if (sgn(u[t]) == 0) continue;
      IntVector e(n);
      std::size_t rem = t;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t d = static_cast<std::size_t>(degs[i] + 1);
        e[i] = static_cast<Int>(rem % d);
        rem /= d;
      }
      r.add_term({e, 0}, Rational(u[t]));
    }
    return r;
  };

  auto uf = upoly::factor_z(kron(g));
  std::vector<upoly::ZPoly> pieces;
  std::vector<Int> avail;
  for (auto& [h, m] : uf.factors) {
    pieces.push_back(h);
    avail.push_back(m);
  }

  std::size_t tested = 0;
  auto done = [&] { return g.size() == 1 && g.terms().begin()->first.exponents == IntVector(n, 0); };
  for (Int card = 1; !done(); ++card) {
    Int total = 0;
    for (auto a : avail) total += a;
    if (card > total) break;
    // Sub-multisets of size card.
    std::vector<Int> take(pieces.size(), 0);
    bool progress = true;
    while (progress && !done()) {
      progress = false;
      auto rec = [&](auto&& self, std::size_t i, Int left) -> bool {
        if (left == 0) {
          if (++tested > search_limit()) throw DomainError("factor recombination search too large");
          upoly::ZPoly v = {1};
          for (std::size_t j = 0; j < pieces.size(); ++j)
            for (Int r = 0; r < take[j]; ++r) v = upoly::mul(v, pieces[j]);
          auto h = unkron(upoly::primitive(v));
          if (!h || h->is_zero()) return false;
          if (!div_exact(g, *h)) return false;
          Int mult = 0;
          while (auto q = div_exact(g, *h)) {
            g = *q;
            ++mult;
          }
          for (std::size_t j = 0; j < pieces.size(); ++j) avail[j] -= take[j] * mult;
          IntVector neg = shift;
          for (auto& x : neg) x = -x;
          out.push_back({normalize_factor(substitute_shift(*h, neg)).first, mult});
          return true;
        }
        if (i == pieces.size()) return false;
        for (Int t = std::min(left, avail[i]); t >= 0; --t) {
          take[i] = t;
          if (self(self, i + 1, left - t)) {
            take[i] = 0;
            return true;
          }
        }
        take[i] = 0;
        return false;
      };
      if (rec(rec, 0, card)) progress = true;
    }
  }
  if (!done()) throw DomainError("factor recombination failed");
  return out;
}

}  // namespace detail

/// Complete factorization of a nonzero degree-0 polynomial.
inline FactorizationResult factor_polynomial(const RingElement& p) {
  if (p.is_zero()) throw DomainError("factorization of zero");
  const Field k = p.field();
  const std::size_t n = p.nvars();
  for (auto& [m, c] : p.terms())
    if (m.degree != 0) throw DomainError("factorization expects a dehomogenized (degree-0) polynomial");
  FactorizationResult res;
  // Monomial content.
  IntVector lo(n, 0);
  bool first = true;
  for (auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < n; ++i) lo[i] = first ? m.exponents[i] : std::min(lo[i], m.exponents[i]);
    first = false;
  }
  for (auto x : lo)
    if (x < 0) throw DomainError("factorization expects nonnegative exponents");
  RingElement rest = p.shifted({[&] {
    IntVector v = lo;
    for (auto& x : v) x = -x;
    return v;
  }(), 0});
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > 0) {
      IntVector e(n, 0);
      e[i] = 1;
      res.factors.push_back({RingElement::monomial(k, IntPoint(e), 0), lo[i]});
    }
  auto [norm, unit] = detail::normalize_factor(rest);
  res.unit = unit;
  bool constant = norm.size() == 1 && norm.terms().begin()->first.exponents == IntVector(n, 0);
  if (!constant) {
    auto parts = k.is_rational() ? detail::factor_q_nonmonomial(norm) : detail::factor_fp_exhaustive(norm);
    for (auto& pr : parts) res.factors.push_back(pr);
  }
  // Fix the unit so the product is exact.
  RingElement prod = RingElement::constant(k, n, 1);
  for (auto& [f, m] : res.factors) prod = prod * f.pow(m);
  auto lc_p = p.leading_term().second, lc_prod = prod.leading_term().second;
  res.unit = k.div(lc_p, lc_prod);
  std::sort(res.factors.begin(), res.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (!(res.expand(k, n) == p)) throw DomainError("factorization failed to reproduce its input");
  return res;
}

}  // namespace polytame
