#pragma once

// Coefficient fields: the rationals, or F_p for a small prime p.

#include <algorithm>
#include <cctype>
#include <string>

#include "polytame/errors.hpp"
#include "polytame/integer_linalg.hpp"

namespace polytame {

inline constexpr Int kMaxFieldPrime = 97;

class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }

  static Field prime(Int p) {
    if (p < 2 || p > kMaxFieldPrime) throw DomainError("prime field characteristic must be in [2, 97]");
    for (Int d = 2; d * d <= p; ++d)
      if (p % d == 0) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
    Field f;
    f.p_ = p;
    return f;
  }

  /// Accepts "Q", "F<p>" and lowercase variants ("f2").
  static Field parse(const std::string& s) {
    if (s == "Q" || s == "q" || s == "QQ") return rationals();
    if (s.size() >= 2 && (s[0] == 'F' || s[0] == 'f')) {
      std::string digits = s.substr(1);
      if (!digits.empty() && digits.size() <= 3 &&
          std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
        return prime(std::stoll(digits));
    }
    throw InputError("unknown field '" + s + "'");
  }

  Int characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }
  std::string name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

  /// Canonical representative: lowest terms over Q, residue in [0, p) over F_p.
  Rational normalize(const Rational& v) const {
    if (p_ == 0) {
      Rational r = v;
      r.canonicalize();
      return r;
    }
    BigInt P = big(p_);
    BigInt num = BigInt(v.get_num()) % P;
    if (num < 0) num += P;
    BigInt den = BigInt(v.get_den()) % P;
    if (den < 0) den += P;
    if (den == 0) throw DomainError("denominator divisible by the field characteristic");
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    return Rational(BigInt((num * inv) % P));
  }

  Rational add(const Rational& a, const Rational& b) const { return normalize(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return normalize(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return normalize(a * b); }
  Rational inv(const Rational& a) const {
    if (sgn(a) == 0) throw DomainError("division by zero in field " + name());
    return normalize(1 / a);
  }
  Rational div(const Rational& a, const Rational& b) const { return mul(a, inv(b)); }

  bool operator==(const Field&) const = default;

 private:
  Int p_ = 0;
};

}  // namespace polytame
