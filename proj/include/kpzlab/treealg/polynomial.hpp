#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "kpzlab/treealg/exact.hpp"

namespace kpzlab::treealg {

/// Exact multivariate polynomial over Q in named indeterminates.
class Polynomial {
 public:
  /// Variable name -> exponent (exponents are >= 1).
  using Monomial = std::map<std::string, unsigned>;

  Polynomial() = default;
  Polynomial(Rational constant);
  Polynomial(int constant) : Polynomial(Rational(constant)) {}

  static Polynomial variable(const std::string& name);

  bool is_zero() const { return terms_.empty(); }
  /// The value if the polynomial has no indeterminates.
  std::optional<Rational> as_rational() const;
  const std::map<Monomial, Rational>& terms() const& { return terms_; }
  std::map<Monomial, Rational> terms() && { return std::move(terms_); }
  std::set<std::string> variables() const;
  bool depends_on(const std::string& name) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial(-1) * a; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Replaces the listed variables by polynomials; others are kept.
  Polynomial substitute(const std::map<std::string, Polynomial>& values) const;

  /// Canonical text, e.g. "h + a*w", "1/4*C2 - 2*C0", "0".
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  std::map<Monomial, Rational> terms_;
};

Polynomial pow(const Polynomial& p, unsigned n);

/// Parses sums of products of rationals, identifiers, powers (x^2) and parentheses.
Polynomial parse_polynomial(std::string_view text);

}  // namespace kpzlab::treealg
