#include "kpzlab/treealg/polynomial.hpp"

#include <sstream>


namespace kpzlab::treealg {

Polynomial::Polynomial(Rational constant) {
  if (constant != 0) terms_.emplace(Monomial{}, std::move(constant));
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.terms_.emplace(Monomial{{name, 1U}}, Rational(1));
  return p;
}

std::optional<Rational> Polynomial::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [name, e] : m) out.insert(name);
  }
  return out;
}

bool Polynomial::depends_on(const std::string& name) const { return variables().count(name) > 0; }

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  Polynomial product;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : other.terms_) {
      Monomial m = m1;
      for (const auto& [name, e] : m2) m[name] += e;
      product.add_term(m, c1 * c2);
    }
  }
  *this = std::move(product);
  return *this;
}

Polynomial pow(const Polynomial& p, unsigned n) {
  Polynomial out(1);
  for (unsigned i = 0; i < n; ++i) out *= p;
  return out;
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial>& values) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial term(c);
    Monomial kept;
    for (const auto& [name, e] : m) {
      auto it = values.find(name);
      if (it == values.end()) {
        kept[name] = e;
      } else {
        term *= pow(it->second, e);
      }
    }
    Polynomial rest;
    rest.terms_.emplace(kept, Rational(1));
    out += term * rest;
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (mag != 1 || m.empty()) {
      os << treealg::to_string(mag);
      need_star = true;
    }
    for (const auto& [name, e] : m) {
      if (need_star) os << '*';
      os << name;
      if (e > 1) os << '^' << e;
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace kpzlab::treealg
