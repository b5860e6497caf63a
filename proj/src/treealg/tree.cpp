#include "kpzlab/treealg/tree.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kpzlab::treealg {

Tree Tree::xi() { return node(0, 0, 1, {}, {}); }

Tree Tree::monomial(unsigned time_power, unsigned space_power) {
  return node(time_power, space_power, 0, {}, {});
}

Tree Tree::node(unsigned time_power, unsigned space_power, unsigned noises,
                std::vector<Tree> integrals, std::vector<Tree> prime_integrals) {
  for (const auto& c : integrals) {
    if (c.is_polynomial()) throw std::invalid_argument("I applied to a polynomial");
  }
  for (const auto& c : prime_integrals) {
    if (c.is_polynomial()) throw std::invalid_argument("I' applied to a polynomial");
  }
  Tree t;
  t.l0_ = time_power;
  t.l1_ = space_power;
  t.noises_ = noises;
  t.integ_ = std::move(integrals);
  t.prime_ = std::move(prime_integrals);
  std::sort(t.integ_.begin(), t.integ_.end());
  std::sort(t.prime_.begin(), t.prime_.end());
  return t;
}

std::optional<Tree> Tree::integrate(const Tree& t) {
  if (t.is_polynomial()) return std::nullopt;
  return node(0, 0, 0, {t}, {});
}

std::optional<Tree> Tree::integrate_prime(const Tree& t) {
  if (t.is_polynomial()) return std::nullopt;
  return node(0, 0, 0, {}, {t});
}

bool Tree::is_unit() const { return is_polynomial() && l0_ == 0 && l1_ == 0; }

std::optional<Tree> Tree::integral_child() const {
  if (l0_ == 0 && l1_ == 0 && noises_ == 0 && integ_.size() == 1 && prime_.empty()) return integ_[0];
  return std::nullopt;
}

std::optional<Tree> Tree::prime_integral_child() const {
  if (l0_ == 0 && l1_ == 0 && noises_ == 0 && integ_.empty() && prime_.size() == 1) return prime_[0];
  return std::nullopt;
}

std::vector<Tree> Tree::factors() const {
  std::vector<Tree> out;
  if (l0_ != 0 || l1_ != 0) out.push_back(monomial(l0_, l1_));
  for (unsigned i = 0; i < noises_; ++i) out.push_back(xi());
  for (const auto& c : integ_) out.push_back(node(0, 0, 0, {c}, {}));
  for (const auto& c : prime_) out.push_back(node(0, 0, 0, {}, {c}));
  return out;
}

ExactDegree Tree::degree() const {
  ExactDegree d(Rational(2 * l0_ + l1_));
  d += Rational(noises_) * ExactDegree(Rational(-3, 2), -1);
  for (const auto& c : integ_) d += c.degree() + ExactDegree(2);
  for (const auto& c : prime_) d += c.degree() + ExactDegree(1);
  return d;
}

std::string Tree::to_string() const {
  std::vector<std::string> parts;
  if (l0_ == 0 && l1_ == 1) {
    parts.emplace_back("X1");
  } else if (l0_ == 1 && l1_ == 0) {
    parts.emplace_back("X0");
  } else if (l0_ != 0 || l1_ != 0) {
    parts.push_back("X^(" + std::to_string(l0_) + "," + std::to_string(l1_) + ")");
  }
  for (unsigned i = 0; i < noises_; ++i) parts.emplace_back("Xi");
  for (const auto& c : integ_) parts.push_back("I(" + c.to_string() + ")");
  for (const auto& c : prime_) parts.push_back("I'(" + c.to_string() + ")");
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
  return out;
}

Tree operator*(const Tree& a, const Tree& b) {
  std::vector<Tree> integ = a.integ_;
  integ.insert(integ.end(), b.integ_.begin(), b.integ_.end());
  std::vector<Tree> prime = a.prime_;
  prime.insert(prime.end(), b.prime_.begin(), b.prime_.end());
  return Tree::node(a.l0_ + b.l0_, a.l1_ + b.l1_, a.noises_ + b.noises_, std::move(integ),
                    std::move(prime));
}

bool operator==(const Tree& a, const Tree& b) {
  return a.l0_ == b.l0_ && a.l1_ == b.l1_ && a.noises_ == b.noises_ && a.integ_ == b.integ_ &&
         a.prime_ == b.prime_;
}

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
  if (auto c = b.noises_ <=> a.noises_; c != 0) return c;  // leaves first
  if (auto c = a.l0_ <=> b.l0_; c != 0) return c;
  if (auto c = a.l1_ <=> b.l1_; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(a.prime_.begin(), a.prime_.end(),
                                                       b.prime_.begin(), b.prime_.end());
      c != 0) {
    return c;
  }
  return std::lexicographical_compare_three_way(a.integ_.begin(), a.integ_.end(), b.integ_.begin(),
                                                b.integ_.end());
}

std::string bracketed_name(const Tree& t) { return "[" + t.to_string() + "]"; }

// ---- combinations ----------------------------------------------------------

void TreeCombination::add(const Tree& t, const Polynomial& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.emplace(t, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial TreeCombination::coefficient(const Tree& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Polynomial() : it->second;
}

TreeCombination& TreeCombination::operator+=(const TreeCombination& other) {
  for (const auto& [t, c] : other.terms_) add(t, c);
  return *this;
}

TreeCombination& TreeCombination::operator-=(const TreeCombination& other) {
  for (const auto& [t, c] : other.terms_) add(t, -c);
  return *this;
}

TreeCombination operator*(const Polynomial& s, const TreeCombination& x) {
  TreeCombination out;
  for (const auto& [t, c] : x.terms_) out.add(t, s * c);
  return out;
}

TreeCombination operator*(const TreeCombination& x, const TreeCombination& y) {
  TreeCombination out;
  for (const auto& [t1, c1] : x.terms_) {
    for (const auto& [t2, c2] : y.terms_) out.add(t1 * t2, c1 * c2);
  }
  return out;
}

TreeCombination product(const TreeCombination& x, const TreeCombination& y) { return x * y; }

TreeCombination TreeCombination::substitute(const std::map<std::string, Polynomial>& values) const {
  TreeCombination out;
  for (const auto& [t, c] : terms_) out.add(t, c.substitute(values));
  return out;
}

namespace {

std::string coefficient_text(const Polynomial& c, bool& negative) {
  negative = false;
  if (c.terms().size() == 1) {
    const auto& [m, q] = *c.terms().begin();
    negative = q < 0;
    Polynomial mag = negative ? -c : c;
    if (mag == Polynomial(1)) return "";
    return mag.to_string() + " ";
  }
  return "(" + c.to_string() + ") ";
}

}  // namespace

std::string TreeCombination::to_string(const TreeNamer& namer) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [t, c] : terms_) {
    bool negative = false;
    const std::string coeff = coefficient_text(c, negative);
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += coeff + namer(t);
  }
  return out;
}

TreeCombination integrate(const TreeCombination& x) {
  TreeCombination out;
  for (const auto& [t, c] : x.terms()) {
    if (auto it = Tree::integrate(t)) out.add(*it, c);
  }
  return out;
}

TreeCombination integrate_prime(const TreeCombination& x) {
  TreeCombination out;
  for (const auto& [t, c] : x.terms()) {
    if (auto it = Tree::integrate_prime(t)) out.add(*it, c);
  }
  return out;
}

TreeCombination derivative(const Tree& t) {
  if (t.is_polynomial()) {
    if (t.space_power() == 0) return {};
    return TreeCombination(Polynomial(Rational(t.space_power())),
                           Tree::monomial(t.time_power(), t.space_power() - 1));
  }
  if (auto child = t.integral_child()) return TreeCombination(*Tree::integrate_prime(*child));
  throw std::domain_error("abstract derivative undefined on " + t.to_string());
}

TreeCombination derivative(const TreeCombination& x) {
  TreeCombination out;
  for (const auto& [t, c] : x.terms()) out += c * derivative(t);
  return out;
}

TreeCombination truncate_at_most(const TreeCombination& x, const ExactDegree& m) {
  TreeCombination out;
  for (const auto& [t, c] : x.terms()) {
    if (t.degree() <= m) out.add(t, c);
  }
  return out;
}

}  // namespace kpzlab::treealg
