#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kpzlab/treealg/exact.hpp"
#include "kpzlab/treealg/polynomial.hpp"

namespace kpzlab::treealg {

/// A decorated rooted tree, stored in canonical form.
///
/// A node carries a monomial X^(l0,l1), a number of noise symbols and two
/// sorted lists of children, one hanging off I edges and one off I' edges.
/// The unit is the empty node. Commutative products merge root nodes.
class Tree {
 public:
  Tree() = default;

  static Tree unit() { return {}; }
  static Tree xi();
  static Tree monomial(unsigned time_power, unsigned space_power);
  static Tree node(unsigned time_power, unsigned space_power, unsigned noises,
                   std::vector<Tree> integrals, std::vector<Tree> prime_integrals);

  /// I(t) and I'(t); empty when t is a pure monomial, where both vanish.
  static std::optional<Tree> integrate(const Tree& t);
  static std::optional<Tree> integrate_prime(const Tree& t);

  unsigned time_power() const { return l0_; }
  unsigned space_power() const { return l1_; }
  unsigned noise_count() const { return noises_; }
  const std::vector<Tree>& integrals() const { return integ_; }
  const std::vector<Tree>& prime_integrals() const { return prime_; }

  bool is_unit() const;
  bool is_polynomial() const { return noises_ == 0 && integ_.empty() && prime_.empty(); }
  /// Atom of the form I(c) (resp. I'(c)); the child is returned.
  std::optional<Tree> integral_child() const;
  std::optional<Tree> prime_integral_child() const;

  /// Splits into atomic factors: the monomial (if not 1), each Xi, each branch.
  std::vector<Tree> factors() const;

  ExactDegree degree() const;

  /// Canonical text: "1", "Xi", "X1", "X^(1,2)", "I(..)", "I'(..)", joined by '*'.
  std::string to_string() const;

  friend Tree operator*(const Tree& a, const Tree& b);
  friend bool operator==(const Tree& a, const Tree& b);
  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b);

 private:
  unsigned l0_ = 0;
  unsigned l1_ = 0;
  unsigned noises_ = 0;
  std::vector<Tree> integ_;
  std::vector<Tree> prime_;
};

/// Parses the canonical text; also accepts "X0", "t^n" powers and parentheses.
Tree parse_tree(std::string_view text);

/// Maps a tree to display text; the default writes the canonical text in brackets.
using TreeNamer = std::function<std::string(const Tree&)>;
std::string bracketed_name(const Tree& t);

/// Finite linear combination of trees with polynomial coefficients.
class TreeCombination {
 public:
  TreeCombination() = default;
  TreeCombination(const Tree& t) { add(t, Polynomial(1)); }
  TreeCombination(const Polynomial& coefficient, const Tree& t) { add(t, coefficient); }

  void add(const Tree& t, const Polynomial& coefficient);
  Polynomial coefficient(const Tree& t) const;
  const std::map<Tree, Polynomial>& terms() const& { return terms_; }
  std::map<Tree, Polynomial> terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  TreeCombination& operator+=(const TreeCombination& other);
  TreeCombination& operator-=(const TreeCombination& other);
  friend TreeCombination operator+(TreeCombination a, const TreeCombination& b) { return a += b; }
  friend TreeCombination operator-(TreeCombination a, const TreeCombination& b) { return a -= b; }
  friend TreeCombination operator*(const Polynomial& s, const TreeCombination& x);
  /// Bilinear tree product.
  friend TreeCombination operator*(const TreeCombination& x, const TreeCombination& y);
  friend bool operator==(const TreeCombination&, const TreeCombination&) = default;

  /// Substitutes values for coefficient indeterminates.
  TreeCombination substitute(const std::map<std::string, Polynomial>& values) const;

  std::string to_string(const TreeNamer& namer = bracketed_name) const;

 private:
  std::map<Tree, Polynomial> terms_;
};

TreeCombination product(const TreeCombination& x, const TreeCombination& y);

/// Linear extensions of I and I'; polynomial trees are sent to zero.
TreeCombination integrate(const TreeCombination& x);
TreeCombination integrate_prime(const TreeCombination& x);

/// Abstract derivative on polynomials and on I(.): d1 = 0, dX^(l0,l1) = l1 X^(l0,l1-1),
/// dI(t) = I'(t). Anything else is outside its domain (std::domain_error).
TreeCombination derivative(const Tree& t);
TreeCombination derivative(const TreeCombination& x);

/// Q_{<= m}: keeps trees of degree at most m.
TreeCombination truncate_at_most(const TreeCombination& x, const ExactDegree& m);

/// Resolves a tree reference written "<name>" in combination text.
using TreeResolver = std::function<Tree(std::string_view)>;

/// Parses e.g. "<tree1> - 2 C0 <1d2d> - (d + a*g) <one> + [I(Xi)]".
/// "[...]" holds canonical tree text, "<...>" a name passed to the resolver.
TreeCombination parse_combination(std::string_view text, const TreeResolver& resolve);

}  // namespace kpzlab::treealg
