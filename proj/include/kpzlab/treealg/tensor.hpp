#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kpzlab/treealg/tree.hpp"

namespace kpzlab::treealg {

/// Monomial in the free commutative algebra T_+: a sorted multiset of generators.
class PlusMonomial {
 public:
  PlusMonomial() = default;
  explicit PlusMonomial(const Tree& generator);
  explicit PlusMonomial(std::vector<Tree> factors);

  bool is_unit() const { return factors_.empty(); }
  const std::vector<Tree>& factors() const { return factors_; }

  friend PlusMonomial operator*(const PlusMonomial& a, const PlusMonomial& b);
  friend auto operator<=>(const PlusMonomial&, const PlusMonomial&) = default;
  friend bool operator==(const PlusMonomial&, const PlusMonomial&) = default;

  /// "<one>" for the unit, otherwise names joined by '.'.
  std::string to_string(const TreeNamer& namer = bracketed_name) const;

 private:
  std::vector<Tree> factors_;
};

/// Element of T (x) T_+ with polynomial coefficients.
class TensorElement {
 public:
  using Key = std::pair<Tree, PlusMonomial>;

  void add(const Tree& left, const PlusMonomial& right, const Polynomial& coefficient);
  Polynomial coefficient(const Tree& left, const PlusMonomial& right) const;
  const std::map<Key, Polynomial>& terms() const& { return terms_; }
  std::map<Key, Polynomial> terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  TensorElement& operator+=(const TensorElement& other);
  TensorElement& operator-=(const TensorElement& other);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(const Polynomial& s, const TensorElement& x);
  /// Product in the tensor algebra: (a (x) p)(b (x) q) = ab (x) pq.
  friend TensorElement operator*(const TensorElement& x, const TensorElement& y);
  friend bool operator==(const TensorElement&, const TensorElement&) = default;

  /// "left|right" terms, e.g. "<1d1>|<one> + <X1>|<1d1d>".
  std::string to_string(const TreeNamer& namer = bracketed_name) const;

 private:
  std::map<Key, Polynomial> terms_;
};

/// Parses the text form of TensorElement::to_string.
TensorElement parse_tensor(std::string_view text, const TreeResolver& resolve);

}  // namespace kpzlab::treealg
