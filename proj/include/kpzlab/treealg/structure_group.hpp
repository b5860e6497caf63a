#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kpzlab/treealg/basis.hpp"
#include "kpzlab/treealg/coproduct.hpp"

namespace kpzlab::treealg {

/// Multiplicative functional on T_+, given by its values on the generators.
class Character {
 public:
  Character() = default;

  /// Values are the generator variables of the table (a, b, c, ...), each
  /// followed by the suffix ("a_f" for suffix "_f").
  static Character symbolic(const Basis& basis = Basis::standard(), const std::string& suffix = "");
  /// The counit: every generator sent to 0.
  static Character counit(const Basis& basis = Basis::standard());

  void set(const Tree& generator, Polynomial value) { values_[generator] = std::move(value); }
  const Polynomial& value(const Tree& generator) const;
  const std::map<Tree, Polynomial>& values() const& { return values_; }
  std::map<Tree, Polynomial> values() && { return std::move(values_); }
  /// f(1) = 1 and f(p q) = f(p) f(q).
  Polynomial evaluate(const PlusMonomial& m) const;

  Character substitute(const std::map<std::string, Polynomial>& values) const;
  friend bool operator==(const Character&, const Character&) = default;

 private:
  std::map<Tree, Polynomial> values_;
};

/// Gamma_f x = (I (x) f) Delta x.
TreeCombination gamma_f(const Character& f, const TreeCombination& x, const Basis& basis = Basis::standard(),
                        ProductRule rule = ProductRule::within_basis);

struct PropertyCheck {
  std::string name;
  bool passed = true;
  std::string witness;  // empty when passed
};

struct StructureGroupReport {
  std::vector<PropertyCheck> properties;
  bool all_passed() const;
};

/// Checks the four defining properties of the structure group on W.
StructureGroupReport check_structure_group(const Character& f, const Basis& basis = Basis::standard());

/// Thrown when Gamma_f Gamma_g is not of the form Gamma_h on W.
class CompositionError : public std::runtime_error {
 public:
  CompositionError(const std::string& what, Tree witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const Tree& witness() const { return witness_; }

 private:
  Tree witness_;
};

/// Finds h with Gamma_f o Gamma_g = Gamma_h on all of W, by matching coefficients.
Character compose_gamma(const Character& f, const Character& g, const Basis& basis = Basis::standard());

}  // namespace kpzlab::treealg
