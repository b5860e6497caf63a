#pragma once

#include <map>
#include <string>

#include "kpzlab/treealg/basis.hpp"

namespace kpzlab::treealg {

/// Values of the renormalisation constants, keyed by parameter name (C0..C3).
struct RenormParams {
  std::map<std::string, Polynomial> values;

  /// Each parameter of the table's contraction rules as an indeterminate.
  static RenormParams symbolic(const Basis& basis = Basis::standard());
  static RenormParams constant(const std::map<std::string, Rational>& values);
  const Polynomial& at(const std::string& name) const;
};

enum class RenormalizationOrder {
  /// M_g = 1 - sum C_i L_i; reproduces the tabulated action.
  linear,
  /// M_g = exp(-sum C_i L_i) as a terminating series.
  exponential,
};

/// Sum over all ways of contracting `pattern` to 1 inside `t`, each
/// contraction counted once (embeddings divided by the pattern's automorphisms).
TreeCombination contract(const Tree& pattern, const Tree& t);
TreeCombination contract(const Tree& pattern, const TreeCombination& x);

/// Number of automorphisms of a tree.
unsigned automorphism_count(const Tree& t);

TreeCombination renormalize(const RenormParams& params, const TreeCombination& x,
                            const Basis& basis = Basis::standard(),
                            RenormalizationOrder order = RenormalizationOrder::linear);

}  // namespace kpzlab::treealg
