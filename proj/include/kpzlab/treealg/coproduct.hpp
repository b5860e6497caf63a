#pragma once

#include "kpzlab/treealg/basis.hpp"
#include "kpzlab/treealg/tensor.hpp"

namespace kpzlab::treealg {

/// How the product rule Delta(t1 t2) = (Delta t1)(Delta t2) is applied.
enum class ProductRule {
  /// Multiplicative only over factors that lie in W; elements of W without
  /// such a factorisation are primitive (t (x) 1). Reproduces the golden table.
  within_basis,
  /// Multiplicative over all factors, with the integration terms of every
  /// factor generated from degrees. Kept for comparison.
  unrestricted,
};

/// Delta : T -> T (x) T_+. Throws std::domain_error outside the recursion's domain.
TensorElement coproduct(const Tree& t, const Basis& basis = Basis::standard(),
                        ProductRule rule = ProductRule::within_basis);
TensorElement coproduct(const TreeCombination& x, const Basis& basis = Basis::standard(),
                        ProductRule rule = ProductRule::within_basis);

/// (I (x) eps) applied to a tensor, eps the counit of T_+.
TreeCombination apply_counit(const TensorElement& x);

}  // namespace kpzlab::treealg
