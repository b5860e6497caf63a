#pragma once

#include <stdexcept>
#include <vector>

#include "kpzlab/treealg/basis.hpp"
#include "kpzlab/treealg/renormalization.hpp"

namespace kpzlab::treealg {

/// Expansion of the remainder W in the table's basis. Coefficient variables:
/// w0 (constant part), wt (X1 part), a10 (a1 at the origin).
TreeCombination picard_w(const Basis& basis = Basis::standard());
/// dW, obtained by applying the abstract derivative to picard_w.
TreeCombination picard_dw(const Basis& basis = Basis::standard());

/// Q_{<=0}((dW)^2 + 2 (dW) Psi + Psi^2).
TreeCombination q_leq0_nonlinearity(const Basis& basis = Basis::standard());

/// The counterterms c1 dw + c2 dpsi + c3 of the renormalised equation.
struct RenormConstants {
  Polynomial c1, c2, c3;
};

class ShapeMismatch : public std::runtime_error {
 public:
  ShapeMismatch(const std::string& what, TreeCombination residual)
      : std::runtime_error(what), residual_(std::move(residual)) {}
  const TreeCombination& residual() const { return residual_; }

 private:
  TreeCombination residual_;
};

/// Compares M_g Q_{<=0}(N(dW)) with Q_{<=0}(N(M_g dW)) and reads off the
/// counterterms. Throws ShapeMismatch with the unexplained residual.
RenormConstants renorm_constants(const RenormParams& params, const Basis& basis = Basis::standard(),
                                 RenormalizationOrder order = RenormalizationOrder::linear);

struct SectorExponents {
  int index = 0;
  ExactDegree gamma, eta, sigma, mu, alpha;
};

/// Exponents of the six right-hand side sectors, from the solution exponents
/// and the lowest degrees of the sectors.
std::vector<SectorExponents> sector_exponents(const Basis& basis = Basis::standard());

}  // namespace kpzlab::treealg
