#include "kpzlab/treealg/kpz_equation.hpp"

namespace kpzlab::treealg {

namespace {

TreeCombination nonlinearity(const TreeCombination& dw, const Tree& psi) {
  const TreeCombination p(psi);
  return dw * dw + Polynomial(2) * (dw * p) + p * p;
}

const ExactDegree kZero{};

}  // namespace

TreeCombination picard_w(const Basis& basis) { return basis.picard_w(); }

TreeCombination picard_dw(const Basis& basis) { return derivative(basis.picard_w()); }

TreeCombination q_leq0_nonlinearity(const Basis& basis) {
  return truncate_at_most(nonlinearity(picard_dw(basis), basis.psi()), kZero);
}

RenormConstants renorm_constants(const RenormParams& params, const Basis& basis, RenormalizationOrder order) {
  const TreeCombination dw = picard_dw(basis);
  const TreeCombination mdw = renormalize(params, dw, basis, order);
  const TreeCombination q = q_leq0_nonlinearity(basis);
  const TreeCombination lhs = renormalize(params, q, basis, order);
  const TreeCombination rhs = truncate_at_most(nonlinearity(mdw, basis.psi()), kZero);
  // lhs - rhs = -c1 Q(M dW) - c2 Psi - c3 1
  const TreeCombination r = lhs - rhs;
  const TreeCombination qmdw = truncate_at_most(mdw, kZero);

  // c1 from a non-unit, non-Psi tree of Q(M dW) with rational coefficient.
  std::optional<Polynomial> c1;
  for (const auto& [t, c] : qmdw.terms()) {
    if (t.is_unit() || t == basis.psi()) continue;
    if (auto q = c.as_rational(); q && *q != 0) {
      c1 = Polynomial(Rational(-1) / *q) * r.coefficient(t);
      break;
    }
  }
  if (!c1) throw ShapeMismatch("Q(M dW) has no tree that determines c1", r);

  RenormConstants out;
  out.c1 = *c1;
  const TreeCombination after_c1 = r + out.c1 * qmdw;
  out.c2 = -after_c1.coefficient(basis.psi());
  out.c3 = -after_c1.coefficient(Tree::unit());
  const TreeCombination residual = after_c1 + out.c2 * TreeCombination(basis.psi()) + out.c3 * TreeCombination(Tree::unit());
  if (!residual.is_zero()) {
    throw ShapeMismatch("renormalised nonlinearity is not of counterterm form: " + residual.to_string(basis.namer()),
                        residual);
  }
  return out;
}

std::vector<SectorExponents> sector_exponents(const Basis& basis) {
  const auto& base = basis.sector_base();
  const ExactDegree kappa = ExactDegree::kappa();
  const ExactDegree eta = base[1];
  const ExactDegree sigma = base[2];
  // dW is in the space with exponents (eta - 1, sigma - 1, kappa - 1).
  const ExactDegree eta_d = eta - ExactDegree(1);
  const ExactDegree sigma_d = sigma - ExactDegree(1);
  const ExactDegree mu_d = kappa - ExactDegree(1);

  // Lowest degrees: dV starts at deg I'(Psi^2), Psi at deg Psi, Psi^2 at deg Psi^2.
  const Tree& psi = basis.psi();
  const ExactDegree a3 = Tree::integrate_prime(psi * psi)->degree();
  const ExactDegree a4 = psi.degree();
  const ExactDegree a2 = (psi * psi).degree();

  std::vector<SectorExponents> rows;
  rows.push_back({0, kappa, Rational(2) * eta_d, Rational(2) * sigma_d, Rational(2) * mu_d, Rational(2) * a3});
  rows.push_back({1, kappa, eta_d + a4, sigma_d + a4, mu_d + a4, a3 + a4});
  rows.push_back({2, kappa, a2, a2, a2, a2});
  rows.push_back({3, kappa, eta_d, sigma_d, mu_d, a3});
  rows.push_back({4, kappa, a4, a4, a4, a4});
  rows.push_back({5, kappa, kZero, kZero, kZero, kZero});
  return rows;
}

}  // namespace kpzlab::treealg
