#include "kpzlab/treealg/coproduct.hpp"

#include <algorithm>
#include <stdexcept>

namespace kpzlab::treealg {

namespace {

Rational binomial(unsigned n, unsigned k) {
  Rational r(1);
  for (unsigned i = 1; i <= k; ++i) r = r * Rational(n - k + i) / Rational(i);
  return r;
}

TensorElement monomial_coproduct(const Tree& t) {
  if (t.time_power() != 0) {
    throw std::domain_error("coproduct of time monomials is not part of the structure: " + t.to_string());
  }
  TensorElement out;
  const unsigned k = t.space_power();
  for (unsigned j = 0; j <= k; ++j) {
    std::vector<Tree> right(k - j, Tree::monomial(0, 1));
    out.add(Tree::monomial(0, j), PlusMonomial(std::move(right)), Polynomial(binomial(k, j)));
  }
  return out;
}

// (J (x) I) with J = I or I' applied on the left.
TensorElement map_left(const TensorElement& x, bool prime) {
  TensorElement out;
  for (const auto& [k, c] : x.terms()) {
    auto t = prime ? Tree::integrate_prime(k.first) : Tree::integrate(k.first);
    if (t) out.add(*t, k.second, c);
  }
  return out;
}

// (d (x) I) on the left factor.
TensorElement derive_left(const TensorElement& x) {
  TensorElement out;
  for (const auto& [k, c] : x.terms()) {
    const TreeCombination d = derivative(k.first);
    for (const auto& [t, dc] : d.terms()) out.add(t, k.second, c * dc);
  }
  return out;
}

class Coproduct {
 public:
  Coproduct(const Basis& basis, ProductRule rule) : basis_(basis), rule_(rule) {}

  TensorElement operator()(const Tree& t) const {
    if (t.is_unit()) {
      TensorElement out;
      out.add(t, PlusMonomial(), Polynomial(1));
      return out;
    }
    const auto factors = t.factors();
    if (factors.size() > 1) return product(t, factors);
    if (t.is_polynomial()) return monomial_coproduct(t);
    if (t == Tree::xi()) {
      TensorElement out;
      out.add(t, PlusMonomial(), Polynomial(1));
      return out;
    }
    if (auto c = t.integral_child()) return integral(*c);
    if (auto c = t.prime_integral_child()) return derive_left(integral(*c));
    throw std::logic_error("unclassified atom " + t.to_string());
  }

 private:
  TensorElement product(const Tree& t, const std::vector<Tree>& factors) const {
    if (rule_ == ProductRule::within_basis) {
      const bool factorises = std::all_of(factors.begin(), factors.end(), [&](const Tree& f) {
        return f.is_polynomial() || basis_.in_w(f);
      });
      if (!factorises) {
        if (!basis_.in_w(t)) {
          throw std::domain_error("coproduct undefined on " + t.to_string() +
                                  ": a factor lies outside W and the product is not in W");
        }
        TensorElement out;
        out.add(t, PlusMonomial(), Polynomial(1));
        return out;
      }
    }
    TensorElement out;
    out.add(Tree::unit(), PlusMonomial(), Polynomial(1));
    for (const auto& f : factors) out = out * (*this)(f);
    return out;
  }

  TensorElement integral(const Tree& c) const {
    const Tree it = *Tree::integrate(c);
    TensorElement out = map_left((*this)(c), false);
    if (rule_ == ProductRule::within_basis) {
      out.add(Tree::unit(), PlusMonomial(it), Polynomial(1));
      const auto& ext = basis_.extended_integrands();
      if (std::find(ext.begin(), ext.end(), c) != ext.end()) {
        add_first_order(out, c);
      }
      return out;
    }
    if (it.degree() > ExactDegree(0)) out.add(Tree::unit(), PlusMonomial(it), Polynomial(1));
    if (it.degree() > ExactDegree(1)) add_first_order(out, c);
    if (it.degree() > ExactDegree(2)) {
      throw std::domain_error("coproduct of " + it.to_string() + " would need second derivatives of I");
    }
    return out;
  }

  // 1 (x) X1 I'(c) + X1 (x) I'(c)
  static void add_first_order(TensorElement& out, const Tree& c) {
    const Tree ip = *Tree::integrate_prime(c);
    const Tree x1 = Tree::monomial(0, 1);
    out.add(Tree::unit(), PlusMonomial(std::vector<Tree>{ip, x1}), Polynomial(1));
    out.add(x1, PlusMonomial(ip), Polynomial(1));
  }

  const Basis& basis_;
  ProductRule rule_;
};

}  // namespace

TensorElement coproduct(const Tree& t, const Basis& basis, ProductRule rule) {
  return Coproduct(basis, rule)(t);
}

TensorElement coproduct(const TreeCombination& x, const Basis& basis, ProductRule rule) {
  TensorElement out;
  for (const auto& [t, c] : x.terms()) out += c * coproduct(t, basis, rule);
  return out;
}

TreeCombination apply_counit(const TensorElement& x) {
  TreeCombination out;
  for (const auto& [k, c] : x.terms()) {
    if (k.second.is_unit()) out.add(k.first, c);
  }
  return out;
}

}  // namespace kpzlab::treealg
