#include "kpzlab/treealg/structure_group.hpp"

#include <algorithm>
#include <stdexcept>

namespace kpzlab::treealg {

Character Character::symbolic(const Basis& basis, const std::string& suffix) {
  Character f;
  for (const auto& [g, var] : basis.generators()) f.set(g, Polynomial::variable(var + suffix));
  return f;
}

Character Character::counit(const Basis& basis) {
  Character f;
  for (const auto& [g, var] : basis.generators()) f.set(g, Polynomial());
  return f;
}

const Polynomial& Character::value(const Tree& generator) const {
  auto it = values_.find(generator);
  if (it == values_.end()) throw std::out_of_range("character has no value on " + generator.to_string());
  return it->second;
}

Polynomial Character::evaluate(const PlusMonomial& m) const {
  Polynomial out(1);
  for (const auto& g : m.factors()) out *= value(g);
  return out;
}

Character Character::substitute(const std::map<std::string, Polynomial>& values) const {
  Character out;
  for (const auto& [g, v] : values_) out.set(g, v.substitute(values));
  return out;
}

TreeCombination gamma_f(const Character& f, const TreeCombination& x, const Basis& basis, ProductRule rule) {
  TreeCombination out;
  const TensorElement delta = coproduct(x, basis, rule);
  for (const auto& [k, c] : delta.terms()) out.add(k.first, c * f.evaluate(k.second));
  return out;
}

bool StructureGroupReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed; });
}

namespace {

void fail(PropertyCheck& p, const std::string& witness) {
  if (!p.passed) return;  // keep the first witness
  p.passed = false;
  p.witness = witness;
}

}  // namespace

StructureGroupReport check_structure_group(const Character& f, const Basis& basis) {
  const auto name = basis.namer();
  const auto w = basis.w_entries();
  auto gamma = [&](const Tree& t) { return gamma_f(f, TreeCombination(t), basis); };

  PropertyCheck fixed{"fixes Xi and 1, shifts X1", true, ""};
  if (gamma(Tree::xi()) != TreeCombination(Tree::xi())) fail(fixed, "Gamma Xi != Xi");
  if (gamma(Tree::unit()) != TreeCombination(Tree::unit())) fail(fixed, "Gamma 1 != 1");
  {
    const Tree x1 = Tree::monomial(0, 1);
    const TreeCombination shift = gamma(x1) - TreeCombination(x1);
    for (const auto& [t, c] : shift.terms()) {
      if (!t.is_unit()) fail(fixed, "Gamma X1 - X1 contains " + name(t));
    }
  }

  PropertyCheck triangular{"triangular", true, ""};
  for (const auto& e : w) {
    const TreeCombination diff = gamma(e.tree) - TreeCombination(e.tree);
    for (const auto& [t, c] : diff.terms()) {
      bool below = false;
      try {
        below = t.degree() < e.tree.degree();
      } catch (const std::domain_error&) {
        below = false;
      }
      if (!below) fail(triangular, "Gamma " + name(e.tree) + " has " + name(t) + " of degree " + t.degree().to_string());
    }
  }

  PropertyCheck multiplicative{"multiplicative inside W", true, ""};
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i; j < w.size(); ++j) {
      const Tree& a = w[i].tree;
      const Tree& b = w[j].tree;
      if (a.is_unit() || b.is_unit() || !basis.in_w(a * b)) continue;
      if (gamma(a * b) != gamma(a) * gamma(b)) {
        fail(multiplicative, "Gamma(" + name(a) + " " + name(b) + ") != Gamma " + name(a) + " Gamma " + name(b));
      }
    }
  }

  PropertyCheck integration{"commutes with I and I' up to polynomials", true, ""};
  for (const auto& e : w) {
    for (bool prime : {false, true}) {
      const auto it = prime ? Tree::integrate_prime(e.tree) : Tree::integrate(e.tree);
      if (!it || !basis.in_w(*it)) continue;
      const TreeCombination g = gamma(e.tree);
      const TreeCombination diff = gamma(*it) - (prime ? integrate_prime(g) : integrate(g));
      for (const auto& [t, c] : diff.terms()) {
        if (!t.is_polynomial()) {
          fail(integration, std::string(prime ? "I'" : "I") + " on " + name(e.tree) + " leaves " + name(t));
        }
      }
    }
  }

  return {{fixed, triangular, multiplicative, integration}};
}

Character compose_gamma(const Character& f, const Character& g, const Basis& basis) {
  const auto w = basis.w_entries();
  const auto name = basis.namer();

  std::vector<TensorElement> deltas;
  std::vector<TreeCombination> targets;
  for (const auto& e : w) {
    deltas.push_back(coproduct(e.tree, basis));
    targets.push_back(gamma_f(f, gamma_f(g, TreeCombination(e.tree), basis), basis));
  }

  Character h;
  std::vector<Tree> unsolved;
  for (const auto& [gen, var] : basis.generators()) unsolved.push_back(gen);
  auto solved = [&](const Tree& t) { return h.values().count(t) > 0; };

  // The coefficient of `left` in Gamma_h(tau) is sum_c c * h(right). Pick an
  // equation in which the generator occurs alone and everything else is known.
  while (!unsolved.empty()) {
    bool progress = false;
    for (auto it = unsolved.begin(); it != unsolved.end();) {
      const Tree gen = *it;
      const PlusMonomial target_right(gen);
      std::optional<Polynomial> value;
      for (std::size_t i = 0; i < w.size() && !value; ++i) {
        for (const auto& [key, coef] : deltas[i].terms()) {
          if (key.second != target_right) continue;
          const auto pivot = coef.as_rational();
          if (!pivot || *pivot == 0) continue;
          Polynomial rest;
          bool known = true;
          for (const auto& [k2, c2] : deltas[i].terms()) {
            if (k2.first != key.first || k2.second == target_right) continue;
            if (!std::all_of(k2.second.factors().begin(), k2.second.factors().end(), solved)) {
              known = false;
              break;
            }
            rest += c2 * h.evaluate(k2.second);
          }
          if (!known) continue;
          value = Polynomial(Rational(1) / *pivot) * (targets[i].coefficient(key.first) - rest);
          break;
        }
      }
      if (value) {
        h.set(gen, *value);
        it = unsolved.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
    if (!progress) throw CompositionError("no coefficient equation determines " + name(unsolved.front()), unsolved.front());
  }

  for (std::size_t i = 0; i < w.size(); ++i) {
    if (gamma_f(h, TreeCombination(w[i].tree), basis) != targets[i]) {
      throw CompositionError("Gamma_f Gamma_g is not a Gamma_h on " + name(w[i].tree), w[i].tree);
    }
  }
  return h;
}

}  // namespace kpzlab::treealg
