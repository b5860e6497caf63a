#include "kpzlab/treealg/renormalization.hpp"

#include <stdexcept>

namespace kpzlab::treealg {

RenormParams RenormParams::symbolic(const Basis& basis) {
  RenormParams p;
  for (const auto& rule : basis.contractions()) p.values[rule.parameter] = Polynomial::variable(rule.parameter);
  return p;
}

RenormParams RenormParams::constant(const std::map<std::string, Rational>& values) {
  RenormParams p;
  for (const auto& [k, v] : values) p.values[k] = Polynomial(v);
  return p;
}

const Polynomial& RenormParams::at(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) throw std::out_of_range("missing renormalisation constant " + name);
  return it->second;
}

namespace {

// What is left of a node after a pattern node has been matched into it and
// recursively into its children. Everything left over is reattached to the
// contracted node.
struct Leftover {
  unsigned l0 = 0, l1 = 0, noises = 0;
  std::vector<Tree> integ, prime;

  Leftover& operator+=(const Leftover& o) {
    l0 += o.l0;
    l1 += o.l1;
    noises += o.noises;
    integ.insert(integ.end(), o.integ.begin(), o.integ.end());
    prime.insert(prime.end(), o.prime.begin(), o.prime.end());
    return *this;
  }
  // Canonical key.
  Tree as_tree() const { return Tree::node(l0, l1, noises, integ, prime); }
};

using Matches = std::map<Tree, Rational>;  // leftover (as node) -> number of embeddings

Rational falling_factorial(unsigned m, unsigned k) {
  Rational r(1);
  for (unsigned i = 0; i < k; ++i) r *= Rational(m - i);
  return r;
}

Matches match_node(const Tree& p, const Tree& n);

// Injective maps of the pattern's children into the node's children, each
// matched recursively. Accumulates leftovers and counts into `out`.
void match_children(const std::vector<Tree>& pc, const std::vector<Tree>& nc, bool prime_edges,
                    std::size_t i, std::vector<bool>& used, const Leftover& acc, const Rational& count,
                    std::vector<std::pair<Leftover, Rational>>& out) {
  if (i == pc.size()) {
    Leftover l = acc;
    for (std::size_t j = 0; j < nc.size(); ++j) {
      if (!used[j]) (prime_edges ? l.prime : l.integ).push_back(nc[j]);
    }
    out.emplace_back(std::move(l), count);
    return;
  }
  for (std::size_t j = 0; j < nc.size(); ++j) {
    if (used[j]) continue;
    const Matches sub = match_node(pc[i], nc[j]);
    if (sub.empty()) continue;
    used[j] = true;
    for (const auto& [lt, c] : sub) {
      Leftover next = acc;
      next += Leftover{lt.time_power(), lt.space_power(), lt.noise_count(), lt.integrals(), lt.prime_integrals()};
      match_children(pc, nc, prime_edges, i + 1, used, next, count * c, out);
    }
    used[j] = false;
  }
}

Matches match_node(const Tree& p, const Tree& n) {
  Matches result;
  if (p.noise_count() > n.noise_count() || p.time_power() > n.time_power() ||
      p.space_power() > n.space_power() || p.integrals().size() > n.integrals().size() ||
      p.prime_integrals().size() > n.prime_integrals().size()) {
    return result;
  }
  Leftover base;
  base.l0 = n.time_power() - p.time_power();
  base.l1 = n.space_power() - p.space_power();
  base.noises = n.noise_count() - p.noise_count();
  const Rational noise_ways = falling_factorial(n.noise_count(), p.noise_count());

  std::vector<std::pair<Leftover, Rational>> integ_matches;
  std::vector<bool> used_i(n.integrals().size(), false);
  match_children(p.integrals(), n.integrals(), false, 0, used_i, Leftover{}, Rational(1), integ_matches);
  std::vector<std::pair<Leftover, Rational>> prime_matches;
  std::vector<bool> used_p(n.prime_integrals().size(), false);
  match_children(p.prime_integrals(), n.prime_integrals(), true, 0, used_p, Leftover{}, Rational(1),
                 prime_matches);
  for (const auto& [li, ci] : integ_matches) {
    for (const auto& [lp, cp] : prime_matches) {
      Leftover l = base;
      l += li;
      l += lp;
      result[l.as_tree()] += noise_ways * ci * cp;
    }
  }
  return result;
}

// All contractions of p inside t, counted by embeddings.
Matches contract_embeddings(const Tree& p, const Tree& t) {
  Matches out = match_node(p, t);
  const auto& integ = t.integrals();
  const auto& prime = t.prime_integrals();
  for (bool is_prime : {false, true}) {
    const auto& children = is_prime ? prime : integ;
    for (std::size_t i = 0; i < children.size(); ++i) {
      for (const auto& [child, c] : contract_embeddings(p, children[i])) {
        if (child.is_polynomial()) continue;  // I(X^k) = I'(X^k) = 0
        std::vector<Tree> ni = integ;
        std::vector<Tree> np = prime;
        (is_prime ? np : ni)[i] = child;
        out[Tree::node(t.time_power(), t.space_power(), t.noise_count(), ni, np)] += c;
      }
    }
  }
  return out;
}

}  // namespace

unsigned automorphism_count(const Tree& t) {
  const Matches m = match_node(t, t);
  auto it = m.find(Tree::unit());
  return it == m.end() ? 0U : static_cast<unsigned>(numerator(it->second));
}

TreeCombination contract(const Tree& pattern, const Tree& t) {
  const Rational aut(automorphism_count(pattern));
  TreeCombination out;
  for (const auto& [tree, count] : contract_embeddings(pattern, t)) out.add(tree, Polynomial(count / aut));
  return out;
}

TreeCombination contract(const Tree& pattern, const TreeCombination& x) {
  TreeCombination out;
  for (const auto& [t, c] : x.terms()) out += c * contract(pattern, t);
  return out;
}

TreeCombination renormalize(const RenormParams& params, const TreeCombination& x, const Basis& basis,
                            RenormalizationOrder order) {
  auto generator = [&](const TreeCombination& y) {
    TreeCombination out;
    for (const auto& rule : basis.contractions()) out += params.at(rule.parameter) * contract(rule.pattern, y);
    return out;
  };
  if (order == RenormalizationOrder::linear) return x - generator(x);

  // exp(-L) x = sum_n (-L)^n x / n!; L strictly lowers the number of noises.
  TreeCombination out = x;
  TreeCombination term = x;
  for (int n = 1; !term.is_zero(); ++n) {
    term = Polynomial(Rational(-1, n)) * generator(term);
    out += term;
  }
  return out;
}

}  // namespace kpzlab::treealg
