// Text parsers for polynomials, trees, combinations and tensors.
#include <string>

#include "kpzlab/treealg/polynomial.hpp"
#include "kpzlab/treealg/tensor.hpp"
#include "kpzlab/treealg/tree.hpp"
#include "text_scanner.hpp"

namespace kpzlab::treealg {

namespace {

using detail::TextScanner;

// ---- polynomials ----

Polynomial parse_sum(TextScanner& in);

Polynomial parse_factor(TextScanner& in) {
  if (in.consume('(')) {
    Polynomial inner = parse_sum(in);
    in.expect(')');
    return inner;
  }
  Polynomial base;
  if (in.at_number()) {
    base = Polynomial(in.read_rational());
  } else if (in.at_identifier()) {
    base = Polynomial::variable(in.read_identifier());
  } else {
    in.fail("expected number, identifier or '('");
  }
  if (in.consume('^')) return pow(base, in.read_unsigned());
  return base;
}

bool at_factor(TextScanner& in) { return in.at_number() || in.at_identifier() || in.peek() == '('; }

Polynomial parse_product(TextScanner& in) {
  Polynomial p = parse_factor(in);
  for (;;) {
    if (in.consume('*') || at_factor(in)) {
      p *= parse_factor(in);
    } else {
      return p;
    }
  }
}

Polynomial parse_sum(TextScanner& in) {
  Polynomial total;
  bool first = true;
  for (;;) {
    int sign = 1;
    if (in.consume('-')) {
      sign = -1;
    } else if (!in.consume('+') && !first) {
      return total;
    }
    first = false;
    total += Polynomial(sign) * parse_product(in);
  }
}

// ---- trees ----

Tree parse_tree_product(TextScanner& in);

Tree parse_integral(TextScanner& in, bool prime) {
  Tree child = parse_tree_product(in);
  in.expect(')');
  auto t = prime ? Tree::integrate_prime(child) : Tree::integrate(child);
  if (!t) in.fail("integration of a polynomial vanishes");
  return *t;
}

Tree parse_tree_factor(TextScanner& in) {
  Tree t;
  if (in.consume("I'(")) {
    t = parse_integral(in, true);
  } else if (in.consume("I(")) {
    t = parse_integral(in, false);
  } else if (in.consume('(')) {
    t = parse_tree_product(in);
    in.expect(')');
  } else if (in.consume("Xi")) {
    t = Tree::xi();
  } else if (in.consume("X^(")) {
    const unsigned l0 = in.read_unsigned();
    in.expect(',');
    const unsigned l1 = in.read_unsigned();
    in.expect(')');
    t = Tree::monomial(l0, l1);
  } else if (in.consume("X1")) {
    t = Tree::monomial(0, 1);
  } else if (in.consume("X0")) {
    t = Tree::monomial(1, 0);
  } else if (!in.consume('1')) {
    in.fail("expected a tree");
  }
  if (in.consume('^')) {
    const unsigned n = in.read_unsigned();
    Tree p;
    for (unsigned i = 0; i < n; ++i) p = p * t;
    return p;
  }
  return t;
}

Tree parse_tree_product(TextScanner& in) {
  Tree t = parse_tree_factor(in);
  while (in.consume('*')) t = t * parse_tree_factor(in);
  return t;
}

// ---- combinations ----

bool at_tree_reference(TextScanner& in) { return in.peek() == '<' || in.peek() == '['; }

Tree parse_tree_reference(TextScanner& in, const TreeResolver& resolve) {
  if (in.consume('<')) return resolve(in.read_until('>'));
  in.expect('[');
  return parse_tree(in.read_until(']'));
}

// Coefficient (possibly empty, meaning 1) followed by a tree reference.
Polynomial parse_coefficient(TextScanner& in) {
  Polynomial c(1);
  while (!at_tree_reference(in)) {
    c *= parse_factor(in);
    in.consume('*');
  }
  return c;
}

template <typename Term>
void parse_signed_terms(TextScanner& in, Term&& term) {
  bool first = true;
  if (in.consume('0')) {
    in.expect_end();
    return;
  }
  while (!in.at_end()) {
    int sign = 1;
    if (in.consume('-')) {
      sign = -1;
    } else if (!in.consume('+') && !first) {
      in.fail("expected '+' or '-'");
    }
    first = false;
    term(Polynomial(sign) * parse_coefficient(in));
  }
}

}  // namespace

Polynomial parse_polynomial(std::string_view text) {
  TextScanner in(text);
  Polynomial p = parse_sum(in);
  in.expect_end();
  return p;
}

Tree parse_tree(std::string_view text) {
  TextScanner in(text);
  Tree t = parse_tree_product(in);
  in.expect_end();
  return t;
}

TreeCombination parse_combination(std::string_view text, const TreeResolver& resolve) {
  TextScanner in(text);
  TreeCombination out;
  parse_signed_terms(in, [&](const Polynomial& c) { out.add(parse_tree_reference(in, resolve), c); });
  return out;
}

TensorElement parse_tensor(std::string_view text, const TreeResolver& resolve) {
  TextScanner in(text);
  TensorElement out;
  parse_signed_terms(in, [&](const Polynomial& c) {
    const Tree left = parse_tree_reference(in, resolve);
    in.expect('|');
    std::vector<Tree> right{parse_tree_reference(in, resolve)};
    while (in.consume('.')) right.push_back(parse_tree_reference(in, resolve));
    out.add(left, PlusMonomial(std::move(right)), c);
  });
  return out;
}

}  // namespace kpzlab::treealg
