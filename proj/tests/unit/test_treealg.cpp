#include <doctest.h>

#include <algorithm>
#include <string>

#include "kpzlab/treealg/basis.hpp"
#include "kpzlab/treealg/coproduct.hpp"
#include "kpzlab/treealg/kpz_equation.hpp"
#include "kpzlab/treealg/renormalization.hpp"
#include "kpzlab/treealg/structure_group.hpp"
#include "kpzlab/treealg/verification.hpp"

using namespace kpzlab::treealg;

namespace {

const Basis& B() { return Basis::standard(); }
const Tree& T(const char* name) { return B().tree(name); }
TreeCombination C(const char* text) { return parse_combination(text, B().resolver()); }
TensorElement D(const char* text) { return parse_tensor(text, B().resolver()); }
Polynomial P(const char* text) { return parse_polynomial(text); }

}  // namespace

TEST_SUITE("exact") {
  TEST_CASE("degree text round trip") {
    for (const char* s : {"-3/2 - k", "0", "1", "-4k", "1/2 + 2k", "k", "-1 - 2k"}) {
      CHECK(parse_degree(s).to_string() == s);
    }
    CHECK(parse_degree("2k-2") == ExactDegree(-2, 2));
    CHECK_THROWS_AS(parse_degree("1/2 x"), std::invalid_argument);
  }

  TEST_CASE("ordering is kappa independent on W") {
    const auto w = basis_w();
    for (const auto& [n1, d1] : w) {
      for (const auto& [n2, d2] : w) {
        const bool lt = d1 < d2;
        CHECK((d1.at(Rational(1, 100)) < d2.at(Rational(1, 100))) == lt);
        CHECK((d1.at(Rational(9, 100)) < d2.at(Rational(9, 100))) == lt);
      }
    }
  }

  TEST_CASE("ambiguous comparisons are refused") {
    CHECK_THROWS_AS((void)(ExactDegree(Rational(1, 20), -1) < ExactDegree(0)), std::domain_error);
    CHECK(ExactDegree(0, -1) < ExactDegree(0));
  }
}

TEST_SUITE("polynomial") {
  TEST_CASE("arithmetic and printing") {
    const Polynomial p = P("(h + a*w)");
    CHECK(p.to_string() == "a*w + h");
    CHECK(P("1/4 C2 + 1/2 C3 + 2 a10 C0 + C1") == P("C1 + 2*C0*a10 + 1/2*C3 + 1/4*C2"));
    CHECK((P("a + b") * P("a - b")) == P("a^2 - b^2"));
    CHECK((P("a") - P("a")).is_zero());
    CHECK(P("3/6").as_rational() == Rational(1, 2));
    CHECK(!P("a").as_rational());
  }

  TEST_CASE("substitution") {
    CHECK(P("a*b + c").substitute({{"a", P("2")}, {"c", P("b")}}) == P("3 b"));
  }
}

TEST_SUITE("trees") {
  TEST_CASE("degrees") {
    CHECK(Tree::xi().degree() == ExactDegree(Rational(-3, 2), -1));
    CHECK(T("2d").degree() == ExactDegree(-1, -2));
    CHECK(Tree::unit().degree() == ExactDegree(0));
    CHECK(parse_tree("X^(1,2)").degree() == ExactDegree(4));
  }

  TEST_CASE("basis lookups") {
    const auto w = basis_w();
    CHECK(w.size() == 14);
    CHECK(T("1d1").degree() == parse_degree("3/2 - k"));
    CHECK(T("tree2").degree() == parse_degree("-4k"));
    for (const auto& e : B().entries()) {
      CHECK(e.tree.degree() == e.tabulated_degree);
      CHECK(parse_tree(e.tree.to_string()) == e.tree);
    }
  }

  TEST_CASE("products") {
    CHECK(T("1d") * T("1d") == T("2d"));
    for (const auto& e : B().w_entries()) CHECK(Tree::unit() * e.tree == e.tree);
    CHECK(Tree::monomial(0, 1) * Tree::monomial(0, 1) == Tree::monomial(0, 2));
    CHECK(Tree::monomial(0, 2).to_string() == "X^(0,2)");
    CHECK(T("2d2d") * T("1d") == T("1d") * T("2d2d"));
    const TreeCombination x = C("<1d> + 2 <one>");
    CHECK(x * x == C("<2d> + 4 <1d> + 4 <one>"));
  }

  TEST_CASE("degree is additive on W") {
    for (const auto& a : B().w_entries()) {
      for (const auto& b : B().w_entries()) CHECK((a.tree * b.tree).degree() == a.tree.degree() + b.tree.degree());
    }
  }

  TEST_CASE("integration of monomials vanishes") {
    CHECK(!Tree::integrate(Tree::monomial(0, 1)));
    CHECK(!Tree::integrate_prime(Tree::unit()));
    CHECK(integrate(C("<one> + <X1> + <2d>")) == C("<2d1>"));
    CHECK_THROWS_AS(parse_tree("I(X1)"), std::invalid_argument);
  }

  TEST_CASE("abstract derivative") {
    CHECK(derivative(Tree::unit()).is_zero());
    CHECK(derivative(Tree::monomial(1, 3)) == TreeCombination(Polynomial(3), Tree::monomial(1, 2)));
    CHECK(derivative(T("2d2d1")) == TreeCombination(T("2d2d1d")));
    CHECK_THROWS_AS(derivative(T("2d")), std::domain_error);
  }

  TEST_CASE("combination text") {
    const auto x = C("<tree1> - 2 C0 <1d2d> - C0 <2d1d> - C3 <one>");
    CHECK(x.size() == 4);
    CHECK(x.coefficient(T("1d2d")) == P("-2 C0"));
    CHECK(parse_combination(x.to_string(B().namer()), B().resolver()) == x);
    CHECK(parse_combination(x.to_string(), B().resolver()) == x);
    CHECK_THROWS_AS(C("<nope>"), std::out_of_range);
  }
}

TEST_SUITE("coproduct") {
  TEST_CASE("tabulated examples") {
    CHECK(coproduct(Tree::xi()) == D("<Xi>|<one>"));
    CHECK(coproduct(T("1d1")) == D("<1d1>|<one> + <one>|<1d1> + <one>|<1d1d>.<X1> + <X1>|<1d1d>"));
    CHECK(coproduct(Tree::unit()) == D("<one>|<one>"));
  }

  TEST_CASE("monomials expand binomially") {
    CHECK(coproduct(Tree::monomial(0, 2)) == D("[X^(0,2)]|<one> + 2 <X1>|<X1> + <one>|<X1>.<X1>"));
    CHECK_THROWS_AS(coproduct(Tree::monomial(1, 0)), std::domain_error);
  }

  TEST_CASE("counit") {
    for (const auto& e : B().w_entries()) CHECK(apply_counit(coproduct(e.tree)) == TreeCombination(e.tree));
  }

  TEST_CASE("extended integration rule is the positive degree rule") {
    // The X1 terms appear exactly when deg I'(c) > 0.
    for (const auto& e : B().w_entries()) {
      auto c = e.tree.integral_child();
      if (!c) continue;
      const auto& ext = B().extended_integrands();
      const bool listed = std::find(ext.begin(), ext.end(), *c) != ext.end();
      CHECK(listed == (Tree::integrate_prime(*c)->degree() > ExactDegree(0)));
      bool has_x1 = false;
      for (const auto& [k, coef] : coproduct(e.tree).terms()) has_x1 = has_x1 || k.first == Tree::monomial(0, 1);
      CHECK(has_x1 == listed);
    }
  }

  TEST_CASE("outside the domain") {
    CHECK_THROWS_AS(coproduct(T("1d1d") * T("1d1d")), std::domain_error);
  }

  TEST_CASE("unrestricted rule differs on two rows") {
    int differing = 0;
    for (const auto& e : B().w_entries()) {
      if (coproduct(e.tree) != coproduct(e.tree, B(), ProductRule::unrestricted)) ++differing;
    }
    CHECK(differing == 2);
    CHECK(coproduct(T("1d2d"), B(), ProductRule::unrestricted) == D("<1d2d>|<one> + <1d>|<1d1d>"));
  }
}

TEST_SUITE("structure group") {
  const Character f = Character::symbolic();

  TEST_CASE("tabulated examples") {
    CHECK(gamma_f(f, Tree::monomial(0, 1)) == C("<X1> + a <one>"));
    CHECK(gamma_f(f, T("2d2d1")) == C("<2d2d1> + (h + a*w) <one> + w <X1>"));
    CHECK(gamma_f(f, Tree::xi()) == C("<Xi>"));
  }

  TEST_CASE("counit character acts as the identity") {
    for (const auto& e : B().w_entries()) CHECK(gamma_f(Character::counit(), e.tree) == TreeCombination(e.tree));
  }

  TEST_CASE("defining properties hold for a generic character") {
    const auto report = check_structure_group(f);
    REQUIRE(report.properties.size() == 4);
    for (const auto& p : report.properties) {
      INFO(p.name << ": " << p.witness);
      CHECK(p.passed);
    }
    CHECK(check_structure_group(Character::counit()).all_passed());
  }

  TEST_CASE("triangularity lowers the degree of <1d1>") {
    const auto diff = gamma_f(f, T("1d1")) - TreeCombination(T("1d1"));
    REQUIRE(!diff.is_zero());
    for (const auto& [t, c] : diff.terms()) CHECK(t.degree() < T("1d1").degree());
  }

  TEST_CASE("evaluate is multiplicative") {
    const PlusMonomial m(std::vector<Tree>{T("1d1d"), Tree::monomial(0, 1), Tree::monomial(0, 1)});
    CHECK(f.evaluate(m) == P("g a^2"));
    CHECK(f.evaluate(PlusMonomial()) == Polynomial(1));
  }

  TEST_CASE("composition with the unit") {
    const Character g = Character::symbolic(B(), "_g");
    CHECK(compose_gamma(Character::counit(), g) == g);
    CHECK(compose_gamma(g, Character::counit()) == g);
  }

  TEST_CASE("generic composition closes") {
    const Character h = compose_gamma(Character::symbolic(B(), "_f"), Character::symbolic(B(), "_g"));
    CHECK(h.value(Tree::monomial(0, 1)) == P("a_f + a_g"));
    CHECK(h.value(T("1d1d")) == P("g_f + g_g"));
    CHECK(h.value(T("1d1")) == P("d_f + d_g - a_g g_f"));
    CHECK(h.value(T("2d2d1")) == P("h_f + h_g - a_g w_f"));
    CHECK(h.value(T("2d1")) == P("c_f + c_g"));
  }
}

TEST_SUITE("renormalization") {
  const RenormParams params = RenormParams::symbolic();

  TEST_CASE("automorphisms") {
    CHECK(automorphism_count(T("1d")) == 1);
    CHECK(automorphism_count(T("2d")) == 2);
    CHECK(automorphism_count(T("tree2")) == 8);
    CHECK(automorphism_count(T("tree1")) == 2);
  }

  TEST_CASE("contraction counts") {
    CHECK(contract(T("1d2d"), T("2d2d")) == C("2 <1d>"));
    CHECK(contract(T("1d2d"), T("tree1")) == C("<2d1d> + 2 <1d2d>"));
    CHECK(contract(T("1d2d"), T("2d2d1d")) == C("2 <1d1d>"));
    for (const char* n : {"2d2d", "2d1", "2d1d", "tree2", "tree1"}) CHECK(contract(T("2d"), T(n)).is_zero());
    CHECK(contract(T("2d"), T("2d")) == C("<one>"));
  }

  TEST_CASE("tabulated examples") {
    CHECK(renormalize(params, T("2d")) == C("<2d> - C1 <one>"));
    CHECK(renormalize(params, T("tree1")) == C("<tree1> - 2 C0 <1d2d> - C0 <2d1d> - C3 <one>"));
    CHECK(renormalize(params, Tree::monomial(0, 1)) == C("<X1>"));
  }

  TEST_CASE("each contraction shifts the degree by minus the pattern degree") {
    // Patterns have negative degree, so counterterms sit strictly above the input.
    for (const auto& e : B().w_entries()) {
      for (const auto& rule : B().contractions()) {
        for (const auto& [t, c] : contract(rule.pattern, e.tree).terms()) {
          CHECK(t.degree() == e.tree.degree() - rule.pattern.degree());
          CHECK(t.degree() > e.tree.degree());
        }
      }
    }
  }

  TEST_CASE("exponential series adds a second order term on <tree1> only") {
    for (const auto& e : B().w_entries()) {
      const auto lin = renormalize(params, e.tree);
      const auto ex = renormalize(params, e.tree, B(), RenormalizationOrder::exponential);
      if (e.name == "tree1") {
        CHECK(ex - lin == C("C0^2 <one>"));
      } else {
        CHECK(ex == lin);
      }
    }
  }
}

TEST_SUITE("equation") {
  TEST_CASE("picard expansion") {
    const auto dw = picard_dw();
    CHECK(dw.coefficient(T("2d1d")) == P("1/2"));
    CHECK(dw.coefficient(T("1d1d")) == P("a10 + 1/2 wt"));
    CHECK(picard_w().coefficient(Tree::monomial(0, 1)) == P("wt"));
    CHECK(dw == C("wt <one> + 1/2 <2d1d> + 1/4 <2d2d1d> + (a10 + 1/2 wt) <1d1d>"));
  }

  TEST_CASE("Q<=0 expansion") {
    const auto q = q_leq0_nonlinearity();
    CHECK(q.size() == 8);
    CHECK(q.coefficient(T("tree2")) == P("1/4"));
    CHECK(q.coefficient(T("1d2d")) == P("2 a10 + wt"));
    for (const auto& [t, c] : q.terms()) CHECK(t.degree() <= ExactDegree(0));
  }

  TEST_CASE("renormalisation constants") {
    const auto c = renorm_constants(RenormParams::symbolic());
    CHECK(c.c1 == P("C0"));
    CHECK(c.c2 == P("2 C0"));
    CHECK(c.c3 == P("1/4 C2 + 1/2 C3 + 2 a10 C0 + C1"));
    for (const auto& p : {c.c1, c.c2, c.c3}) CHECK(!p.depends_on("wt"));
    CHECK(!c.c1.depends_on("a10"));
    CHECK(!c.c2.depends_on("a10"));

    const auto zero = renorm_constants(RenormParams::constant({{"C0", 0}, {"C1", 0}, {"C2", 0}, {"C3", 0}}));
    CHECK(zero.c1.is_zero());
    CHECK(zero.c2.is_zero());
    CHECK(zero.c3.is_zero());

    const auto one = renorm_constants(RenormParams::constant({{"C0", 1}, {"C1", 0}, {"C2", 0}, {"C3", 0}}));
    CHECK(one.c1 == Polynomial(1));
    CHECK(one.c2 == Polynomial(2));
    CHECK(one.c3.substitute({{"a10", Polynomial(0)}}).is_zero());
  }

  TEST_CASE("exponential M_g breaks the counterterm c3 by -C0^2/2") {
    const auto c = renorm_constants(RenormParams::symbolic(), B(), RenormalizationOrder::exponential);
    CHECK(c.c3 == P("1/4 C2 + 1/2 C3 + 2 a10 C0 + C1 - 1/2 C0^2"));
  }

  TEST_CASE("sector exponents") {
    const auto s = sector_exponents();
    REQUIRE(s.size() == 6);
    CHECK(s[0].eta == parse_degree("2k - 2"));
    CHECK(s[3].sigma == parse_degree("-1/2 + 2k"));
    CHECK(s[5].alpha == ExactDegree(0));
    CHECK(s[1].sigma == parse_degree("k - 1"));
  }
}

TEST_SUITE("verification") {
  TEST_CASE("pristine tables verify") {
    const auto r = verify_algebra();
    CHECK(r.summary() == "4/4 tables exact");
    CHECK(r.all_exact());
    CHECK(r.notes.size() == 3);
  }

  TEST_CASE("a corrupted row is reported") {
    const std::string bad = "@generators X1=a\n@psi Xi\nXi ; basis ; Xi ; -3/2 - k ; <Xi>|<Xi> ; <Xi> ; <Xi>\n"
                            "X1 ; basis ; X1 ; 1 ; - ; - ; 2 <X1>\n";
    const auto r = verify_algebra(Basis::parse(bad));
    CHECK(r.summary() == "2/4 tables exact");
    CHECK(!r.all_exact());
  }

  TEST_CASE("malformed tables are rejected") {
    CHECK_THROWS_AS(Basis::parse("Xi ; basis ; Xi\n"), std::invalid_argument);
    CHECK_THROWS_AS(Basis::parse("Xi ; basis ; Xi ; 0 ; <Y>|<one> ; - ; -\n"), std::invalid_argument);
    CHECK_THROWS_AS(Basis::parse("@bogus 1\n"), std::invalid_argument);
  }
}
