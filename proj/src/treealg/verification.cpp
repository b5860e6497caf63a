#include "kpzlab/treealg/verification.hpp"

#include <algorithm>

#include "kpzlab/treealg/coproduct.hpp"
#include "kpzlab/treealg/kpz_equation.hpp"
#include "kpzlab/treealg/renormalization.hpp"
#include "kpzlab/treealg/structure_group.hpp"

namespace kpzlab::treealg {

std::size_t AlgebraReport::exact_tables() const {
  return static_cast<std::size_t>(std::count_if(tables.begin(), tables.end(), [](const auto& t) { return t.exact(); }));
}

bool AlgebraReport::all_exact() const {
  auto ok = [](const auto& t) { return t.exact(); };
  return std::all_of(tables.begin(), tables.end(), ok) && std::all_of(derived.begin(), derived.end(), ok);
}

std::string AlgebraReport::summary() const {
  return std::to_string(exact_tables()) + "/" + std::to_string(tables.size()) + " tables exact";
}

namespace {

template <typename F>
void guarded(TableResult& r, const std::string& row, F&& f) {
  try {
    f();
  } catch (const std::exception& ex) {
    r.mismatches.push_back(row + ": " + ex.what());
  }
}

}  // namespace

AlgebraReport verify_algebra(const Basis& basis) {
  AlgebraReport report;
  const auto name = basis.namer();
  const Character f = Character::symbolic(basis);
  const RenormParams params = RenormParams::symbolic(basis);

  TableResult degrees{"degrees", 0, {}};
  TableResult delta{"coproduct", 0, {}};
  TableResult gamma{"gamma", 0, {}};
  TableResult mg{"renormalization", 0, {}};

  for (const auto& e : basis.entries()) {
    const std::string row = "<" + e.name + ">";
    ++degrees.rows_checked;
    if (e.tree.degree() != e.tabulated_degree) {
      degrees.mismatches.push_back(row + ": computed " + e.tree.degree().to_string() + ", table " +
                                   e.tabulated_degree.to_string());
    }
    if (e.coproduct) {
      ++delta.rows_checked;
      guarded(delta, row, [&] {
        const auto got = coproduct(e.tree, basis);
        if (got != *e.coproduct) {
          delta.mismatches.push_back(row + ": computed " + got.to_string(name) + ", table " + e.coproduct->to_string(name));
        }
      });
    }
    if (e.gamma) {
      ++gamma.rows_checked;
      guarded(gamma, row, [&] {
        const auto got = gamma_f(f, TreeCombination(e.tree), basis);
        if (got != *e.gamma) {
          gamma.mismatches.push_back(row + ": computed " + got.to_string(name) + ", table " + e.gamma->to_string(name));
        }
      });
    }
    if (e.renormalized) {
      ++mg.rows_checked;
      guarded(mg, row, [&] {
        const auto got = renormalize(params, TreeCombination(e.tree), basis);
        if (got != *e.renormalized) {
          mg.mismatches.push_back(row + ": computed " + got.to_string(name) + ", table " +
                                  e.renormalized->to_string(name));
        }
      });
    }
  }
  report.tables = {degrees, delta, gamma, mg};

  TableResult q{"q-leq0 expansion", 1, {}};
  guarded(q, "Q<=0", [&] {
    const auto got = q_leq0_nonlinearity(basis);
    if (got != basis.expected_q_leq0()) {
      q.mismatches.push_back("computed " + got.to_string(name) + ", expected " + basis.expected_q_leq0().to_string(name));
    }
  });

  TableResult constants{"renormalisation constants", 3, {}};
  guarded(constants, "constants", [&] {
    const auto c = renorm_constants(params, basis);
    const std::array<Polynomial, 3> got{c.c1, c.c2, c.c3};
    for (int i = 0; i < 3; ++i) {
      if (got[i] != basis.expected_constants()[i]) {
        constants.mismatches.push_back("c" + std::to_string(i + 1) + ": computed " + got[i].to_string() + ", expected " +
                                       basis.expected_constants()[i].to_string());
      }
    }
  });

  TableResult sectors{"sector exponents", 0, {}};
  guarded(sectors, "sectors", [&] {
    const auto got = sector_exponents(basis);
    for (const auto& want : basis.expected_sectors()) {
      ++sectors.rows_checked;
      auto it = std::find_if(got.begin(), got.end(), [&](const auto& s) { return s.index == want.index; });
      if (it == got.end()) {
        sectors.mismatches.push_back("sector " + std::to_string(want.index) + " missing");
        continue;
      }
      auto cmp = [&](const char* label, const ExactDegree& a, const ExactDegree& b) {
        if (a != b) {
          sectors.mismatches.push_back(std::string(label) + "_" + std::to_string(want.index) + ": computed " +
                                       a.to_string() + ", expected " + b.to_string());
        }
      };
      cmp("gamma", it->gamma, want.gamma);
      cmp("eta", it->eta, want.eta);
      cmp("sigma", it->sigma, want.sigma);
      cmp("mu", it->mu, want.mu);
      cmp("alpha", it->alpha, want.alpha);
    }
  });

  TableResult group{"structure group", 4, {}};
  guarded(group, "group", [&] {
    const auto checks = check_structure_group(f, basis);
    for (const auto& p : checks.properties) {
      if (!p.passed) group.mismatches.push_back(p.name + ": " + p.witness);
    }
    compose_gamma(Character::symbolic(basis, "_f"), Character::symbolic(basis, "_g"), basis);
  });
  report.derived = {q, constants, sectors, group};

  // Alternative rules, reported for the record.
  for (const auto& e : basis.w_entries()) {
    try {
      const auto a = coproduct(e.tree, basis, ProductRule::within_basis);
      const auto b = coproduct(e.tree, basis, ProductRule::unrestricted);
      if (a != b) {
        report.notes.push_back("unrestricted product rule: Delta <" + e.name + "> gains " + (b - a).to_string(name));
      }
    } catch (const std::exception& ex) {
      report.notes.push_back("unrestricted product rule: <" + e.name + ">: " + ex.what());
    }
    const auto lin = renormalize(params, TreeCombination(e.tree), basis, RenormalizationOrder::linear);
    const auto ex = renormalize(params, TreeCombination(e.tree), basis, RenormalizationOrder::exponential);
    if (lin != ex) {
      report.notes.push_back("exponential M_g: <" + e.name + "> gains " + (ex - lin).to_string(name));
    }
  }
  return report;
}

}  // namespace kpzlab::treealg
