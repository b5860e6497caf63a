#pragma once

#include <string>
#include <vector>

#include "kpzlab/treealg/basis.hpp"

namespace kpzlab::treealg {

struct TableResult {
  std::string table;  // "degrees", "coproduct", "gamma", "renormalization"
  std::size_t rows_checked = 0;
  std::vector<std::string> mismatches;
  bool exact() const { return mismatches.empty(); }
};

struct AlgebraReport {
  std::vector<TableResult> tables;
  /// Derived quantities: Q<=0 expansion, constants, sector exponents, group checks.
  std::vector<TableResult> derived;
  /// Informational differences of the alternative rules; never failures.
  std::vector<std::string> notes;

  std::size_t exact_tables() const;
  bool all_exact() const;
  std::string summary() const;  // e.g. "4/4 tables exact"
};

/// Recomputes every golden table from the tree algebra and compares exactly.
AlgebraReport verify_algebra(const Basis& basis = Basis::standard());

}  // namespace kpzlab::treealg
