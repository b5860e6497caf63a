#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpzlab/treealg/tensor.hpp"
#include "kpzlab/treealg/tree.hpp"

namespace kpzlab::treealg {

struct BasisEntry {
  std::string name;
  bool extended = false;  // used by the equation but outside W
  Tree tree;
  ExactDegree tabulated_degree;
  std::optional<TensorElement> coproduct;
  std::optional<TreeCombination> gamma;
  std::optional<TreeCombination> renormalized;
};

struct ContractionRule {
  std::string label;      // "L0"
  Tree pattern;           // contracted to 1
  std::string parameter;  // "C0"
};

struct SectorRow {
  int index = 0;
  ExactDegree gamma, eta, sigma, mu, alpha;
};

/// The named trees and golden tables, read from the table file format in data/.
class Basis {
 public:
  static Basis parse(std::string_view text);
  static Basis load(const std::filesystem::path& path);
  /// The table compiled into the library.
  static const Basis& standard();

  const std::vector<BasisEntry>& entries() const { return entries_; }
  /// The 14 elements of W, in table order.
  std::vector<BasisEntry> w_entries() const;
  const BasisEntry& entry(std::string_view name) const;
  const Tree& tree(std::string_view name) const { return entry(name).tree; }
  std::optional<std::string> name_of(const Tree& t) const;
  bool in_w(const Tree& t) const;

  /// Generators of T_+ with the character variable attached to each.
  const std::vector<std::pair<Tree, std::string>>& generators() const { return generators_; }
  bool is_generator(const Tree& t) const;
  /// Children c for which Delta I(c) carries the extra X1 terms.
  const std::vector<Tree>& extended_integrands() const { return extended_integration_; }
  const std::vector<ContractionRule>& contractions() const { return contractions_; }

  const Tree& psi() const { return psi_; }
  const TreeCombination& picard_w() const { return picard_w_; }
  const TreeCombination& expected_q_leq0() const { return expected_q_; }
  const std::array<Polynomial, 3>& expected_constants() const { return expected_constants_; }
  const std::array<ExactDegree, 3>& sector_base() const { return sector_base_; }
  const std::vector<SectorRow>& expected_sectors() const { return sectors_; }

  TreeResolver resolver() const;
  /// "<name>" for named trees, "[canonical]" otherwise.
  TreeNamer namer() const;

 private:
  std::vector<BasisEntry> entries_;
  std::vector<std::pair<Tree, std::string>> generators_;
  std::vector<Tree> extended_integration_;
  std::vector<ContractionRule> contractions_;
  Tree psi_;
  TreeCombination picard_w_;
  TreeCombination expected_q_;
  std::array<Polynomial, 3> expected_constants_;
  std::array<ExactDegree, 3> sector_base_;
  std::vector<SectorRow> sectors_;
};

/// The 14 elements of W with their computed degrees.
std::vector<std::pair<std::string, ExactDegree>> basis_w(const Basis& basis = Basis::standard());

}  // namespace kpzlab::treealg
