#include "kpzlab/treealg/basis.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/algorithm/string.hpp>

#include "kpz_tables_data.hpp"

namespace kpzlab::treealg {

namespace {

std::vector<std::string> split_fields(const std::string& s) {
  std::vector<std::string> out;
  boost::split(out, s, boost::is_any_of(";"));
  for (auto& f : out) boost::trim(f);
  return out;
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::string trimmed = boost::trim_copy(s);
  if (trimmed.empty()) return out;
  boost::split(out, trimmed, boost::is_space(), boost::token_compress_on);
  return out;
}

std::string_view field_name(std::size_t i) {
  static constexpr std::string_view kNames[] = {"name", "kind", "tree", "degree", "coproduct", "gamma",
                                                "renormalized"};
  return kNames[i];
}

}  // namespace

Basis Basis::parse(std::string_view text) {
  Basis b;
  std::vector<std::pair<int, std::string>> meta;
  std::vector<std::pair<int, std::vector<std::string>>> rows;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    boost::trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '@') {
      meta.emplace_back(line_no, line.substr(1));
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != 7) {
      throw std::invalid_argument("table line " + std::to_string(line_no) + ": expected 7 fields, got " +
                                  std::to_string(fields.size()));
    }
    rows.emplace_back(line_no, std::move(fields));
  }

  auto where = [](int n) { return "table line " + std::to_string(n) + ": "; };

  // Names and trees first so that every other column may refer to them.
  for (const auto& [n, f] : rows) {
    BasisEntry e;
    e.name = f[0];
    if (f[1] != "basis" && f[1] != "extended") throw std::invalid_argument(where(n) + "bad kind '" + f[1] + "'");
    e.extended = f[1] == "extended";
    try {
      e.tree = parse_tree(f[2]);
      e.tabulated_degree = parse_degree(f[3]);
    } catch (const std::exception& ex) {
      throw std::invalid_argument(where(n) + ex.what());
    }
    for (const auto& other : b.entries_) {
      if (other.name == e.name) throw std::invalid_argument(where(n) + "duplicate name " + e.name);
    }
    b.entries_.push_back(std::move(e));
  }

  const TreeResolver resolve = b.resolver();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& [n, f] = rows[r];
    auto& e = b.entries_[r];
    for (std::size_t col = 4; col < 7; ++col) {
      if (f[col] == "-") continue;
      try {
        if (col == 4) e.coproduct = parse_tensor(f[col], resolve);
        if (col == 5) e.gamma = parse_combination(f[col], resolve);
        if (col == 6) e.renormalized = parse_combination(f[col], resolve);
      } catch (const std::exception& ex) {
        throw std::invalid_argument(where(n) + std::string(field_name(col)) + ": " + ex.what());
      }
    }
  }

  for (const auto& [n, m] : meta) {
    const auto space = m.find(' ');
    const std::string key = m.substr(0, space);
    const std::string rest = space == std::string::npos ? "" : m.substr(space + 1);
    try {
      if (key == "generators") {
        for (const auto& w : split_words(rest)) {
          const auto eq = w.find('=');
          if (eq == std::string::npos) throw std::invalid_argument("expected name=variable");
          b.generators_.emplace_back(resolve(w.substr(0, eq)), w.substr(eq + 1));
        }
      } else if (key == "extended-integration") {
        for (const auto& w : split_words(rest)) b.extended_integration_.push_back(resolve(w));
      } else if (key == "contraction") {
        for (const auto& w : split_words(rest)) {
          const auto eq = w.find('=');
          const auto colon = w.find(':');
          if (eq == std::string::npos || colon == std::string::npos || colon < eq) {
            throw std::invalid_argument("expected L=name:parameter");
          }
          b.contractions_.push_back(
              {w.substr(0, eq), resolve(w.substr(eq + 1, colon - eq - 1)), w.substr(colon + 1)});
        }
      } else if (key == "psi") {
        b.psi_ = resolve(boost::trim_copy(rest));
      } else if (key == "picard") {
        b.picard_w_ = parse_combination(rest, resolve);
      } else if (key == "q-leq0") {
        b.expected_q_ = parse_combination(rest, resolve);
      } else if (key == "constants") {
        const auto f = split_fields(rest);
        if (f.size() != 3) throw std::invalid_argument("expected three constants");
        for (int i = 0; i < 3; ++i) b.expected_constants_[i] = parse_polynomial(f[i]);
      } else if (key == "sector-base") {
        const auto f = split_fields(rest);
        if (f.size() != 3) throw std::invalid_argument("expected gamma ; eta ; sigma");
        for (int i = 0; i < 3; ++i) b.sector_base_[i] = parse_degree(f[i]);
      } else if (key == "sector") {
        const auto f = split_fields(rest);
        if (f.size() != 6) throw std::invalid_argument("expected index and five exponents");
        b.sectors_.push_back({std::stoi(f[0]), parse_degree(f[1]), parse_degree(f[2]), parse_degree(f[3]),
                              parse_degree(f[4]), parse_degree(f[5])});
      } else {
        throw std::invalid_argument("unknown directive @" + key);
      }
    } catch (const std::exception& ex) {
      throw std::invalid_argument(where(n) + ex.what());
    }
  }
  return b;
}

Basis Basis::load(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open table file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

const Basis& Basis::standard() {
  static const Basis basis = parse(detail::kKpzTables);
  return basis;
}

std::vector<BasisEntry> Basis::w_entries() const {
  std::vector<BasisEntry> out;
  for (const auto& e : entries_) {
    if (!e.extended) out.push_back(e);
  }
  return out;
}

const BasisEntry& Basis::entry(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return e;
  }
  throw std::out_of_range("unknown tree name '" + std::string(name) + "'");
}

std::optional<std::string> Basis::name_of(const Tree& t) const {
  for (const auto& e : entries_) {
    if (e.tree == t) return e.name;
  }
  return std::nullopt;
}

bool Basis::in_w(const Tree& t) const {
  for (const auto& e : entries_) {
    if (!e.extended && e.tree == t) return true;
  }
  return false;
}

bool Basis::is_generator(const Tree& t) const {
  for (const auto& [g, var] : generators_) {
    if (g == t) return true;
  }
  return false;
}

TreeResolver Basis::resolver() const {
  return [this](std::string_view name) { return tree(name); };
}

TreeNamer Basis::namer() const {
  return [this](const Tree& t) {
    if (auto n = name_of(t)) return "<" + *n + ">";
    return bracketed_name(t);
  };
}

std::vector<std::pair<std::string, ExactDegree>> basis_w(const Basis& basis) {
  std::vector<std::pair<std::string, ExactDegree>> out;
  for (const auto& e : basis.w_entries()) out.emplace_back(e.name, e.tree.degree());
  return out;
}

}  // namespace kpzlab::treealg
