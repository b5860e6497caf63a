#include "kpzlab/common/sample_ensemble.hpp"

#include <boost/algorithm/string.hpp>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "kpzlab/common/errors.hpp"

namespace kpzlab {

namespace {

constexpr const char* kMagic = "# kpzlab sample-ensemble v1";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void SampleEnsemble::set(const std::string& key, const std::string& value) {
  for (auto& kv : header) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  header.emplace_back(key, value);
}

std::string SampleEnsemble::get(const std::string& key) const {
  for (const auto& kv : header)
    if (kv.first == key) return kv.second;
  return {};
}

std::vector<double> SampleEnsemble::column(int j) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.values.at(j));
  return out;
}

SampleEnsemble SampleEnsemble::at_time(double t) const {
  SampleEnsemble out;
  out.cells = cells;
  out.header = header;
  for (const auto& r : rows)
    if (r.time == t) out.rows.push_back(r);
  return out;
}

void SampleEnsemble::write(std::ostream& os) const {
  os << kMagic << '\n';
  for (const auto& [k, v] : header) os << "# " << k << " = " << v << '\n';
  os << "path,time";
  for (int j = 0; j <= cells; ++j) os << ",x" << j;
  os << '\n';
  for (const auto& r : rows) {
    os << r.path << ',' << fmt(r.time);
    for (double v : r.values) os << ',' << fmt(v);
    os << '\n';
  }
}

SampleEnsemble SampleEnsemble::read(std::istream& is) {
  SampleEnsemble e;
  std::string line;
  if (!std::getline(is, line) || line != kMagic) throw ConfigError("not a sample ensemble file");
  bool have_columns = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find(" = ");
      if (eq == std::string::npos) throw ConfigError("malformed header line: " + line);
      e.header.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
      continue;
    }
    std::vector<std::string> parts;
    boost::split(parts, line, boost::is_any_of(","));
    if (!have_columns) {
      if (parts.size() < 4 || parts[0] != "path" || parts[1] != "time") throw ConfigError("missing column line");
      e.cells = static_cast<int>(parts.size()) - 3;
      have_columns = true;
      continue;
    }
    if (static_cast<int>(parts.size()) != e.cells + 3)
      throw ConfigError("row has " + std::to_string(parts.size()) + " fields, expected " + std::to_string(e.cells + 3));
    Row r;
    r.path = std::stoull(parts[0]);
    r.time = std::stod(parts[1]);
    for (std::size_t i = 2; i < parts.size(); ++i) r.values.push_back(std::stod(parts[i]));
    e.rows.push_back(std::move(r));
  }
  if (!have_columns) throw ConfigError("missing column line");
  return e;
}

void SampleEnsemble::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write(os);
}

SampleEnsemble SampleEnsemble::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path);
  return read(is);
}

}  // namespace kpzlab
