#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace kpzlab {

/// Height profiles on the node grid of [0,1], one row per (path, time).
///
/// Text form:
///   # kpzlab sample-ensemble v1
///   # key = value            (header, in insertion order)
///   path,time,x0,x1,...,xN
///   0,0,0,0.013,...
/// Values are written with 17 significant digits so a round trip is exact.
struct SampleEnsemble {
  struct Row {
    std::uint64_t path = 0;
    double time = 0.0;
    std::vector<double> values;
  };

  int cells = 0;
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<Row> rows;

  void set(const std::string& key, const std::string& value);
  /// Empty if absent.
  std::string get(const std::string& key) const;

  /// Values of node j over all rows.
  std::vector<double> column(int j) const;
  /// Rows recorded at the given time (exact match).
  SampleEnsemble at_time(double t) const;

  void write(std::ostream& os) const;
  static SampleEnsemble read(std::istream& is);
  void save(const std::string& path) const;
  static SampleEnsemble load(const std::string& path);
};

}  // namespace kpzlab
