#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace kpzlab::harness {

/// One pre-declared pass/fail check.
struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<", ">", "<=", ">="
  double threshold = 0.0;
  bool passed = false;
};

Check make_check(std::string name, double value, std::string relation, double threshold);

/// Experiment report. Key order is fixed and there are no timestamps, so
/// equal inputs give byte-identical output.
struct TestReport {
  std::string id;
  bool exploratory = false;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  nlohmann::ordered_json seeds = nlohmann::ordered_json::object();
  nlohmann::ordered_json statistics = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  /// Raw per-item numbers for the CSV sidecar; first row is the header.
  std::vector<std::vector<std::string>> table;

  /// True if every check passed (exploratory reports have none).
  bool passed() const;
  nlohmann::ordered_json to_json() const;
  std::string json_text() const;
  std::string csv_text() const;
};

}  // namespace kpzlab::harness
