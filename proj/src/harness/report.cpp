#include "kpzlab/harness/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kpzlab::harness {

Check make_check(std::string name, double value, std::string relation, double threshold) {
  bool ok = false;
  if (relation == "<") ok = value < threshold;
  else if (relation == ">") ok = value > threshold;
  else if (relation == "<=") ok = value <= threshold;
  else if (relation == ">=") ok = value >= threshold;
  else throw std::invalid_argument("unknown relation " + relation);
  return {std::move(name), value, std::move(relation), threshold, ok};
}

bool TestReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

nlohmann::ordered_json TestReport::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = id;
  j["exploratory"] = exploratory;
  j["parameters"] = parameters;
  j["seeds"] = seeds;
  j["statistics"] = statistics;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json o;
    o["name"] = c.name;
    o["value"] = c.value;
    o["relation"] = c.relation;
    o["threshold"] = c.threshold;
    o["passed"] = c.passed;
    arr.push_back(std::move(o));
  }
  j["checks"] = std::move(arr);
  j["passed"] = passed();
  return j;
}

std::string TestReport::json_text() const { return to_json().dump(2) + "\n"; }

std::string TestReport::csv_text() const {
  std::ostringstream os;
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace kpzlab::harness
