#pragma once

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace kpzlab::cli {

/// Exit codes of run().
enum ExitCode : int {
  ok = 0,
  check_failed = 1,  // verification mismatch, failed experiment check, lost positivity
  config_error = 2,  // bad flag, bad or unknown config key, precondition or regime violation
};

/// Key-value parameters addressed as "section.key".
///
/// Values come from the INI file, then --set, then the dedicated flags, later
/// sources winning. Every typed read records the resolved value (default or
/// given) so artifacts can embed the exact configuration; finish() rejects
/// keys that no read asked for.
class RunConfig {
 public:
  std::string subcommand;

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  double real(const std::string& key, double fallback);
  long integer(const std::string& key, long fallback);
  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback);
  bool flag(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback,
                   const std::vector<std::string>& choices = {});
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback);

  /// Throws ConfigError naming the first key that was given but never read.
  void finish() const;

  /// Resolved values grouped by section, in read order.
  const nlohmann::ordered_json& resolved() const { return resolved_; }
  /// "section.key = value" lines for CSV and ensemble headers.
  std::vector<std::pair<std::string, std::string>> flat() const;

 private:
  const std::string* find(const std::string& key);
  void record(const std::string& key, nlohmann::ordered_json value);

  std::map<std::string, std::string> given_;
  std::set<std::string> used_;
  nlohmann::ordered_json resolved_ = nlohmann::ordered_json::object();
};

/// Reads an INI file into cfg. Throws ConfigError on parse errors or keys outside a section.
void load_ini(const std::string& path, RunConfig& cfg);

/// Full command line without the program name. Writes artifacts below
/// --out-dir (default "."), human-readable progress to out, errors to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kpzlab::cli
