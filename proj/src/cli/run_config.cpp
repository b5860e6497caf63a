#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>

#include "kpzlab/cli/cli.hpp"
#include "kpzlab/common/errors.hpp"

namespace kpzlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

template <class T>
bool parse_number(const std::string& s, T& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

std::pair<std::string, std::string> split_key(const std::string& key) {
  const auto dot = key.find('.');
  return {key.substr(0, dot), key.substr(dot + 1)};
}

std::string leaf_text(const nlohmann::ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  const std::string k = trim(key);
  const auto dot = k.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == k.size())
    throw ConfigError("config key '" + k + "' must have the form section.key");
  given_[k] = trim(value);
}

bool RunConfig::has(const std::string& key) const { return given_.count(key) > 0; }

const std::string* RunConfig::find(const std::string& key) {
  used_.insert(key);
  const auto it = given_.find(key);
  return it == given_.end() ? nullptr : &it->second;
}

void RunConfig::record(const std::string& key, nlohmann::ordered_json value) {
  const auto [section, name] = split_key(key);
  resolved_[section][name] = std::move(value);
}

double RunConfig::real(const std::string& key, double fallback) {
  double v = fallback;
  if (const std::string* s = find(key)) {
    if (!parse_number(*s, v) || !std::isfinite(v))
      throw ConfigError(key + ": expected a finite number, got '" + *s + "'");
  }
  record(key, v);
  return v;
}

long RunConfig::integer(const std::string& key, long fallback) {
  long v = fallback;
  if (const std::string* s = find(key)) {
    if (!parse_number(*s, v)) throw ConfigError(key + ": expected an integer, got '" + *s + "'");
  }
  record(key, v);
  return v;
}

std::uint64_t RunConfig::unsigned_integer(const std::string& key, std::uint64_t fallback) {
  std::uint64_t v = fallback;
  if (const std::string* s = find(key)) {
    if (!parse_number(*s, v)) throw ConfigError(key + ": expected a non-negative integer, got '" + *s + "'");
  }
  record(key, v);
  return v;
}

bool RunConfig::flag(const std::string& key, bool fallback) {
  bool v = fallback;
  if (const std::string* s = find(key)) {
    if (*s == "true" || *s == "1" || *s == "yes" || *s == "on")
      v = true;
    else if (*s == "false" || *s == "0" || *s == "no" || *s == "off")
      v = false;
    else
      throw ConfigError(key + ": expected true or false, got '" + *s + "'");
  }
  record(key, v);
  return v;
}

std::string RunConfig::text(const std::string& key, const std::string& fallback,
                            const std::vector<std::string>& choices) {
  std::string v = fallback;
  if (const std::string* s = find(key)) v = *s;
  if (!choices.empty()) {
    bool found = false;
    std::string list;
    for (const auto& c : choices) {
      found = found || c == v;
      list += (list.empty() ? "" : ", ") + c;
    }
    if (!found) throw ConfigError(key + ": '" + v + "' is not one of " + list);
  }
  record(key, v);
  return v;
}

std::vector<double> RunConfig::reals(const std::string& key, const std::vector<double>& fallback) {
  std::vector<double> v = fallback;
  if (const std::string* s = find(key)) {
    v.clear();
    std::string item;
    for (char c : *s + ",") {
      if (c == ',' || c == ' ' || c == '\t') {
        if (!trim(item).empty()) {
          double d = 0.0;
          if (!parse_number(item, d) || !std::isfinite(d))
            throw ConfigError(key + ": expected a list of numbers, got '" + *s + "'");
          v.push_back(d);
        }
        item.clear();
      } else {
        item += c;
      }
    }
    if (v.empty()) throw ConfigError(key + ": empty list");
  }
  record(key, v);
  return v;
}

void RunConfig::finish() const {
  for (const auto& [k, value] : given_)
    if (!used_.count(k)) throw ConfigError("unknown key '" + k + "' for " + subcommand);
}

std::vector<std::pair<std::string, std::string>> RunConfig::flat() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [section, entries] : resolved_.items())
    for (const auto& [name, value] : entries.items()) out.emplace_back(section + "." + name, leaf_text(value));
  return out;
}

void load_ini(const std::string& path, RunConfig& cfg) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  for (const auto& [section, entries] : tree) {
    if (entries.empty()) {
      if (!entries.data().empty()) throw ConfigError("config key '" + section + "' is outside a section");
      continue;
    }
    for (const auto& [name, node] : entries) cfg.set(section + "." + name, node.data());
  }
}

}  // namespace kpzlab::cli
