#include "heatineq/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace heatineq {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

RunConfig RunConfig::from_string(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections_[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

bool RunConfig::has(const std::string& s, const std::string& key) const {
  auto it = sections_.find(s);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string RunConfig::get_str(const std::string& s, const std::string& key,
                               const std::string& fallback) const {
  auto it = sections_.find(s);
  if (it == sections_.end()) return fallback;
  auto kit = it->second.find(key);
  return kit == it->second.end() ? fallback : kit->second;
}

std::string RunConfig::require_str(const std::string& s, const std::string& key) const {
  if (!has(s, key)) throw ConfigError("missing required key [" + s + "] " + key);
  return get_str(s, key, "");
}

double RunConfig::get_double(const std::string& s, const std::string& key,
                             double fallback) const {
  if (!has(s, key)) return fallback;
  try {
    return std::stod(get_str(s, key, ""));
  } catch (...) {
    throw ConfigError("key [" + s + "] " + key + " is not a number");
  }
}

int RunConfig::get_int(const std::string& s, const std::string& key, int fallback) const {
  if (!has(s, key)) return fallback;
  try {
    return std::stoi(get_str(s, key, ""));
  } catch (...) {
    throw ConfigError("key [" + s + "] " + key + " is not an integer");
  }
}

std::uint64_t RunConfig::get_u64(const std::string& s, const std::string& key,
                                 std::uint64_t fallback) const {
  if (!has(s, key)) return fallback;
  try {
    return std::stoull(get_str(s, key, ""));
  } catch (...) {
    throw ConfigError("key [" + s + "] " + key + " is not an integer");
  }
}

bool RunConfig::get_bool(const std::string& s, const std::string& key,
                         bool fallback) const {
  if (!has(s, key)) return fallback;
  std::string v = get_str(s, key, "");
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("key [" + s + "] " + key + " is not a boolean");
}

std::vector<double> RunConfig::get_list(const std::string& s,
                                        const std::string& key) const {
  std::vector<double> out;
  std::istringstream is(get_str(s, key, ""));
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw ConfigError("key [" + s + "] " + key + " has a non-numeric entry");
    }
  }
  return out;
}

std::vector<double> RunConfig::get_grid(const std::string& s,
                                        const std::string& prefix) const {
  if (has(s, prefix)) return get_list(s, prefix);
  double lo = get_double(s, prefix + "_min", 0.0);
  double hi = get_double(s, prefix + "_max", 0.0);
  int points = get_int(s, prefix + "_points", 0);
  if (!(lo > 0.0) || !(hi >= lo) || points < 1)
    throw ConfigError("grid [" + s + "] " + prefix +
                      " needs a comma list or positive _min/_max/_points");
  std::vector<double> out;
  for (int i = 0; i < points; ++i)
    out.push_back(points == 1
                      ? lo
                      : lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  return out;
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  for (const auto& [section, kv] : sections_) {
    out << "[" << section << "]";
    for (const auto& [k, v] : kv) out << " " << k << "=" << v << ";";
  }
  return out.str();
}

}  // namespace heatineq
