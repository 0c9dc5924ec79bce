#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatineq {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat sectioned key-value configuration:
//
//   [graph]
//   generator = torus(64,2)
//   alpha_loop = 0.25
//
//   [kernel]
//   t_min = 8
//   ...
//
// '#' starts a comment; keys are trimmed; later duplicates win.
class RunConfig {
 public:
  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text);

  bool has_section(const std::string& s) const { return sections_.count(s) > 0; }
  bool has(const std::string& s, const std::string& key) const;

  std::string get_str(const std::string& s, const std::string& key,
                      const std::string& fallback) const;
  std::string require_str(const std::string& s, const std::string& key) const;
  double get_double(const std::string& s, const std::string& key, double fallback) const;
  int get_int(const std::string& s, const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& s, const std::string& key,
                        std::uint64_t fallback) const;
  bool get_bool(const std::string& s, const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& s, const std::string& key) const;

  // Grid helper: either an explicit comma list under `<prefix>` or a
  // log-spaced grid from <prefix>_min, <prefix>_max, <prefix>_points.
  std::vector<double> get_grid(const std::string& s, const std::string& prefix) const;

  void set(const std::string& s, const std::string& key, const std::string& value) {
    sections_[s][key] = value;
  }

  // Canonical text form echoed into output headers.
  std::string canonical() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace heatineq
