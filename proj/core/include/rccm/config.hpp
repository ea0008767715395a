#pragma once
// Minimal TOML-subset reader used by the scenario / task / matrix files.
// Supports: [section] headers, key = value lines, # comments, quoted
// strings, booleans, numbers and flat arrays of numbers or strings.
// Keys are addressed as "section.key" ("" section for top-level keys).

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rccm {

class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<string>");
  static Config parse_file(const std::string& path);

  bool has(const std::string& dotted_key) const;
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_double_array(const std::string& key) const;
  std::vector<std::string> get_string_array(const std::string& key) const;

  // Defaulted variants.
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  long get_int(const std::string& key, long dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;

  std::vector<std::string> keys_in_section(const std::string& section) const;

 private:
  const std::string& raw(const std::string& key) const;
  std::map<std::string, std::string> values_;  // dotted key -> raw value text
  std::string origin_;
};

}  // namespace rccm
