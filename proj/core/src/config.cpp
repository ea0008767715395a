#include "rccm/config.hpp"

#include <stdexcept>

#include "rccm/io.hpp"

namespace rccm {
namespace {

// Strip an unquoted trailing comment. Respects double-quoted strings.
std::string_view strip_comment(std::string_view line) {
  bool in_str = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
    return std::string(v.substr(1, v.size() - 2));
  return std::string(v);
}

[[noreturn]] void fail(const std::string& origin, int lineno, const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " + what);
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::string section;
  int lineno = 0;
  for (const auto& raw_line : split(text, '\n')) {
    ++lineno;
    auto line = trim(strip_comment(raw_line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, lineno, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) fail(origin, lineno, "empty section name");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(origin, lineno, "expected key = value");
    auto key = trim(line.substr(0, eq));
    auto val = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, lineno, "empty key");
    std::string dotted = section.empty() ? std::string(key) : section + "." + std::string(key);
    if (cfg.values_.count(dotted)) fail(origin, lineno, "duplicate key: " + dotted);
    cfg.values_[dotted] = std::string(val);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  return parse(read_text_file(path), path);
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& Config::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw std::runtime_error(origin_ + ": missing config key: " + key);
  return it->second;
}

std::string Config::get_string(const std::string& key) const { return unquote(trim(raw(key))); }

double Config::get_double(const std::string& key) const { return parse_double(raw(key)); }

long Config::get_int(const std::string& key) const { return parse_long(raw(key)); }

bool Config::get_bool(const std::string& key) const {
  auto v = get_string(key);
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::runtime_error(origin_ + ": key " + key + " is not a boolean: " + v);
}

static std::vector<std::string> array_items(const std::string& origin, const std::string& key,
                                            std::string_view v) {
  v = trim(v);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw std::runtime_error(origin + ": key " + key + " is not an array");
  v = trim(v.substr(1, v.size() - 2));
  std::vector<std::string> items;
  if (v.empty()) return items;
  for (auto& piece : split(v, ',')) {
    auto p = trim(piece);
    if (!p.empty()) items.emplace_back(p);
  }
  return items;
}

std::vector<double> Config::get_double_array(const std::string& key) const {
  std::vector<double> out;
  for (auto& item : array_items(origin_, key, raw(key))) out.push_back(parse_double(item));
  return out;
}

std::vector<std::string> Config::get_string_array(const std::string& key) const {
  std::vector<std::string> out;
  for (auto& item : array_items(origin_, key, raw(key))) out.push_back(unquote(item));
  return out;
}

std::string Config::get_string(const std::string& key, const std::string& dflt) const {
  return has(key) ? get_string(key) : dflt;
}
double Config::get_double(const std::string& key, double dflt) const {
  return has(key) ? get_double(key) : dflt;
}
long Config::get_int(const std::string& key, long dflt) const {
  return has(key) ? get_int(key) : dflt;
}
bool Config::get_bool(const std::string& key, bool dflt) const {
  return has(key) ? get_bool(key) : dflt;
}

std::vector<std::string> Config::keys_in_section(const std::string& section) const {
  std::vector<std::string> out;
  std::string prefix = section + ".";
  for (const auto& [k, v] : values_) {
    if (k.rfind(prefix, 0) == 0 && k.find('.', prefix.size()) == std::string::npos)
      out.push_back(k.substr(prefix.size()));
  }
  return out;
}

}  // namespace rccm
