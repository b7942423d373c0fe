#include "homstress/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace homstress {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << origin << ":" << line_no << ": expected 'key = value', got '" << line << "'";
      throw ConfigError(msg.str());
    }
    Entry entry;
    entry.key = trim(line.substr(0, eq));
    entry.value = trim(line.substr(eq + 1));
    entry.line = line_no;
    if (entry.key.empty()) {
      std::ostringstream msg;
      msg << origin << ":" << line_no << ": empty key";
      throw ConfigError(msg.str());
    }
    if (cfg.find(entry.key)) {
      std::ostringstream msg;
      msg << origin << ":" << line_no << ": duplicate key '" << entry.key << "'";
      throw ConfigError(msg.str());
    }
    cfg.entries_.push_back(std::move(entry));
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

const Config::Entry* Config::find(const std::string& key) const {
  for (const Entry& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

const Config::Entry& Config::require(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ConfigError("missing required config key '" + key + "'");
  return *e;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

double Config::get_double(const std::string& key) const {
  const Entry& e = require(key);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(e.value.c_str(), &end);
  if (end == e.value.c_str() || *end != '\0' || errno == ERANGE) {
    std::ostringstream msg;
    msg << origin_ << ":" << e.line << ": key '" << key << "': not a number: '" << e.value << "'";
    throw ConfigError(msg.str());
  }
  return v;
}

long long Config::get_int(const std::string& key) const {
  const Entry& e = require(key);
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *end != '\0' || errno == ERANGE) {
    std::ostringstream msg;
    msg << origin_ << ":" << e.line << ": key '" << key << "': not an integer: '" << e.value
        << "'";
    throw ConfigError(msg.str());
  }
  return v;
}

std::string Config::get_string(const std::string& key) const { return require(key).value; }

std::optional<double> Config::find_double(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_double(key);
}

std::optional<long long> Config::find_int(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_int(key);
}

std::optional<std::string> Config::find_string(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_string(key);
}

double Config::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long Config::get_int_or(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::string Config::get_string_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

std::vector<std::string> Config::unknown_keys(const std::vector<std::string>& known) const {
  std::vector<std::string> out;
  for (const Entry& e : entries_) {
    bool found = false;
    for (const std::string& k : known) found = found || k == e.key;
    if (!found) out.push_back(e.key);
  }
  return out;
}

}  // namespace homstress
