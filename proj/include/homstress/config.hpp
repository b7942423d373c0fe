#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace homstress {

/// Raised for malformed config files, missing or duplicate keys, and values
/// that do not parse as their expected type. The message always names the
/// offending key and, where known, the line.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key-value configuration: one `key = value` per line, `#` starts a
/// comment, blank lines ignored. Keys are unique. Typed getters raise
/// ConfigError with the key name on any problem, so callers can simply ask
/// for what they need.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;

  double get_double(const std::string& key) const;
  long long get_int(const std::string& key) const;
  std::string get_string(const std::string& key) const;

  std::optional<double> find_double(const std::string& key) const;
  std::optional<long long> find_int(const std::string& key) const;
  std::optional<std::string> find_string(const std::string& key) const;

  double get_double_or(const std::string& key, double fallback) const;
  long long get_int_or(const std::string& key, long long fallback) const;
  std::string get_string_or(const std::string& key, const std::string& fallback) const;

  /// Keys present in the file but not in `known`, for strict validation.
  std::vector<std::string> unknown_keys(const std::vector<std::string>& known) const;

 private:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };
  std::vector<Entry> entries_;
  std::string origin_;

  const Entry* find(const std::string& key) const;
  const Entry& require(const std::string& key) const;
};

}  // namespace homstress
