#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace homstress {

/// JSON-shaped value tree for machine-readable reports. Object keys are
/// kept sorted, and both serializers format every number identically
/// (17 significant digits), so identical trees serialize byte-identically.
class ReportValue {
 public:
  enum class Kind { kBool, kInt, kDouble, kString, kArray, kObject };

  ReportValue() : kind_(Kind::kObject) {}

  static ReportValue boolean(bool v);
  static ReportValue integer(std::int64_t v);
  static ReportValue number(double v);
  static ReportValue text(std::string v);
  static ReportValue array();

  Kind kind() const { return kind_; }

  /// Object access; inserts a null-object child at the sorted position.
  ReportValue& operator[](const std::string& key);
  const ReportValue* find(const std::string& key) const;

  /// Array append.
  ReportValue& push_back(ReportValue v);

  bool as_bool() const { return bool_; }
  std::int64_t as_int() const { return int_; }
  double as_double() const { return double_; }
  const std::string& as_string() const { return string_; }
  const std::vector<ReportValue>& items() const { return array_; }
  const std::vector<std::pair<std::string, ReportValue>>& members() const { return object_; }

 private:
  Kind kind_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  double double_ = 0;
  std::string string_;
  std::vector<ReportValue> array_;
  std::vector<std::pair<std::string, ReportValue>> object_;
};

/// Pretty JSON with two-space indentation and sorted keys.
std::string serialize_json(const ReportValue& v);

/// Flat `key,value` CSV: one row per leaf, paths joined with '.' and
/// array elements addressed as name[i]; header row "key,value".
std::string serialize_csv(const ReportValue& v);

}  // namespace homstress
