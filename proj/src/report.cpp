#include "homstress/report.hpp"

#include <algorithm>
#include <sstream>

#include "homstress/numfmt.hpp"

namespace homstress {

ReportValue ReportValue::boolean(bool v) {
  ReportValue r;
  r.kind_ = Kind::kBool;
  r.bool_ = v;
  return r;
}

ReportValue ReportValue::integer(std::int64_t v) {
  ReportValue r;
  r.kind_ = Kind::kInt;
  r.int_ = v;
  return r;
}

ReportValue ReportValue::number(double v) {
  ReportValue r;
  r.kind_ = Kind::kDouble;
  r.double_ = v;
  return r;
}

ReportValue ReportValue::text(std::string v) {
  ReportValue r;
  r.kind_ = Kind::kString;
  r.string_ = std::move(v);
  return r;
}

ReportValue ReportValue::array() {
  ReportValue r;
  r.kind_ = Kind::kArray;
  return r;
}

ReportValue& ReportValue::operator[](const std::string& key) {
  auto pos = std::lower_bound(object_.begin(), object_.end(), key,
                              [](const auto& member, const std::string& k) {
                                return member.first < k;
                              });
  if (pos == object_.end() || pos->first != key)
    pos = object_.insert(pos, {key, ReportValue()});
  return pos->second;
}

const ReportValue* ReportValue::find(const std::string& key) const {
  for (const auto& [k, v] : object_)
    if (k == key) return &v;
  return nullptr;
}

ReportValue& ReportValue::push_back(ReportValue v) {
  kind_ = Kind::kArray;
  array_.push_back(std::move(v));
  return array_.back();
}

namespace {

void escape_json(const std::string& s, std::ostream& os) {
  os << '"';
  for (const char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      case '\r': os << "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          os << buf;
        } else {
          os << c;
        }
    }
  }
  os << '"';
}

void write_json(const ReportValue& v, std::ostream& os, int depth) {
  const std::string pad(static_cast<size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<size_t>(depth + 1) * 2, ' ');
  switch (v.kind()) {
    case ReportValue::Kind::kBool:
      os << (v.as_bool() ? "true" : "false");
      break;
    case ReportValue::Kind::kInt:
      os << v.as_int();
      break;
    case ReportValue::Kind::kDouble:
      os << sig17(v.as_double());
      break;
    case ReportValue::Kind::kString:
      escape_json(v.as_string(), os);
      break;
    case ReportValue::Kind::kArray: {
      if (v.items().empty()) {
        os << "[]";
        break;
      }
      os << "[\n";
      for (size_t i = 0; i < v.items().size(); ++i) {
        os << pad_in;
        write_json(v.items()[i], os, depth + 1);
        os << (i + 1 < v.items().size() ? ",\n" : "\n");
      }
      os << pad << ']';
      break;
    }
    case ReportValue::Kind::kObject: {
      if (v.members().empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      for (size_t i = 0; i < v.members().size(); ++i) {
        os << pad_in;
        escape_json(v.members()[i].first, os);
        os << ": ";
        write_json(v.members()[i].second, os, depth + 1);
        os << (i + 1 < v.members().size() ? ",\n" : "\n");
      }
      os << pad << '}';
      break;
    }
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

void write_csv(const ReportValue& v, const std::string& path, std::ostream& os) {
  switch (v.kind()) {
    case ReportValue::Kind::kBool:
      os << csv_cell(path) << ',' << (v.as_bool() ? "true" : "false") << '\n';
      break;
    case ReportValue::Kind::kInt:
      os << csv_cell(path) << ',' << v.as_int() << '\n';
      break;
    case ReportValue::Kind::kDouble:
      os << csv_cell(path) << ',' << sig17(v.as_double()) << '\n';
      break;
    case ReportValue::Kind::kString:
      os << csv_cell(path) << ',' << csv_cell(v.as_string()) << '\n';
      break;
    case ReportValue::Kind::kArray:
      for (size_t i = 0; i < v.items().size(); ++i) {
        std::ostringstream sub;
        sub << path << '[' << i << ']';
        write_csv(v.items()[i], sub.str(), os);
      }
      break;
    case ReportValue::Kind::kObject:
      for (const auto& [key, child] : v.members())
        write_csv(child, path.empty() ? key : path + "." + key, os);
      break;
  }
}

}  // namespace

std::string serialize_json(const ReportValue& v) {
  std::ostringstream os;
  write_json(v, os, 0);
  os << '\n';
  return os.str();
}

std::string serialize_csv(const ReportValue& v) {
  std::ostringstream os;
  os << "key,value\n";
  write_csv(v, "", os);
  return os.str();
}

}  // namespace homstress
