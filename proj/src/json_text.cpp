#include "hodgewalk/json_text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace hodgewalk {

namespace {

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void write(std::ostream& os, const nlohmann::json& v, int depth) {
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        indent(os, depth + 1);
        os << nlohmann::json(it.key()).dump() << ": ";
        write(os, it.value(), depth + 1);
      }
      os << '\n';
      indent(os, depth);
      os << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line so spectra remain readable.
      const bool flat = std::none_of(v.begin(), v.end(), [](const auto& e) { return e.is_structured(); });
      if (flat) {
        os << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) os << ", ";
          write(os, v[i], depth);
        }
        os << ']';
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",\n";
        indent(os, depth + 1);
        write(os, v[i], depth + 1);
      }
      os << '\n';
      indent(os, depth);
      os << ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      os << buf;
      return;
    }
    default:
      os << v.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const nlohmann::json& value) {
  write(os, value, 0);
  os << '\n';
}

std::string json_text(const nlohmann::json& value) {
  std::ostringstream os;
  write_json(os, value);
  return os.str();
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (v > 0) return "unbounded";
  return nullptr;
}

}  // namespace hodgewalk
