#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace hodgewalk {

/// Deterministic JSON text: sorted keys, floats with 17 significant digits,
/// two-space indentation. Non-finite floats are written as null.
void write_json(std::ostream& os, const nlohmann::json& value);
std::string json_text(const nlohmann::json& value);

/// A finite double, or the string "unbounded" for +inf and null otherwise.
nlohmann::json json_number(double v);

}  // namespace hodgewalk
