#pragma once

#include <string>

#include <json.hpp>

namespace focksim {

/// Deterministic JSON serialization: keys sorted, every floating-point number
/// rendered with 17 significant digits and a lowercase exponent, no locale
/// dependence. Byte-identical for identical documents.
std::string canonical_dump(const nlohmann::json& j, int indent = 2);

/// Render a double the way canonical_dump does.
std::string canonical_double(double value);

}  // namespace focksim
