#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ffexpand/poly.hpp"

namespace ffexpand {

/// Parses expressions such as "(a+x)^2" or "x*y + 3*x + 3*y". Integer
/// literals are reduced into the prime subfield; "[k]" denotes the element
/// with canonical index k. Juxtaposition multiplies ("3x", "2(a+x)").
///
/// With `variables` given, the result uses exactly that variable list and any
/// other identifier is a parse error; otherwise variables are ordered by first
/// appearance.
MultiPoly parse_poly(std::string_view text, const FieldPtr& ctx,
                     const std::optional<std::vector<std::string>>& variables = std::nullopt);

std::string to_string(const MultiPoly& f);

/// {"field": "p^n", "variables": [...], "terms": [{"exponents": [...], "coefficient": k}]}
nlohmann::json to_json(const MultiPoly& f);
MultiPoly poly_from_json(const nlohmann::json& j, const FieldPtr& ctx);

}  // namespace ffexpand
