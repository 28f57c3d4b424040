#pragma once

#include <string_view>

#include <json.hpp>

#include "ineq/funclib.hpp"

namespace ineq::funclib {

/// {"family": "Power", "coefficients": [c, s], "domain_upper": u}
/// NonNegSum carries "terms": [...], Scale carries "inner": {...}.
nlohmann::json to_json(const FunctionSpec& spec);
FunctionSpec spec_from_json(const nlohmann::json& j);

/// Parses the compact form produced by FunctionSpec::to_string(), e.g.
/// "NonNegSum[Affine(1, 0), Constant(1)]", on [0, domain_upper].
FunctionSpec parse_spec(std::string_view text, double domain_upper);

}  // namespace ineq::funclib
