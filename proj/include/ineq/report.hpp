#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ineq/harness.hpp"

namespace ineq::report {

using nlohmann::json;

/// One record per case plus the per-theorem summary. Run-dependent values
/// (timestamps, wall times) live under "meta"; everything else is a pure
/// function of the plan and seed.
json to_json(const harness::Report& report);

/// Inverse of to_json for the comparison payload (meta is ignored).
harness::Report report_from_json(const json& j);

/// `doc` without its "meta" member.
json comparison_payload(const json& doc);

json case_to_json(const harness::TheoremCase& c);
harness::TheoremCase case_from_json(const json& j);
json bound_to_json(const bounds::BoundReport& r);

json to_json(const harness::Counterexample& cx);
json to_json(const harness::TightnessStats& stats);

/// Flat export, one row per case, same fields as the case records.
std::string to_csv(const harness::Report& report);

/// Writes to a sibling temp file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace ineq::report
