#pragma once

// JSON reports: schema_version, constants_version, inputs, results, diagnostics.

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "procaab/bounds.hpp"
#include "procaab/config.hpp"
#include "procaab/deflection.hpp"

namespace procaab::report {

inline constexpr std::string_view kSchemaVersion = "procaab-report/1";

nlohmann::json to_json(const PhaseResult& r);
nlohmann::json to_json(const BoundResult& r);
nlohmann::json to_json(const DeflectionResult& r);
/// Raw config entries (numbers as numbers) plus the effect name.
nlohmann::json inputs_json(const ExperimentConfig& c);
/// Convention constants and constants-table snapshot stamped into every report.
nlohmann::json conventions_json();

/// Assembles a report; `warnings` go into diagnostics.
nlohmann::json make(std::string_view command, nlohmann::json inputs, nlohmann::json results,
                    const std::vector<std::string>& warnings, nlohmann::json extra_diagnostics = nlohmann::json::object());

/// Throws InvalidInput describing the first schema violation.
void validate(const nlohmann::json& report);

/// Serializes, re-parses and re-validates; returns the text.
std::string dump_checked(const nlohmann::json& report);

}  // namespace procaab::report
