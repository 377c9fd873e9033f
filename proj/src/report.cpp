#include "procaab/report.hpp"

#include "procaab/errors.hpp"

namespace procaab::report {

using nlohmann::json;

json to_json(const PhaseResult& r) {
    return {{"phi0_rad", r.phi0},
            {"delta_phi_rad", r.delta_phi},
            {"ratio", r.ratio},
            {"method", to_string(r.method)},
            {"validity_flags", r.validity_flags}};
}

json to_json(const BoundResult& r) {
    return {{"effect", to_string(r.effect)},
            {"epsilon", r.epsilon},
            {"m_gamma_inv_cm", r.inverse_range_cm},
            {"m_ph_g", r.mass.grams()},
            {"ratio_vs_bd", r.ratio_vs_bd},
            {"method", to_string(r.method)},
            {"neglected_log_correction", r.neglected_log_correction}};
}

json to_json(const DeflectionResult& r) {
    return {{"delta_p_perp_g_cm_s", r.delta_p_perp},
            {"alpha_rad", r.alpha},
            {"delta_s_perp_cm", r.delta_s_perp},
            {"equivalent_phase_rad", r.equivalent_phase},
            {"heisenberg_product_erg_s", r.heisenberg_product},
            {"heisenberg_ok", r.heisenberg_ok}};
}

json inputs_json(const ExperimentConfig& c) {
    json in = json::object();
    for (const auto& [key, e] : c.entries) {
        json parsed = json::parse(e.value, nullptr, false);
        in[key] = parsed.is_number() ? parsed : json(e.value);
    }
    in["effect"] = to_string(c.effect);
    return in;
}

json conventions_json() {
    const Constants k;
    return {{"pm_q_superposition_factor", kPmQSuperpositionFactor},
            {"open_path_aspect_min", kOpenPathAspectMin},
            {"asymptotic_window", field::kAsymptoticWindow},
            {"pm_q_bracket_constant", kPmQBracketConstant},
            {"constants",
             {{"hbar_erg_s", k.hbar},
              {"c_cm_s", k.c},
              {"bohr_radius_cm", k.bohr_radius},
              {"electron_charge_statc", k.electron_charge}}}};
}

json make(std::string_view command, json inputs, json results, const std::vector<std::string>& warnings,
          json extra_diagnostics) {
    inputs["command"] = command;
    json diag = std::move(extra_diagnostics);
    diag["warnings"] = warnings;
    diag["conventions"] = conventions_json();
    return {{"schema_version", kSchemaVersion},
            {"constants_version", constants::kVersion},
            {"inputs", std::move(inputs)},
            {"results", std::move(results)},
            {"diagnostics", std::move(diag)}};
}

void validate(const json& r) {
    auto fail = [](const std::string& what) { throw InvalidInput("report schema: " + what); };
    if (!r.is_object()) fail("top level must be an object");
    for (const char* key : {"schema_version", "constants_version", "inputs", "results", "diagnostics"}) {
        if (!r.contains(key)) fail(std::string("missing key '") + key + "'");
    }
    if (r.size() != 5) fail("unexpected top-level keys");
    if (r["schema_version"] != kSchemaVersion) fail("schema_version mismatch");
    if (r["constants_version"] != constants::kVersion) fail("constants_version mismatch");
    if (!r["inputs"].is_object() || !r["inputs"].contains("command") || !r["inputs"]["command"].is_string()) {
        fail("inputs must be an object naming the command");
    }
    if (!r["results"].is_object()) fail("results must be an object");
    const auto& d = r["diagnostics"];
    if (!d.is_object() || !d.contains("warnings") || !d["warnings"].is_array()) fail("diagnostics.warnings missing");
    if (!d.contains("conventions") || !d["conventions"].contains("pm_q_superposition_factor")) {
        fail("diagnostics.conventions missing");
    }
    for (const auto& w : d["warnings"]) {
        if (!w.is_string()) fail("warnings must be strings");
    }
}

std::string dump_checked(const json& report) {
    validate(report);
    std::string text = report.dump(2);
    validate(json::parse(text));
    return text;
}

}  // namespace procaab::report
