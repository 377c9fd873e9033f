#include "procaab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "procaab/report.hpp"

namespace procaab::cli {
namespace {

using nlohmann::json;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? std::string(1, sep) : "") + parts[i];
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

/// Writes `text` to the file if given, else to out.
void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty()) {
        out << text;
    } else {
        write_text(path, text);
    }
}

void emit_json(const std::string& path, const json& report) {
    if (!path.empty()) write_text(path, report::dump_checked(report) + "\n");
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) err << "warning: " << w << "\n";
}

InverseRange mass_for(const ExperimentConfig& c, std::optional<double> flag_inv_cm) {
    if (flag_inv_cm) {
        if (!(*flag_inv_cm > 0.0)) throw InvalidInput("--m-inv-cm must be > 0");
        return InverseRange::from_range_cm(*flag_inv_cm);
    }
    if (c.mass_override) return *c.mass_override;
    throw ConfigError(0, "m_gamma_inv_cm", "missing 'm_gamma_inv_cm' (config key or --m-inv-cm) for this command");
}

struct Options {
    std::string config;
    std::string out_file;
    std::string json_file;
    std::optional<double> m_inv_cm;
    std::optional<double> epsilon;
    // convert
    std::optional<double> conv_inv_cm, conv_per_cm, conv_grams;
    // field
    double a = 0.0, j = 0.0;
    std::optional<double> field_m, field_m_inv;
    std::optional<double> rho_min, rho_max;
    std::size_t n = 50;
    std::string method = "closed_form";
};

int cmd_convert(const Options& o, std::ostream& out) {
    const int given = !!o.conv_inv_cm + !!o.conv_per_cm + !!o.conv_grams;
    if (given != 1) throw InvalidInput("convert needs exactly one of --inv-cm, --per-cm, --grams");
    InverseRange m;
    if (o.conv_inv_cm) m = InverseRange::from_range_cm(*o.conv_inv_cm);
    if (o.conv_per_cm) m = InverseRange(*o.conv_per_cm);
    if (o.conv_grams) m = to_inverse_cm(MassGrams(*o.conv_grams));
    const double grams = to_grams(m).grams();
    emit(out, o.out_file,
         "m_gamma_per_cm,m_gamma_inv_cm,m_ph_g\n" + num(m.per_cm()) + "," + num(m.range_cm()) + "," + num(grams) + "\n");
    json results = {{"m_gamma_per_cm", m.per_cm()}, {"m_ph_g", grams}};
    results["m_gamma_inv_cm"] = m.massless() ? json(nullptr) : json(m.range_cm());
    json inputs = json::object();
    if (o.conv_inv_cm) inputs["inv_cm"] = *o.conv_inv_cm;
    if (o.conv_per_cm) inputs["per_cm"] = *o.conv_per_cm;
    if (o.conv_grams) inputs["grams"] = *o.conv_grams;
    emit_json(o.json_file, report::make("convert", inputs, results, {}));
    return kOk;
}

int cmd_field(const Options& o, std::ostream& out) {
    if (!!o.field_m == !!o.field_m_inv) throw InvalidInput("field needs exactly one of --m, --m-inv-cm");
    SolenoidSpec s;
    s.radius_cm = o.a;
    s.interior_field_gauss = o.j;
    s.validate();
    const InverseRange m = o.field_m ? InverseRange(*o.field_m) : InverseRange::from_range_cm(*o.field_m_inv);
    const double lo = o.rho_min.value_or(0.01 * o.a);
    const double hi = o.rho_max.value_or(m.massless() ? 10.0 * o.a : std::max(10.0 * o.a, 30.0 / m.per_cm()));
    auto grid = log_grid(lo, hi, o.n);

    FieldProfile p;
    std::vector<std::string> warnings;
    json extra = json::object();
    if (o.method == "closed_form") {
        p = closed_form_profile(s, m, grid);
    } else if (o.method == "quadrature") {
        p = quadrature_profile(s, m, grid);
    } else if (o.method == "ode_oracle") {
        if (m.massless()) throw InvalidInput("ode_oracle needs m > 0");
        const auto r = ode_oracle(s, m, grid);
        p = r.profile;
        extra = {{"richardson_estimate", r.richardson_estimate}, {"log_step", r.log_step}, {"nodes", r.nodes}};
    } else {
        throw InvalidInput("unknown --method '" + o.method + "'");
    }
    std::vector<double> residuals(p.grid.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        residuals[i] = field::stokes_residual(p.grid[i], p.a_phi[i], s, m);
        worst = std::max(worst, residuals[i]);
    }
    std::ostringstream csv;
    write_csv(csv, p, &residuals);
    emit(out, o.out_file, csv.str());

    json rows = json::array();
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        rows.push_back({{"rho_cm", p.grid[i]},
                        {"b_gauss", p.b_z[i]},
                        {"a_phi_gauss_cm", p.a_phi[i]},
                        {"pi_kernel", std::isnan(p.pi_kernel[i]) ? json(nullptr) : json(p.pi_kernel[i])},
                        {"stokes_residual", residuals[i]}});
    }
    extra["max_stokes_residual"] = worst;
    const json inputs = {{"a_cm", o.a}, {"j_gauss", o.j}, {"m_gamma_per_cm", m.per_cm()},
                         {"rho_min_cm", lo}, {"rho_max_cm", hi}, {"n", o.n}, {"method", o.method}};
    emit_json(o.json_file, report::make("field", inputs, {{"profile", rows}}, warnings, extra));
    return kOk;
}

int cmd_phase(const Options& o, const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
    const InverseRange m = mass_for(c, o.m_inv_cm);
    PhaseReport r;
    switch (c.effect) {
        case Effect::ab_closed: r = phases::ab_closed(c.probe, c.solenoid, std::get<ClosedLoop>(c.path), m); break;
        case Effect::tkachuk: r = phases::tkachuk(c.probe, c.solenoid, std::get<ClosedLoop>(c.path), m); break;
        case Effect::pm_q: r = phases::open_path_pm_q(c.probe, c.solenoid, std::get<OpenSegment>(c.path), m); break;
    }
    std::string csv = "effect,method,phi0_rad,delta_phi_rad,ratio,validity_flags\n";
    json results = {{"m_gamma_per_cm", m.per_cm()}, {"phases", json::array()}};
    for (const PhaseResult* p : {r.asymptotic ? &*r.asymptotic : nullptr, &r.exact}) {
        if (!p) continue;
        csv += std::string(to_string(c.effect)) + "," + std::string(to_string(p->method)) + "," + num(p->phi0) + "," +
               num(p->delta_phi) + "," + num(p->ratio) + "," + csv_field(join(p->validity_flags, ';')) + "\n";
        results["phases"].push_back(report::to_json(*p));
    }
    if (c.effect == Effect::pm_q) {
        results["relative_delta_phi_rad"] = kPmQSuperpositionFactor * r.exact.delta_phi;
    }
    emit(out, o.out_file, csv);
    print_warnings(err, r.warnings);
    emit_json(o.json_file, report::make("phase", report::inputs_json(c), results, r.warnings));
    return kOk;
}

json bd_json(const BDReference& bd) {
    return {{"a_bd_cm", bd.a_bd_cm},
            {"rho_bd_cm", bd.rho_bd_cm},
            {"inv_range_bd_cm", bd.inv_range_bd_cm},
            {"mass_bd_g", bd.mass_bd_g},
            {"phi0_ab_rad", bd.phi0_ab()},
            {"implied_field_gauss", bd.implied_field_gauss()}};
}

int cmd_bound(const Options& o, ExperimentConfig c, std::ostream& out, std::ostream& err) {
    if (o.epsilon) c = c.with_value("epsilon", *o.epsilon);
    const BDReference bd;
    const auto r = bounds(c.experiment(), c.precision, bd);
    std::ostringstream csv;
    write_csv(csv, r.rows);
    emit(out, o.out_file, csv.str());
    print_warnings(err, r.warnings);
    json rows = json::array();
    for (const auto& b : r.rows) rows.push_back(report::to_json(b));
    emit_json(o.json_file,
              report::make("bound", report::inputs_json(c), {{"bounds", rows}}, r.warnings, {{"bd_reference", bd_json(bd)}}));
    return kOk;
}

int cmd_deflect(const Options& o, const ExperimentConfig& c, std::ostream& out) {
    if (c.effect != Effect::pm_q) throw InvalidInput("deflect needs an open path (effect = pm_q with x_cm, y_cm)");
    const InverseRange m = mass_for(c, o.m_inv_cm);
    ProbeSpec probe = ProbeSpec::electron(c.beam_energy_kev);
    probe.charge_statc = c.probe.charge_statc;
    const auto d = deflection::deflect(probe, c.solenoid, std::get<OpenSegment>(c.path), m, c.detector_cm, c.slit_cm);
    const double vs_threshold = std::fabs(d.equivalent_phase) / c.precision.threshold_rad();
    emit(out, o.out_file,
         "delta_p_perp_g_cm_s,alpha_rad,delta_s_perp_cm,equivalent_phase_rad,heisenberg_product_erg_s,heisenberg_ok,"
         "phase_vs_threshold\n" +
             num(d.delta_p_perp) + "," + num(d.alpha) + "," + num(d.delta_s_perp) + "," + num(d.equivalent_phase) +
             "," + num(d.heisenberg_product) + "," + (d.heisenberg_ok ? "true" : "false") + "," + num(vs_threshold) +
             "\n");
    json results = report::to_json(d);
    results["phase_vs_threshold"] = vs_threshold;
    results["m_gamma_per_cm"] = m.per_cm();
    json inputs = report::inputs_json(c);
    inputs["beam"] = {{"kinetic_kev", c.beam_energy_kev},
                      {"momentum_g_cm_s", *probe.momentum_g_cm_s},
                      {"wavelength_cm", *probe.wavelength_cm},
                      {"detector_cm", c.detector_cm},
                      {"slit_cm", c.slit_cm}};
    emit_json(o.json_file, report::make("deflect", inputs, results, {}));
    return kOk;
}

int cmd_sweep(const Options& o, const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
    if (!c.sweep) throw ConfigError(0, "sweep_param", "sweep needs sweep_param, sweep_start, sweep_stop, sweep_steps");
    const auto& sw = *c.sweep;
    std::string csv = sw.parameter + ",effect,epsilon,m_inv_asymptotic_cm,m_inv_exact_cm,m_inv_bd_scaling_cm\n";
    json rows = json::array();
    std::vector<std::string> warnings;
    for (double v : sw.values()) {
        const auto point = c.with_value(sw.parameter, v);
        std::optional<double> cells[3];
        try {
            const auto r = bounds(point.experiment(), point.precision);
            for (const auto& b : r.rows) cells[static_cast<int>(b.method)] = b.inverse_range_cm;
            for (const auto& w : r.warnings) warnings.push_back(sw.parameter + "=" + num(v) + ": " + w);
        } catch (const DomainError& e) {
            warnings.push_back(sw.parameter + "=" + num(v) + ": " + e.what());
        }
        csv += num(v) + "," + std::string(to_string(c.effect)) + "," + num(point.precision.epsilon);
        json row = {{sw.parameter, v}};
        const char* names[] = {"m_inv_asymptotic_cm", "m_inv_exact_cm", "m_inv_bd_scaling_cm"};
        for (int k = 0; k < 3; ++k) {
            csv += "," + (cells[k] ? num(*cells[k]) : std::string());
            row[names[k]] = cells[k] ? json(*cells[k]) : json(nullptr);
        }
        csv += "\n";
        rows.push_back(row);
    }
    emit(out, o.out_file, csv);
    print_warnings(err, warnings);
    emit_json(o.json_file, report::make("sweep", report::inputs_json(c), {{"rows", rows}}, warnings));
    return kOk;
}

int cmd_refs(const Options& o, std::ostream& out) {
    std::string csv = "label,m_gamma_inv_cm,m_ph_g,source\n";
    json rows = json::array();
    for (const auto& r : reference_bounds()) {
        csv += csv_field(r.label) + "," + num(r.inverse_range.range_cm()) + "," + num(r.mass.grams()) + "," +
               csv_field(r.source) + "\n";
        rows.push_back({{"label", r.label},
                        {"m_gamma_inv_cm", r.inverse_range.range_cm()},
                        {"m_ph_g", r.mass.grams()},
                        {"source", r.source}});
    }
    emit(out, o.out_file, csv);
    emit_json(o.json_file, report::make("refs", json::object(), {{"references", rows}}, {}));
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Photon-mass corrections to Aharonov-Bohm-type phases"};
    app.name(args.empty() ? "procaab" : args.front());
    app.require_subcommand(1);
    Options o;

    auto* convert = app.add_subcommand("convert", "Convert between m^-1 (cm), m (cm^-1) and grams");
    convert->add_option("--inv-cm", o.conv_inv_cm, "Range m^-1 in cm");
    convert->add_option("--per-cm", o.conv_per_cm, "Inverse range m in cm^-1");
    convert->add_option("--grams", o.conv_grams, "Photon mass in g");

    auto* fieldc = app.add_subcommand("field", "Tabulate B_z, A_phi and Pi on a log grid");
    fieldc->add_option("--a", o.a, "Solenoid radius, cm")->required();
    fieldc->add_option("--j", o.j, "Interior field, gauss")->required();
    fieldc->add_option("--m", o.field_m, "m_gamma, cm^-1");
    fieldc->add_option("--m-inv-cm", o.field_m_inv, "m_gamma^-1, cm");
    fieldc->add_option("--rho-min", o.rho_min, "Default 0.01 a");
    fieldc->add_option("--rho-max", o.rho_max, "Default max(10 a, 30/m)");
    fieldc->add_option("--n", o.n, "Grid points")->check(CLI::Range(2, 1000000));
    fieldc->add_option("--method", o.method, "closed_form | quadrature | ode_oracle");

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "Experiment config file")->required();
    };
    auto* phase = app.add_subcommand("phase", "Zero-mass phase and mass correction");
    add_config(phase);
    phase->add_option("--m-inv-cm", o.m_inv_cm, "Overrides m_gamma_inv_cm");
    auto* bound = app.add_subcommand("bound", "Invert the precision into a photon-mass bound");
    add_config(bound);
    bound->add_option("--epsilon", o.epsilon, "Overrides epsilon");
    auto* deflect = app.add_subcommand("deflect", "Leakage-field beam deflection estimate");
    add_config(deflect);
    deflect->add_option("--m-inv-cm", o.m_inv_cm, "Overrides m_gamma_inv_cm");
    auto* sweep = app.add_subcommand("sweep", "Bounds over the config's sweep range");
    add_config(sweep);
    auto* refs = app.add_subcommand("refs", "Published bounds table");

    for (auto* sub : {convert, fieldc, phase, bound, deflect, sweep, refs}) {
        sub->add_option("--out", o.out_file, "CSV output file (default stdout)");
        sub->add_option("--json", o.json_file, "JSON report file");
    }

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (convert->parsed()) return cmd_convert(o, out);
        if (fieldc->parsed()) return cmd_field(o, out);
        if (refs->parsed()) return cmd_refs(o, out);
        const auto c = load_config(o.config);
        if (phase->parsed()) return cmd_phase(o, c, out, err);
        if (bound->parsed()) return cmd_bound(o, c, out, err);
        if (deflect->parsed()) return cmd_deflect(o, c, out);
        if (sweep->parsed()) return cmd_sweep(o, c, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return kConfigError;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace procaab::cli
