#include "procaab/phases.hpp"

#include <cmath>
#include <sstream>

#include "procaab/errors.hpp"
#include "procaab/quadrature.hpp"

namespace procaab {

std::string_view to_string(ProbeKind k) {
    switch (k) {
        case ProbeKind::charge: return "charge";
        case ProbeKind::electric_dipole: return "electric_dipole";
        case ProbeKind::magnetic_dipole: return "magnetic_dipole";
    }
    return "unknown";
}

std::string_view to_string(PhaseMethod m) {
    return m == PhaseMethod::asymptotic ? "asymptotic" : "exact_quadrature";
}

void ProbeSpec::validate() const {
    auto positive = [](const std::optional<double>& v) { return v && *v > 0.0 && std::isfinite(*v); };
    switch (kind) {
        case ProbeKind::charge:
            if (!positive(charge_statc)) throw InvalidInput("charge probe requires q > 0 statC");
            break;
        case ProbeKind::electric_dipole:
        case ProbeKind::magnetic_dipole:
            if (!positive(dipole_statc_cm)) throw InvalidInput("dipole probe requires d > 0");
            break;
    }
    if (speed_cm_s && !(*speed_cm_s > 0.0 && *speed_cm_s < constants::kC)) {
        throw InvalidInput("probe speed must satisfy 0 < v < c");
    }
    if (momentum_g_cm_s && !positive(momentum_g_cm_s)) throw InvalidInput("probe momentum must be > 0");
    if (wavelength_cm && !positive(wavelength_cm)) throw InvalidInput("probe wavelength must be > 0");
}

ProbeSpec ProbeSpec::charge(double q_statc) {
    ProbeSpec p;
    p.kind = ProbeKind::charge;
    p.charge_statc = q_statc;
    p.validate();
    return p;
}

ProbeSpec ProbeSpec::electric_dipole(double d_statc_cm) {
    ProbeSpec p;
    p.kind = ProbeKind::electric_dipole;
    p.dipole_statc_cm = d_statc_cm;
    p.validate();
    return p;
}

ProbeSpec ProbeSpec::electron(double kinetic_kev) {
    if (!(kinetic_kev > 0.0)) throw InvalidInput("electron kinetic energy must be > 0 keV");
    const double t = kinetic_kev * constants::kErgPerKeV;
    const double rest = constants::kElectronMass * constants::kC * constants::kC;
    const double pc = std::sqrt(t * t + 2.0 * t * rest);
    ProbeSpec p = charge(constants::kElectronCharge);
    p.momentum_g_cm_s = pc / constants::kC;
    p.speed_cm_s = pc * constants::kC / (t + rest);
    p.wavelength_cm = constants::kH / *p.momentum_g_cm_s;
    return p;
}

double OpenSegment::far_radius() const { return std::hypot(half_length_cm, offset_cm); }

PhaseResult PhaseResult::from_ratio(double phi0, double ratio, PhaseMethod method) {
    return {phi0, ratio * phi0, ratio, method, {}};
}

PhaseResult PhaseResult::from_delta(double phi0, double delta_phi, PhaseMethod method) {
    return {phi0, delta_phi, delta_phi / phi0, method, {}};
}

double phase_per_flux(double charge_statc) {
    return charge_statc / (constants::kHbar * constants::kC);
}

namespace phases {
namespace {

void require_kind(const ProbeSpec& p, ProbeKind kind, const char* op) {
    p.validate();
    if (p.kind != kind) {
        throw InvalidInput(std::string(op) + ": probe must be of kind " + std::string(to_string(kind)));
    }
}

void require_enclosing(const SolenoidSpec& s, const ClosedLoop& loop) {
    s.validate();
    if (!(loop.radius_cm > s.radius_cm)) {
        throw DomainError("closed loop of radius " + std::to_string(loop.radius_cm) +
                          " cm does not enclose the solenoid of radius " + std::to_string(s.radius_cm) + " cm");
    }
}

std::string window_flag(double x) {
    std::ostringstream out;
    out << "outside asymptotic window (m*length = " << x << " >= " << field::kAsymptoticWindow << ")";
    return out.str();
}

}  // namespace

double closed_loop_ratio(double m_rho) {
    if (!(m_rho >= 0.0)) throw InvalidInput("closed_loop_ratio: m rho must be >= 0");
    if (m_rho == 0.0) return 0.0;
    return 0.5 * m_rho * m_rho * std::log(2.0 / m_rho);
}

PhaseResult ab_closed_asymptotic(const ProbeSpec& probe, const SolenoidSpec& s, const ClosedLoop& loop,
                                 InverseRange m) {
    require_kind(probe, ProbeKind::charge, "ab_closed");
    require_enclosing(s, loop);
    const double x = m.per_cm() * loop.radius_cm;
    if (!(x < field::kAsymptoticWindow)) throw DomainError("ab_closed asymptotic: " + window_flag(x));
    const double phi0 = phase_per_flux(*probe.charge_statc) * s.massless_flux();
    return PhaseResult::from_ratio(phi0, closed_loop_ratio(x), PhaseMethod::asymptotic);
}

PhaseReport ab_closed(const ProbeSpec& probe, const SolenoidSpec& s, const ClosedLoop& loop, InverseRange m) {
    require_kind(probe, ProbeKind::charge, "ab_closed");
    require_enclosing(s, loop);
    const double k = phase_per_flux(*probe.charge_statc);
    PhaseReport report;
    report.exact = PhaseResult::from_delta(k * s.massless_flux(), k * field::enclosed_delta_flux(loop.radius_cm, s, m),
                                           PhaseMethod::exact_quadrature);
    const double x = m.per_cm() * loop.radius_cm;
    if (x < field::kAsymptoticWindow) {
        report.asymptotic = ab_closed_asymptotic(probe, s, loop, m);
    } else {
        report.warnings.push_back("asymptotic: " + window_flag(x));
    }
    return report;
}

PhaseReport tkachuk(const ProbeSpec& probe, const SolenoidSpec& s, const ClosedLoop& loop, InverseRange m) {
    require_kind(probe, ProbeKind::electric_dipole, "tkachuk");
    require_enclosing(s, loop);
    const double d = *probe.dipole_statc_cm;
    const double mu = s.effective_magnetization_density();
    const double phi0 = 4.0 * constants::kPi * d * mu / (constants::kHbar * constants::kC);

    PhaseReport report;
    double exterior = 0.0;
    if (!m.massless()) {
        // m^2 Pi = Delta B outside the solenoid
        // per-unit-length field gradient j-bar = 4 mu-bar / a^2
        SolenoidSpec gradient = s;
        gradient.interior_field_gauss = 4.0 * mu / (s.radius_cm * s.radius_cm);
        gradient.magnetization_density.reset();
        auto integrand = [&](double r) { return field::delta_b(r, gradient, m) * r; };
        const auto breaks = quad::geometric_breaks(s.radius_cm, loop.radius_cm);
        exterior = quad::integrate_panels(integrand, breaks).value;
    }
    const double delta = 2.0 * constants::kPi * d / (constants::kHbar * constants::kC) * exterior;
    report.exact = PhaseResult::from_delta(phi0, delta, PhaseMethod::exact_quadrature);
    const double x = m.per_cm() * loop.radius_cm;
    if (x < field::kAsymptoticWindow) {
        report.asymptotic = PhaseResult::from_ratio(phi0, closed_loop_ratio(x), PhaseMethod::asymptotic);
    } else {
        report.warnings.push_back("asymptotic: " + window_flag(x));
    }
    return report;
}

double massless_chord_integral(const OpenSegment& path, const SolenoidSpec& s) {
    const double a = s.radius_cm;
    return -s.interior_field_gauss * a * a * std::atan(path.half_length_cm / path.offset_cm);
}

namespace {

void require_exterior_segment(const SolenoidSpec& s, const OpenSegment& path) {
    s.validate();
    if (!(path.half_length_cm > 0.0) || !(path.offset_cm > 0.0)) {
        throw InvalidInput("open segment requires x > 0 and y > 0");
    }
    if (!(path.offset_cm > s.radius_cm)) {
        throw DomainError("open segment at y = " + std::to_string(path.offset_cm) +
                          " cm crosses the solenoid of radius " + std::to_string(s.radius_cm) + " cm");
    }
}

}  // namespace

LineIntegral line_integral_oracle(const OpenSegment& path, const SolenoidSpec& s, InverseRange m) {
    require_exterior_segment(s, path);
    const double y = path.offset_cm;
    const double x = path.half_length_cm;
    // tangential component along +x of the azimuthal field at (t, y): -A_phi y / rho; even in t
    auto tangential = [y](double a_phi_value, double rho) { return -a_phi_value * y / rho; };
    std::vector<double> breaks{0.0};
    if (x > y) {
        const auto tail = quad::geometric_breaks(y, x);
        breaks.insert(breaks.end(), tail.begin(), tail.end());
    } else {
        breaks.push_back(x);
    }
    LineIntegral out;
    auto on_path = [&](auto&& potential, const quad::Options& opts) {
        return quad::integrate_panels(
            [&](double t) {
                const double rho = std::hypot(t, y);
                return 2.0 * tangential(potential(rho), rho);
            },
            breaks, opts);
    };
    const quad::Options strict;
    out.massless = on_path([&](double rho) { return field::a_phi_massless(rho, s); }, strict).value;
    // deep in the screened regime the massive integral is exponentially small;
    // judge its accuracy against the massless scale
    quad::Options screened;
    screened.abs_floor = strict.rel_tol * std::fabs(out.massless) / static_cast<double>(breaks.size());
    out.massive = on_path([&](double rho) { return field::a_phi(rho, s, m); }, screened).value;
    const auto corr = on_path([&](double rho) { return field::delta_a_phi(rho, s, m); }, strict);
    out.correction = corr.value;
    out.abs_error = corr.abs_error;
    return out;
}

double pm_q_ratio_leading_log(const OpenSegment& path, InverseRange m) {
    if (m.massless()) return 0.0;
    const double mu = m.per_cm();
    return -(4.0 / constants::kPi) * mu * mu * path.half_length_cm * path.offset_cm *
           std::log(0.5 * mu * path.far_radius());
}

PhaseReport open_path_pm_q(const ProbeSpec& probe, const SolenoidSpec& s, const OpenSegment& path, InverseRange m) {
    require_kind(probe, ProbeKind::charge, "open_path_pm_q");
    require_exterior_segment(s, path);
    const double k = phase_per_flux(*probe.charge_statc);
    const double a = s.radius_cm;

    PhaseReport report;
    const auto line = line_integral_oracle(path, s, m);
    report.exact = PhaseResult::from_delta(k * line.massless, k * line.correction, PhaseMethod::exact_quadrature);
    report.exact.validity_flags.push_back("single_beam");

    const double phi0 = -k * 0.5 * constants::kPi * a * a * s.interior_field_gauss;
    auto asym = PhaseResult::from_ratio(phi0, pm_q_ratio_leading_log(path, m), PhaseMethod::asymptotic);
    if (path.half_length_cm < kOpenPathAspectMin * path.offset_cm) {
        asym.validity_flags.push_back("advisory: x < 3y");
        report.warnings.push_back("asymptotic result is advisory: x/y = " +
                                  std::to_string(path.half_length_cm / path.offset_cm) + " < 3");
    }
    const double x = m.per_cm() * path.far_radius();
    if (!(x < field::kAsymptoticWindow)) {
        asym.validity_flags.push_back("advisory: " + window_flag(x));
        report.warnings.push_back("asymptotic: " + window_flag(x));
    }
    report.asymptotic = asym;
    return report;
}

}  // namespace phases
}  // namespace procaab
