#include "procaab/bounds.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "procaab/errors.hpp"

namespace procaab {

std::string_view to_string(Effect e) {
    switch (e) {
        case Effect::ab_closed: return "ab_closed";
        case Effect::tkachuk: return "tkachuk";
        case Effect::pm_q: return "pm_q";
    }
    return "unknown";
}

Effect effect_from_string(std::string_view name) {
    for (Effect e : {Effect::ab_closed, Effect::tkachuk, Effect::pm_q}) {
        if (to_string(e) == name) return e;
    }
    throw InvalidInput("unknown effect '" + std::string(name) + "' (expected ab_closed, tkachuk or pm_q)");
}

std::string_view to_string(BoundMethod m) {
    switch (m) {
        case BoundMethod::asymptotic: return "asymptotic";
        case BoundMethod::exact_quadrature: return "exact_quadrature";
        case BoundMethod::bd_scaling: return "bd_scaling";
    }
    return "unknown";
}

void PrecisionSpec::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("precision epsilon must satisfy 0 < epsilon < 1");
}

double PrecisionSpec::threshold_rad() const { return 2.0 * constants::kPi * epsilon; }

double BDReference::phi0_ab() const {
    return 2.0 * constants::kPi * epsilon_bd / phases::closed_loop_ratio(rho_bd_cm / inv_range_bd_cm);
}

double BDReference::implied_field_gauss() const {
    return phi0_ab() / (phase_per_flux(constants::kElectronCharge) * constants::kPi * a_bd_cm * a_bd_cm);
}

SolenoidSpec BDReference::solenoid() const {
    SolenoidSpec s;
    s.radius_cm = a_bd_cm;
    s.interior_field_gauss = implied_field_gauss();
    return s;
}

double BDReference::log_factor() const { return std::log(2.0 * inv_range_bd_cm / rho_bd_cm); }

BoundResult BoundResult::from_inverse_range(Effect effect, double epsilon, double inverse_range_cm,
                                            BoundMethod method, const BDReference& bd) {
    BoundResult r;
    r.effect = effect;
    r.epsilon = epsilon;
    r.m_gamma = InverseRange::from_range_cm(inverse_range_cm);
    r.inverse_range_cm = inverse_range_cm;
    r.mass = to_grams(r.m_gamma);
    r.ratio_vs_bd = inverse_range_cm / bd.inv_range_bd_cm;
    r.method = method;
    return r;
}

InverseRange invert_bound(const PhaseMagnitude& dphi, double ceiling_per_cm, double threshold_rad,
                          const InvertOptions& opt) {
    if (!(ceiling_per_cm > 0.0) || !(threshold_rad > 0.0)) {
        throw InvalidInput("invert_bound: ceiling and threshold must be > 0");
    }
    auto excess = [&](double m) { return dphi(InverseRange(m)) - threshold_rad; };
    if (excess(ceiling_per_cm) < 0.0) {
        std::ostringstream msg;
        msg << "bound unreachable in validity window: |dphi| < " << threshold_rad << " rad at the ceiling m = "
            << ceiling_per_cm << " cm^-1";
        throw DomainError(msg.str());
    }
    double hi = ceiling_per_cm;
    double lo = ceiling_per_cm / 10.0;
    int decades = 1;
    while (excess(lo) >= 0.0) {
        if (++decades > opt.max_decades) throw DomainError("invert_bound: threshold reached at vanishing mass");
        hi = lo;
        lo /= 10.0;
    }
    double prev = dphi(InverseRange(lo));
    for (int i = 1; i <= opt.monotonicity_samples; ++i) {
        const double m = lo * std::pow(hi / lo, static_cast<double>(i) / opt.monotonicity_samples);
        const double v = dphi(InverseRange(m));
        if (!(v > prev)) {
            std::ostringstream msg;
            msg << "invert_bound: phase is not increasing on [" << lo << ", " << hi << "] cm^-1";
            throw DomainError(msg.str());
        }
        prev = v;
    }
    auto done = [&](double a, double b) { return std::fabs(b - a) <= opt.rel_tol * std::fmin(a, b); };
    const auto [left, right] = boost::math::tools::bisect(excess, lo, hi, done);
    const double m_star = 0.5 * (left + right);
    const double residual = std::fabs(excess(m_star));
    if (residual > 1e-6 * threshold_rad) {
        std::ostringstream msg;
        msg << "invert_bound: forward residual " << residual << " rad exceeds tolerance";
        throw ConvergenceError(msg.str());
    }
    return InverseRange(m_star);
}

InverseRange invert_bound(const PhaseMagnitude& dphi, double ceiling_per_cm, const PrecisionSpec& prec,
                          const InvertOptions& opt) {
    prec.validate();
    return invert_bound(dphi, ceiling_per_cm, prec.threshold_rad(), opt);
}

void Experiment::validate() const {
    probe.validate();
    solenoid.validate();
    if (!(j_ratio > 0.0)) throw InvalidInput("j_ratio must be > 0");
    const bool open = std::holds_alternative<OpenSegment>(path);
    if ((effect == Effect::pm_q) != open) {
        throw InvalidInput(std::string(to_string(effect)) + " requires " + (open ? "a closed loop" : "an open segment"));
    }
}

namespace {

// Length that sets the asymptotic window: loop radius, or the far end of the segment.
double characteristic_length(const Experiment& e) {
    if (const auto* loop = std::get_if<ClosedLoop>(&e.path)) return loop->radius_cm;
    return std::get<OpenSegment>(e.path).far_radius();
}

double log_factor(const Experiment& e, InverseRange m) {
    const double x = m.per_cm() * characteristic_length(e);
    return e.effect == Effect::pm_q ? std::fabs(std::log(0.5 * x)) : std::log(2.0 / x);
}

}  // namespace

double search_ceiling(const Experiment& e, BoundMethod method) {
    const double len = characteristic_length(e);
    switch (method) {
        case BoundMethod::asymptotic: return field::kAsymptoticWindow / len * (1.0 - 1e-12);
        case BoundMethod::exact_quadrature:
            switch (e.effect) {
                case Effect::ab_closed: return 30.0 / len;
                // exterior-only flux turns over once the loop sees the screened tail
                case Effect::tkachuk: return 1.0 / len;
                case Effect::pm_q: return 30.0 / e.solenoid.radius_cm;
            }
            break;
        case BoundMethod::bd_scaling: break;
    }
    throw InvalidInput("no search ceiling for method " + std::string(to_string(method)));
}

double phase_magnitude(const Experiment& e, BoundMethod method, InverseRange m) {
    const bool asym = method == BoundMethod::asymptotic;
    if (!asym && method != BoundMethod::exact_quadrature) {
        throw InvalidInput("phase_magnitude: method must be asymptotic or exact_quadrature");
    }
    switch (e.effect) {
        case Effect::ab_closed: {
            const auto& loop = std::get<ClosedLoop>(e.path);
            if (asym) return std::fabs(phases::ab_closed_asymptotic(e.probe, e.solenoid, loop, m).delta_phi);
            return std::fabs(phases::ab_closed(e.probe, e.solenoid, loop, m).exact.delta_phi);
        }
        case Effect::tkachuk: {
            const auto r = phases::tkachuk(e.probe, e.solenoid, std::get<ClosedLoop>(e.path), m);
            if (asym) {
                if (!r.asymptotic) throw DomainError("tkachuk asymptotic: outside validity window");
                return std::fabs(r.asymptotic->delta_phi);
            }
            return std::fabs(r.exact.delta_phi);
        }
        case Effect::pm_q: {
            const auto& seg = std::get<OpenSegment>(e.path);
            if (asym) {
                const double phi0 = 0.5 * constants::kPi * phase_per_flux(*e.probe.charge_statc) *
                                    e.solenoid.radius_cm * e.solenoid.radius_cm * e.solenoid.interior_field_gauss;
                return std::fabs(phi0 * phases::pm_q_ratio_leading_log(seg, m));
            }
            const auto line = phases::line_integral_oracle(seg, e.solenoid, m);
            return kPmQSuperpositionFactor * std::fabs(phase_per_flux(*e.probe.charge_statc) * line.correction);
        }
    }
    throw InvalidInput("unknown effect");
}

double compare_tkachuk(double dipole_statc_cm, double length_cm, const BDReference&) {
    if (!(dipole_statc_cm > 0.0) || !(length_cm > 0.0)) throw InvalidInput("compare_tkachuk: d and l must be > 0");
    return std::sqrt(dipole_statc_cm / (constants::kElectronCharge * length_cm));
}

double pm_q_bracket(const SolenoidSpec& s, const OpenSegment& path, double j_ratio, const BDReference& bd) {
    s.validate();
    if (!(path.half_length_cm > 0.0) || !(path.offset_cm > 0.0) || !(j_ratio > 0.0)) {
        throw InvalidInput("pm_q_bracket: x, y and j_ratio must be > 0");
    }
    const double a = s.radius_cm / bd.a_bd_cm;
    return kPmQBracketConstant * a * a * j_ratio * path.half_length_cm * path.offset_cm /
           (bd.rho_bd_cm * bd.rho_bd_cm);
}

BoundResult compare_pm_q(const SolenoidSpec& s, const OpenSegment& path, double j_ratio, const BDReference& bd) {
    const double inv = bd.inv_range_bd_cm * std::sqrt(pm_q_bracket(s, path, j_ratio, bd));
    auto r = BoundResult::from_inverse_range(Effect::pm_q, bd.epsilon_bd, inv, BoundMethod::bd_scaling, bd);
    r.neglected_log_correction =
        std::sqrt(std::fabs(std::log(0.5 * r.m_gamma.per_cm() * path.far_radius())) / bd.log_factor());
    return r;
}

BoundsReport bounds(const Experiment& e, const PrecisionSpec& prec, const BDReference& bd) {
    e.validate();
    prec.validate();
    BoundsReport report;

    auto finish = [&](BoundResult r) {
        r.neglected_log_correction = std::sqrt(log_factor(e, r.m_gamma) / bd.log_factor());
        report.rows.push_back(r);
    };

    // the reference scaling assumes the reference precision; rescale for others
    const double eps_scale = std::sqrt(bd.epsilon_bd / prec.epsilon);
    if (e.effect == Effect::tkachuk) {
        const double l = e.solenoid.tkachuk_length_cm.value_or(1.0);
        const double ratio = compare_tkachuk(*e.probe.dipole_statc_cm, l, bd);
        finish(BoundResult::from_inverse_range(e.effect, prec.epsilon, bd.inv_range_bd_cm * ratio * eps_scale,
                                               BoundMethod::bd_scaling, bd));
    } else if (e.effect == Effect::pm_q) {
        const auto base = compare_pm_q(e.solenoid, std::get<OpenSegment>(e.path), e.j_ratio, bd);
        finish(BoundResult::from_inverse_range(e.effect, prec.epsilon, base.inverse_range_cm * eps_scale,
                                               BoundMethod::bd_scaling, bd));
    }

    for (BoundMethod method : {BoundMethod::asymptotic, BoundMethod::exact_quadrature}) {
        try {
            const auto m = invert_bound([&](InverseRange mm) { return phase_magnitude(e, method, mm); },
                                        search_ceiling(e, method), prec);
            finish(BoundResult::from_inverse_range(e.effect, prec.epsilon, m.range_cm(), method, bd));
        } catch (const DomainError& err) {
            report.warnings.push_back(std::string(to_string(method)) + ": " + err.what());
        }
    }
    if (report.rows.empty()) {
        std::string msg = "no bound for " + std::string(to_string(e.effect));
        for (const auto& w : report.warnings) msg += "; " + w;
        throw DomainError(msg);
    }
    return report;
}

void write_csv(std::ostream& out, const std::vector<BoundResult>& rows) {
    out << "effect,epsilon,m_gamma_inv_cm,m_ph_g,ratio_vs_bd,method,neglected_log_correction\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%.6g,%.6g,%.6g,%.6g,%s,%.6g\n", std::string(to_string(r.effect)).c_str(),
                      r.epsilon, r.inverse_range_cm, r.mass.grams(), r.ratio_vs_bd,
                      std::string(to_string(r.method)).c_str(), r.neglected_log_correction);
        out << buf;
    }
}

}  // namespace procaab
