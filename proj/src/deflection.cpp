#include "procaab/deflection.hpp"

#include <cmath>

#include "procaab/errors.hpp"
#include "procaab/quadrature.hpp"

namespace procaab::deflection {

double transverse_impulse(const ProbeSpec& probe, const SolenoidSpec& s, const OpenSegment& path, InverseRange m) {
    probe.validate();
    s.validate();
    if (!probe.charge_statc) throw InvalidInput("transverse_impulse: probe carries no charge");
    if (!(path.half_length_cm > 0.0) || !(path.offset_cm > 0.0)) {
        throw InvalidInput("transverse_impulse: x and y must be > 0");
    }
    if (!(path.offset_cm > s.radius_cm)) throw DomainError("transverse_impulse: path crosses the solenoid");
    if (m.massless()) return 0.0;

    const double y = path.offset_cm;
    std::vector<double> breaks{0.0};
    if (path.half_length_cm > y) {
        const auto tail = quad::geometric_breaks(y, path.half_length_cm);
        breaks.insert(breaks.end(), tail.begin(), tail.end());
    } else {
        breaks.push_back(path.half_length_cm);
    }
    // v dt = dl; integrand even in t
    const auto r = quad::integrate_panels(
        [&](double t) { return 2.0 * field::delta_b(std::hypot(t, y), s, m); }, breaks);
    return *probe.charge_statc / constants::kC * r.value;
}

DeflectionResult deflect(const ProbeSpec& probe, const SolenoidSpec& s, const OpenSegment& path, InverseRange m,
                         double detector_cm, double slit_cm) {
    if (!probe.momentum_g_cm_s || !probe.wavelength_cm) {
        throw InvalidInput("deflect: probe momentum and de Broglie wavelength are required");
    }
    if (!(detector_cm > 0.0) || !(slit_cm > 0.0)) throw InvalidInput("deflect: L and slit separation must be > 0");

    DeflectionResult d;
    d.delta_p_perp = transverse_impulse(probe, s, path, m);
    d.alpha = d.delta_p_perp / *probe.momentum_g_cm_s;
    d.delta_s_perp = d.alpha * detector_cm;
    const double fringe = *probe.wavelength_cm * detector_cm / slit_cm;
    d.equivalent_phase = 2.0 * constants::kPi * d.delta_s_perp / fringe;
    d.heisenberg_product = std::fabs(d.delta_p_perp * d.delta_s_perp);
    d.heisenberg_ok = d.heisenberg_product >= constants::kH;
    return d;
}

}  // namespace procaab::deflection
