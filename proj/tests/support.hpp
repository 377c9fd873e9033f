#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <cmath>
#include <random>
#include <vector>

#include "procaab/bounds.hpp"

namespace procaab::testing {

inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

/// Random but physical geometry for the effect.
inline Experiment random_experiment(Effect effect, std::mt19937_64& rng) {
    Experiment e;
    e.effect = effect;
    e.solenoid.radius_cm = log_uniform(rng, 0.05, 5.0);
    e.solenoid.interior_field_gauss = log_uniform(rng, 1.0, 1e4);
    if (effect == Effect::tkachuk) {
        e.probe = ProbeSpec::electric_dipole(constants::kElectronCharge * constants::kBohrRadius *
                                             log_uniform(rng, 0.5, 5.0));
        e.solenoid.tkachuk_length_cm = log_uniform(rng, 0.5, 5.0);
    } else {
        e.probe = ProbeSpec::charge(constants::kElectronCharge);
    }
    if (effect == Effect::pm_q) {
        const double y = e.solenoid.radius_cm * log_uniform(rng, 1.5, 50.0);
        e.path = OpenSegment{y * log_uniform(rng, 3.0, 30.0), y};
    } else {
        e.path = ClosedLoop{e.solenoid.radius_cm * log_uniform(rng, 1.5, 100.0)};
    }
    return e;
}

/// Relative error of invert_bound(forward(m0)) against m0, with m0 drawn inside the method's window.
inline double closure_error(const Experiment& e, BoundMethod method, std::mt19937_64& rng) {
    const double ceiling = search_ceiling(e, method);
    const double top = method == BoundMethod::asymptotic ? 0.5 : 0.05;
    const InverseRange m0(ceiling * log_uniform(rng, 1e-5, top));
    const double target = phase_magnitude(e, method, m0);
    auto f = [&](InverseRange m) { return phase_magnitude(e, method, m); };
    const InverseRange m = invert_bound(f, ceiling, target);
    return std::fabs(m.per_cm() / m0.per_cm() - 1.0);
}

}  // namespace procaab::testing
