#pragma once

// Classical bending of a charged beam by the exterior leakage field, in the
// straight-line impulse approximation.

#include "procaab/phases.hpp"

namespace procaab {

struct DeflectionResult {
    double delta_p_perp = 0.0;       ///< g cm/s, signed
    double alpha = 0.0;              ///< rad
    double delta_s_perp = 0.0;       ///< cm at the detector
    double equivalent_phase = 0.0;   ///< rad
    double heisenberg_product = 0.0; ///< |dp ds|, erg s
    bool heisenberg_ok = false;      ///< product >= h
};

/// Beam defaults for the leakage estimate; not taken from any experiment.
struct BeamDefaults {
    static constexpr double kKineticKeV = 50.0;
    static constexpr double kDetectorCm = 100.0;
    static constexpr double kSlitCm = 1e-4;
};

namespace deflection {

/// (q/c) * integral of Delta B along the segment. Throws DomainError if the path crosses the solenoid.
double transverse_impulse(const ProbeSpec& probe, const SolenoidSpec& s, const OpenSegment& path, InverseRange m);

/// Requires probe momentum and wavelength (ProbeSpec::electron fills both).
DeflectionResult deflect(const ProbeSpec& probe, const SolenoidSpec& s, const OpenSegment& path, InverseRange m,
                         double detector_cm = BeamDefaults::kDetectorCm, double slit_cm = BeamDefaults::kSlitCm);

}  // namespace deflection
}  // namespace procaab
