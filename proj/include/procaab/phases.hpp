#pragma once

// Zero-mass phases and photon-mass corrections for AB-type effects:
// closed-loop Aharonov-Bohm, the Tkachuk electric-dipole effect, and the
// open-path phase between coherent beams of opposite charge.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "procaab/field.hpp"
#include "procaab/units.hpp"

namespace procaab {

enum class ProbeKind { charge, electric_dipole, magnetic_dipole };
std::string_view to_string(ProbeKind k);

struct ProbeSpec {
    ProbeKind kind = ProbeKind::charge;
    std::optional<double> charge_statc;
    std::optional<double> dipole_statc_cm;
    std::optional<double> speed_cm_s;
    std::optional<double> momentum_g_cm_s;
    std::optional<double> wavelength_cm;  ///< de Broglie

    void validate() const;

    static ProbeSpec charge(double q_statc);
    static ProbeSpec electric_dipole(double d_statc_cm);
    /// Electron with the given kinetic energy; fills speed, momentum and wavelength.
    static ProbeSpec electron(double kinetic_kev);
};

struct ClosedLoop {
    double radius_cm = 0.0;
};

/// Straight path along x from -half_length to +half_length at distance offset from the axis, z = 0.
struct OpenSegment {
    double half_length_cm = 0.0;
    double offset_cm = 0.0;

    double far_radius() const;
};

using PathSpec = std::variant<ClosedLoop, OpenSegment>;

/// Smallest x/y for which the x >> y asymptotics are taken at face value.
inline constexpr double kOpenPathAspectMin = 3.0;

/// The relative phase between the +q and -q beams is twice the single-beam phase.
inline constexpr double kPmQSuperpositionFactor = 2.0;

enum class PhaseMethod { asymptotic, exact_quadrature };
std::string_view to_string(PhaseMethod m);

struct PhaseResult {
    double phi0 = 0.0;       ///< rad
    double delta_phi = 0.0;  ///< rad
    double ratio = 0.0;
    PhaseMethod method = PhaseMethod::asymptotic;
    std::vector<std::string> validity_flags;

    static PhaseResult from_ratio(double phi0, double ratio, PhaseMethod method);
    static PhaseResult from_delta(double phi0, double delta_phi, PhaseMethod method);
};

/// Both evaluations of one effect. `asymptotic` is empty when the
/// leading-log form is outside its validity window.
struct PhaseReport {
    std::optional<PhaseResult> asymptotic;
    PhaseResult exact;
    std::vector<std::string> warnings;
};

/// q / (hbar c), rad per gauss cm^2.
double phase_per_flux(double charge_statc);

namespace phases {

/// (1/2) x^2 ln(2/x); x = m rho. Shared by the closed-loop effects.
double closed_loop_ratio(double m_rho);

/// Closed-loop AB phase. Throws DomainError if the loop does not enclose the solenoid.
PhaseReport ab_closed(const ProbeSpec& probe, const SolenoidSpec& s, const ClosedLoop& loop, InverseRange m);
/// Leading-log form only; throws DomainError outside m rho < 0.1.
PhaseResult ab_closed_asymptotic(const ProbeSpec& probe, const SolenoidSpec& s, const ClosedLoop& loop,
                                 InverseRange m);

/// Tkachuk phase phi0 = 4 pi d mu / (hbar c); the exact method integrates the
/// exterior m^2 Pi from a to rho.
PhaseReport tkachuk(const ProbeSpec& probe, const SolenoidSpec& s, const ClosedLoop& loop, InverseRange m);

struct LineIntegral {
    double massless = 0.0;    ///< gauss cm^2
    double massive = 0.0;
    double correction = 0.0;  ///< massive - massless, integrated directly
    double abs_error = 0.0;   ///< quadrature estimate for `correction`
};

/// Integral of A . dl along the segment, in units of hbar c / q.
LineIntegral line_integral_oracle(const OpenSegment& path, const SolenoidSpec& s, InverseRange m);

/// Closed form of the massless chord integral: -j a^2 arctan(x / y).
double massless_chord_integral(const OpenSegment& path, const SolenoidSpec& s);

/// Literature leading-log ratio -(4/pi) m^2 x y ln(m sqrt(x^2+y^2) / 2), taken as written.
double pm_q_ratio_leading_log(const OpenSegment& path, InverseRange m);

/// Open-path phase for the coherent +/-q superposition. The asymptotic result
/// reproduces the literature form with phi0 = -(q/hbar c)(pi/2) a^2 j; the
/// exact result is the single-beam line integral of the exact potential.
PhaseReport open_path_pm_q(const ProbeSpec& probe, const SolenoidSpec& s, const OpenSegment& path,
                           InverseRange m);

}  // namespace phases
}  // namespace procaab
