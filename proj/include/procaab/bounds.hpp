#pragma once

// Photon-mass bounds from a phase-measurement precision, and the scaling
// comparisons against the closed-loop reference experiment.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "procaab/phases.hpp"

namespace procaab {

enum class Effect { ab_closed, tkachuk, pm_q };
std::string_view to_string(Effect e);
/// Throws InvalidInput for unknown names.
Effect effect_from_string(std::string_view name);

struct PrecisionSpec {
    double epsilon = 1e-3;

    void validate() const;
    double threshold_rad() const;  ///< 2 pi epsilon
};

/// The closed-loop reference: a = 0.1 cm, rho = 10 cm, m^-1 = 1.4e7 cm at epsilon = 1e-3.
struct BDReference {
    double a_bd_cm = 0.1;
    double rho_bd_cm = 10.0;
    double inv_range_bd_cm = 1.4e7;
    double mass_bd_g = 2.5e-45;
    double epsilon_bd = 1e-3;

    /// Zero-mass phase implied by the quoted bound: 2 pi eps / ratio(rho / m^-1).
    double phi0_ab() const;
    /// Interior field of an electron-probed solenoid of radius a_bd giving phi0_ab().
    double implied_field_gauss() const;
    SolenoidSpec solenoid() const;
    /// ln(2 / (m rho)) at the reference point.
    double log_factor() const;
};

enum class BoundMethod { asymptotic, exact_quadrature, bd_scaling };
std::string_view to_string(BoundMethod m);

struct BoundResult {
    Effect effect = Effect::ab_closed;
    double epsilon = 0.0;
    InverseRange m_gamma;
    double inverse_range_cm = 0.0;
    MassGrams mass;
    double ratio_vs_bd = 0.0;
    BoundMethod method = BoundMethod::asymptotic;
    /// sqrt(L(m*) / L_BD): factor by which keeping the logarithms moves a
    /// log-free scaling estimate. 1 means the logs cancel.
    double neglected_log_correction = 1.0;

    static BoundResult from_inverse_range(Effect effect, double epsilon, double inverse_range_cm, BoundMethod method,
                                          const BDReference& bd = {});
};

/// |Delta phi(m)| in radians.
using PhaseMagnitude = std::function<double(InverseRange)>;

struct InvertOptions {
    double rel_tol = 1e-9;
    int monotonicity_samples = 24;
    int max_decades = 60;
};

/// Solves |dphi(m*)| = threshold on (0, ceiling] by bisection. The bracket is
/// found by scanning down from the ceiling one decade at a time. Throws
/// DomainError if the threshold is not reached below the ceiling or the phase
/// is not increasing across the bracket.
InverseRange invert_bound(const PhaseMagnitude& dphi, double ceiling_per_cm, double threshold_rad,
                          const InvertOptions& opt = {});
InverseRange invert_bound(const PhaseMagnitude& dphi, double ceiling_per_cm, const PrecisionSpec& prec,
                          const InvertOptions& opt = {});

/// One experiment: effect, probe, solenoid and path.
struct Experiment {
    Effect effect = Effect::ab_closed;
    ProbeSpec probe;
    SolenoidSpec solenoid;
    PathSpec path;
    /// j / j_BD used by the open-path scaling comparison.
    double j_ratio = 1.0;

    void validate() const;
};

/// |Delta phi| for the experiment. The exact open-path phase includes the +/-q doubling.
double phase_magnitude(const Experiment& e, BoundMethod method, InverseRange m);
/// Upper end of the bisection bracket for the method.
double search_ceiling(const Experiment& e, BoundMethod method);

/// Tkachuk range ratio sqrt(phi0 / phi0_AB) = sqrt(d / (e l)).
double compare_tkachuk(double dipole_statc_cm, double length_cm, const BDReference& bd = {});

inline constexpr double kPmQBracketConstant = 8.0 / constants::kPi;
/// (8/pi) (a / a_BD)^2 j_ratio (x y / rho_BD^2).
double pm_q_bracket(const SolenoidSpec& s, const OpenSegment& path, double j_ratio, const BDReference& bd = {});
BoundResult compare_pm_q(const SolenoidSpec& s, const OpenSegment& path, double j_ratio = 1.0,
                         const BDReference& bd = {});

struct BoundsReport {
    std::vector<BoundResult> rows;
    std::vector<std::string> warnings;
};

/// Every applicable bound: asymptotic and exact inversions, plus the
/// reference scaling for the dipole and open-path effects. Methods that
/// cannot reach the threshold are reported as warnings; throws DomainError
/// only if none succeeds.
BoundsReport bounds(const Experiment& e, const PrecisionSpec& prec, const BDReference& bd = {});

/// Columns: effect, epsilon, m_gamma_inv_cm, m_ph_g, ratio_vs_bd, method, neglected_log_correction.
void write_csv(std::ostream& out, const std::vector<BoundResult>& rows);

}  // namespace procaab
