#pragma once

// Static Proca magnetostatics of an infinite solenoid (surface current at
// rho = a, uniform interior field j in the massless limit).
//
// Exact matched-Bessel solution, x = m a:
//   rho < a:  B_z = j x K1(x) I0(m rho)     A_phi = j a K1(x) I1(m rho)
//   rho >= a: B_z = -j x I1(x) K0(m rho)    A_phi = j a I1(x) K1(m rho)
// The kernel Pi(rho) is kept in its literature form; outside the solenoid
// m^2 Pi equals B_z exactly, inside it equals j - B_z (not B_z - j), so the
// interior mass correction is always taken from the exact solution.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "procaab/units.hpp"

namespace procaab {

struct SolenoidSpec {
    double radius_cm = 0.0;
    double interior_field_gauss = 0.0;  ///< j; massless flux is pi a^2 j
    std::optional<double> physical_length_cm;
    std::optional<double> tkachuk_length_cm;
    std::optional<double> magnetization_density;  ///< mu-bar, gauss cm; 4 mu-bar l = j a^2 (l defaults to 1 cm)

    /// Throws InvalidInput on any broken invariant.
    void validate() const;
    double massless_flux() const;
    /// mu-bar if set, otherwise j a^2 / (4 l). Throws InvalidInput if neither is known.
    double effective_magnetization_density() const;
};

namespace field {

/// Literature kernel Pi(rho). Requires rho > 0 and m > 0.
double pi_kernel(double rho, const SolenoidSpec& s, InverseRange m);

/// Same kernel from adaptive quadrature of its Bessel-integral definition
/// (standard-library Bessel functions, no closed-form reduction).
double pi_kernel_quadrature(double rho, const SolenoidSpec& s, InverseRange m);

double b_massless(double rho, const SolenoidSpec& s);
double b_total(double rho, const SolenoidSpec& s, InverseRange m);
/// b_total - b_massless, evaluated without cancellation for small m.
double delta_b(double rho, const SolenoidSpec& s, InverseRange m);

/// Small-mass exterior magnitude (j/2)(m a)^2 ln(2/(m rho)). The exact
/// exterior correction is negative (return flux); this is its modulus.
/// Throws DomainError unless rho > a and m rho < kAsymptoticWindow.
double delta_b_asymptotic(double rho, const SolenoidSpec& s, InverseRange m);
inline constexpr double kAsymptoticWindow = 0.1;

double a_phi_massless(double rho, const SolenoidSpec& s);
double a_phi(double rho, const SolenoidSpec& s, InverseRange m);
/// a_phi - a_phi_massless without cancellation.
double delta_a_phi(double rho, const SolenoidSpec& s, InverseRange m);
/// Leading-log small-mass correction (j/2)(m a)^2 (rho/2) ln(m rho / 2), rho > a.
double delta_a_phi_leading_log(double rho, const SolenoidSpec& s, InverseRange m);

/// Flux of b_total through the disc of radius rho, by quadrature.
double enclosed_flux(double rho, const SolenoidSpec& s, InverseRange m);
/// Flux of delta_b through the disc of radius rho, by quadrature.
double enclosed_delta_flux(double rho, const SolenoidSpec& s, InverseRange m);

/// |2 pi rho A_phi - enclosed flux| / (pi a^2 |j|).
double stokes_residual(double rho, double a_phi_value, const SolenoidSpec& s, InverseRange m);

}  // namespace field

enum class ProfileMethod { closed_form, quadrature, ode_oracle };
std::string_view to_string(ProfileMethod m);

struct FieldProfile {
    std::vector<double> grid;  ///< rho, cm, strictly increasing and > 0
    std::vector<double> b_z;
    std::vector<double> a_phi;
    std::vector<double> pi_kernel;  ///< NaN when m = 0 (kernel undefined)
    ProfileMethod method = ProfileMethod::closed_form;
};

/// n log-spaced radii from rho_min to rho_max inclusive.
std::vector<double> log_grid(double rho_min, double rho_max, std::size_t n);

FieldProfile closed_form_profile(const SolenoidSpec& s, InverseRange m, std::vector<double> grid);

/// Everything from quadrature: Pi by its integral definition, B_z from the
/// Pi relations, A_phi from the enclosed flux of closed-form B_z.
FieldProfile quadrature_profile(const SolenoidSpec& s, InverseRange m, std::vector<double> grid);

struct OdeOracleOptions {
    double richardson_target = 1e-5;
    double initial_log_step = 0.02;
    int max_refinements = 10;
    double decay_margin = 12.0;  ///< solve out to rho_max + decay_margin / m
};

struct OdeOracleResult {
    FieldProfile profile;
    double richardson_estimate = 0.0;  ///< max relative |A_h - A_{h/2}| on the requested span
    double log_step = 0.0;             ///< finest step in ln(rho)
    std::size_t nodes = 0;
    int refinements = 0;
};

/// Finite-difference solution of the radial Proca equation for A_phi on a
/// grid uniform in ln(rho) with a node pinned at rho = a; B_z by discrete
/// curl. Refines until the Richardson estimate meets its target, then
/// returns the extrapolated solution interpolated onto `grid`.
OdeOracleResult ode_oracle(const SolenoidSpec& s, InverseRange m, std::vector<double> grid,
                           const OdeOracleOptions& opts = {});

/// CSV columns rho_cm,b_gauss,a_phi_gauss_cm,pi_kernel,method[,stokes_residual].
void write_csv(std::ostream& out, const FieldProfile& p, const std::vector<double>* stokes_residuals = nullptr);

}  // namespace procaab
