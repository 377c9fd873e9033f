#include "procaab/field.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "procaab/bessel.hpp"
#include "procaab/errors.hpp"
#include "procaab/quadrature.hpp"

namespace procaab {

void SolenoidSpec::validate() const {
    if (!(radius_cm > 0.0) || !std::isfinite(radius_cm)) throw InvalidInput("solenoid radius must be > 0 cm");
    if (!(interior_field_gauss != 0.0) || !std::isfinite(interior_field_gauss)) {
        throw InvalidInput("solenoid interior field j must be finite and nonzero");
    }
    if (physical_length_cm && !(*physical_length_cm > 0.0)) throw InvalidInput("solenoid length must be > 0 cm");
    if (tkachuk_length_cm && !(*tkachuk_length_cm > 0.0)) throw InvalidInput("Tkachuk length l must be > 0 cm");
    if (magnetization_density) {
        const double expected = 0.25 * interior_field_gauss * radius_cm * radius_cm / tkachuk_length_cm.value_or(1.0);
        if (std::abs(*magnetization_density - expected) > 1e-9 * std::abs(expected)) {
            throw InvalidInput("magnetization density must satisfy 4 mu l = j a^2");
        }
    }
}

double SolenoidSpec::massless_flux() const {
    return constants::kPi * radius_cm * radius_cm * interior_field_gauss;
}

double SolenoidSpec::effective_magnetization_density() const {
    if (magnetization_density) return *magnetization_density;
    if (!tkachuk_length_cm) throw InvalidInput("magnetization density needs mu-bar or the Tkachuk length l");
    return 0.25 * interior_field_gauss * radius_cm * radius_cm / *tkachuk_length_cm;
}

std::string_view to_string(ProfileMethod m) {
    switch (m) {
        case ProfileMethod::closed_form: return "closed_form";
        case ProfileMethod::quadrature: return "quadrature";
        case ProfileMethod::ode_oracle: return "ode_oracle";
    }
    return "unknown";
}

namespace field {
namespace {

void require_rho_positive(double rho, const char* op) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidInput(std::string(op) + ": rho must be > 0");
}

void require_massive(InverseRange m, const char* op) {
    if (m.massless()) throw InvalidInput(std::string(op) + ": requires m > 0 (use b_total / a_phi for m = 0)");
}

// Below this argument the perturbative remainders are used.
constexpr double kSmallArgument = bessel::kKSeriesCrossover;

}  // namespace

double b_massless(double rho, const SolenoidSpec& s) {
    return rho < s.radius_cm ? s.interior_field_gauss : 0.0;
}

double b_total(double rho, const SolenoidSpec& s, InverseRange m) {
    if (!(rho >= 0.0)) throw InvalidInput("b_total: rho must be >= 0");
    if (m.massless()) return b_massless(rho, s);
    const double j = s.interior_field_gauss;
    const double x = m.per_cm() * s.radius_cm;
    const double y = m.per_cm() * rho;
    if (rho < s.radius_cm) {
        return j * x * bessel::k1_scaled(x) * bessel::i0_scaled(y) * std::exp(y - x);
    }
    return -j * x * bessel::i1_scaled(x) * bessel::k0_scaled(y) * std::exp(x - y);
}

double delta_b(double rho, const SolenoidSpec& s, InverseRange m) {
    if (m.massless()) return 0.0;
    const double x = m.per_cm() * s.radius_cm;
    if (rho >= s.radius_cm || x > kSmallArgument) return b_total(rho, s, m) - b_massless(rho, s);
    // x K1(x) I0(y) - 1 = x r(x) (1 + e0(y)) + e0(y)
    const double y = m.per_cm() * rho;
    const double e0 = bessel::i0_minus_one(y);
    return s.interior_field_gauss * (x * bessel::k1_minus_reciprocal(x) * (1.0 + e0) + e0);
}

double pi_kernel(double rho, const SolenoidSpec& s, InverseRange m) {
    require_rho_positive(rho, "pi_kernel");
    require_massive(m, "pi_kernel");
    const double m2 = m.per_cm() * m.per_cm();
    const double db = delta_b(rho, s, m);
    return (rho < s.radius_cm ? -db : db) / m2;
}

double pi_kernel_quadrature(double rho, const SolenoidSpec& s, InverseRange m) {
    require_rho_positive(rho, "pi_kernel_quadrature");
    require_massive(m, "pi_kernel_quadrature");
    const double mu = m.per_cm();
    const double a = s.radius_cm;
    const double j = s.interior_field_gauss;
    const quad::Options opts{.rel_tol = 1e-12, .abs_floor = 0.0, .max_depth = 18};
    auto i0_weight = [mu](double t) { return std::cyl_bessel_i(0.0, mu * t) * t; };
    auto k0_weight = [mu](double t) { return std::cyl_bessel_k(0.0, mu * t) * t; };
    if (rho < a) {
        const double inner = quad::integrate(i0_weight, 0.0, rho, opts).value;
        const auto breaks = quad::geometric_breaks(rho, a);
        const double outer = quad::integrate_panels(k0_weight, breaks, opts).value;
        return j * (std::cyl_bessel_k(0.0, mu * rho) * inner + std::cyl_bessel_i(0.0, mu * rho) * outer);
    }
    const double source = quad::integrate(i0_weight, 0.0, a, opts).value;
    return -j * std::cyl_bessel_k(0.0, mu * rho) * source;
}

double delta_b_asymptotic(double rho, const SolenoidSpec& s, InverseRange m) {
    const double x = m.per_cm() * rho;
    if (!(rho > s.radius_cm) || !(x < kAsymptoticWindow) || m.massless()) {
        throw DomainError("delta_b_asymptotic: requires rho > a and 0 < m rho < 0.1 (got m rho = " +
                          std::to_string(x) + ")");
    }
    const double ma = m.per_cm() * s.radius_cm;
    return 0.5 * s.interior_field_gauss * ma * ma * std::log(2.0 / x);
}

double a_phi_massless(double rho, const SolenoidSpec& s) {
    require_rho_positive(rho, "a_phi");
    const double a = s.radius_cm;
    const double j = s.interior_field_gauss;
    return rho < a ? 0.5 * j * rho : 0.5 * j * a * a / rho;
}

double a_phi(double rho, const SolenoidSpec& s, InverseRange m) {
    require_rho_positive(rho, "a_phi");
    if (m.massless()) return a_phi_massless(rho, s);
    const double j = s.interior_field_gauss;
    const double a = s.radius_cm;
    const double x = m.per_cm() * a;
    const double y = m.per_cm() * rho;
    if (rho < a) return j * a * bessel::k1_scaled(x) * bessel::i1_scaled(y) * std::exp(y - x);
    return j * a * bessel::i1_scaled(x) * bessel::k1_scaled(y) * std::exp(x - y);
}

double delta_a_phi(double rho, const SolenoidSpec& s, InverseRange m) {
    require_rho_positive(rho, "delta_a_phi");
    if (m.massless()) return 0.0;
    const double j = s.interior_field_gauss;
    const double a = s.radius_cm;
    const double x = m.per_cm() * a;
    const double y = m.per_cm() * rho;
    if (rho < a) {
        if (x > kSmallArgument) return a_phi(rho, s, m) - a_phi_massless(rho, s);
        const double e1 = bessel::i1_ratio_minus_one(y);
        return 0.5 * j * rho * (x * bessel::k1_minus_reciprocal(x) * (1.0 + e1) + e1);
    }
    if (x > kSmallArgument || y > kSmallArgument) return a_phi(rho, s, m) - a_phi_massless(rho, s);
    const double e1 = bessel::i1_ratio_minus_one(x);
    return 0.5 * j * a * x * (e1 / y + (1.0 + e1) * bessel::k1_minus_reciprocal(y));
}

double delta_a_phi_leading_log(double rho, const SolenoidSpec& s, InverseRange m) {
    if (!(rho > s.radius_cm)) throw DomainError("delta_a_phi_leading_log: requires rho > a");
    if (m.massless()) return 0.0;
    const double ma = m.per_cm() * s.radius_cm;
    return 0.5 * s.interior_field_gauss * ma * ma * 0.5 * rho * std::log(0.5 * m.per_cm() * rho);
}

namespace {

double flux_of(const std::function<double(double)>& b, double rho, const SolenoidSpec& s) {
    if (!(rho >= 0.0)) throw InvalidInput("enclosed flux: rho must be >= 0");
    const double a = s.radius_cm;
    auto weighted = [&b](double r) { return 2.0 * constants::kPi * r * b(r); };
    const quad::Options opts{};
    double total = quad::integrate(weighted, 0.0, std::min(rho, a), opts).value;
    if (rho > a) {
        const auto breaks = quad::geometric_breaks(a, rho);
        total += quad::integrate_panels(weighted, breaks, opts).value;
    }
    return total;
}

}  // namespace

double enclosed_flux(double rho, const SolenoidSpec& s, InverseRange m) {
    return flux_of([&](double r) { return b_total(r, s, m); }, rho, s);
}

double enclosed_delta_flux(double rho, const SolenoidSpec& s, InverseRange m) {
    if (m.massless()) return 0.0;
    return flux_of([&](double r) { return delta_b(r, s, m); }, rho, s);
}

double stokes_residual(double rho, double a_phi_value, const SolenoidSpec& s, InverseRange m) {
    const double loop = 2.0 * constants::kPi * rho * a_phi_value;
    return std::abs(loop - enclosed_flux(rho, s, m)) / std::abs(s.massless_flux());
}

}  // namespace field

std::vector<double> log_grid(double rho_min, double rho_max, std::size_t n) {
    if (!(rho_min > 0.0) || !(rho_max > rho_min) || n < 2) {
        throw InvalidInput("log_grid: need 0 < rho_min < rho_max and n >= 2");
    }
    std::vector<double> g(n);
    const double ratio = std::log(rho_max / rho_min);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = rho_min * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    g.front() = rho_min;
    g.back() = rho_max;
    return g;
}

namespace {

void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw InvalidInput("profile grid is empty");
    if (!(grid.front() > 0.0)) throw InvalidInput("profile grid must be strictly positive");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw InvalidInput("profile grid must be strictly increasing");
    }
}

}  // namespace

FieldProfile closed_form_profile(const SolenoidSpec& s, InverseRange m, std::vector<double> grid) {
    s.validate();
    validate_grid(grid);
    FieldProfile p;
    p.method = ProfileMethod::closed_form;
    for (double rho : grid) {
        p.b_z.push_back(field::b_total(rho, s, m));
        p.a_phi.push_back(field::a_phi(rho, s, m));
        p.pi_kernel.push_back(m.massless() ? std::numeric_limits<double>::quiet_NaN()
                                           : field::pi_kernel(rho, s, m));
    }
    p.grid = std::move(grid);
    return p;
}

FieldProfile quadrature_profile(const SolenoidSpec& s, InverseRange m, std::vector<double> grid) {
    s.validate();
    validate_grid(grid);
    if (m.massless()) throw InvalidInput("quadrature profile requires m > 0");
    const double m2 = m.per_cm() * m.per_cm();
    const double j = s.interior_field_gauss;
    FieldProfile p;
    p.method = ProfileMethod::quadrature;
    for (double rho : grid) {
        const double pi = field::pi_kernel_quadrature(rho, s, m);
        p.pi_kernel.push_back(pi);
        p.b_z.push_back(rho < s.radius_cm ? j - m2 * pi : m2 * pi);
        p.a_phi.push_back(field::enclosed_flux(rho, s, m) / (2.0 * constants::kPi * rho));
    }
    p.grid = std::move(grid);
    return p;
}

void write_csv(std::ostream& out, const FieldProfile& p, const std::vector<double>* stokes_residuals) {
    out << "rho_cm,b_gauss,a_phi_gauss_cm,pi_kernel,method";
    if (stokes_residuals) out << ",stokes_residual";
    out << '\n';
    char buf[160];
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.6g,%.6g,", p.grid[i], p.b_z[i], p.a_phi[i], p.pi_kernel[i]);
        out << buf << to_string(p.method);
        if (stokes_residuals) {
            std::snprintf(buf, sizeof buf, ",%.6g", (*stokes_residuals)[i]);
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace procaab
