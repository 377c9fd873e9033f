// Finite-difference oracle for the radial Proca equation.
//
// Unknown F = rho A_phi (flux / 2 pi) on a grid uniform in s = ln rho:
//   F'' - 2 F' - (m rho)^2 F = -j a^2 delta(s - ln a),   B_z = F' / rho^2.
// Two routes share the stencil. The direct route solves for F and is used in
// the exponential tail. The deviation route solves for G = F - F0, with F0
// the elementary massless flux function, so the O(m^2) correction is resolved
// without cancellation:
//   G'' - 2 G' - (m rho)^2 G = (m rho)^2 F0,   Delta B = G' / rho^2.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "procaab/errors.hpp"
#include "procaab/field.hpp"
#include "procaab/tridiagonal.hpp"

namespace procaab {
namespace {

struct Span {
    double rho_lo;
    double rho_hi;
    double rho_end;
};

struct Layout {
    std::size_t n_in;   // intervals inside the solenoid
    std::size_t n_out;  // intervals outside
    double step;

    Layout refined() const { return {2 * n_in, 2 * n_out, 0.5 * step}; }
};

Layout initial_layout(double a, const Span& span, double h) {
    const double sa = std::log(a);
    return {static_cast<std::size_t>(std::max(3.0, std::ceil((sa - std::log(span.rho_lo)) / h - 1e-9))),
            static_cast<std::size_t>(std::max(3.0, std::ceil((std::log(span.rho_end) - sa) / h - 1e-9))), h};
}

struct Discretization {
    double step = 0.0;
    double s0 = 0.0;        // ln rho at node 0
    std::size_t kink = 0;   // node at rho = a
    std::vector<double> rho;
    std::vector<double> a_phi;
    std::vector<double> b;   // interior-side value at the kink
    double b_kink_outer = 0.0;
};

// d ln u / ds for the regular homogeneous solution u ~ rho I_1(m rho), truncated Frobenius series.
double regular_log_slope(double x) {
    const double x2 = x * x;
    return 2.0 + (x2 / 4.0 + x2 * x2 / 48.0) / (1.0 + x2 / 8.0 + x2 * x2 / 192.0);
}

Discretization solve(const SolenoidSpec& s, double m, const Layout& layout) {
    const double a = s.radius_cm;
    const double j = s.interior_field_gauss;
    const double h = layout.step;
    const std::size_t k = layout.n_in;
    const std::size_t n = layout.n_in + layout.n_out + 1;

    Discretization d;
    d.step = h;
    d.kink = k;
    d.s0 = std::log(a) - static_cast<double>(k) * h;
    d.rho.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.rho[i] = a * std::exp((static_cast<double>(i) - static_cast<double>(k)) * h);
    }
    d.rho[k] = a;

    std::vector<double> f0(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
        f0[i] = i <= k ? 0.5 * j * d.rho[i] * d.rho[i] : 0.5 * j * a * a;
        q[i] = (m * d.rho[i]) * (m * d.rho[i]);
    }

    const double h2 = h * h;
    std::vector<double> sub(n), diag(n), sup(n);
    for (std::size_t i = 0; i < n; ++i) {
        sub[i] = 1.0 + h;
        diag[i] = -(2.0 + h2 * q[i]);
        sup[i] = 1.0 - h;
    }
    // Regularity at the inner end through a ghost node: F_{-1} = F_1 - 2 h (g F_0 + r).
    const double g = regular_log_slope(m * d.rho[0]);
    diag[0] = -(2.0 + h2 * q[0] + 2.0 * h * g * (1.0 + h));
    sup[0] = 2.0;
    sub[0] = 0.0;
    // Fixed value far beyond the requested span.
    sub[n - 1] = 0.0;
    diag[n - 1] = 1.0;
    sup[n - 1] = 0.0;

    std::vector<double> rhs_direct(n, 0.0);
    rhs_direct[k] = -j * a * a * h;
    const auto flux = solve_tridiagonal(sub, diag, sup, rhs_direct);

    std::vector<double> rhs_dev(n);
    for (std::size_t i = 0; i < n; ++i) rhs_dev[i] = h2 * q[i] * f0[i];
    // Particular solution near the axis: G_p = (j m^2 / 16) rho^4.
    const double gp = j * m * m / 16.0 * std::pow(d.rho[0], 4);
    rhs_dev[0] += 2.0 * h * (1.0 + h) * gp * (4.0 - g);
    rhs_dev[n - 1] = -f0[n - 1];
    const auto dev = solve_tridiagonal(sub, diag, sup, rhs_dev);

    auto central = [h](const std::vector<double>& v, std::size_t i) { return (v[i + 1] - v[i - 1]) / (2.0 * h); };
    auto backward = [h](const std::vector<double>& v, std::size_t i) {
        return (3.0 * v[i] - 4.0 * v[i - 1] + v[i - 2]) / (2.0 * h);
    };
    auto forward = [h](const std::vector<double>& v, std::size_t i) {
        return (-3.0 * v[i] + 4.0 * v[i + 1] - v[i + 2]) / (2.0 * h);
    };

    d.a_phi.resize(n);
    d.b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r2 = d.rho[i] * d.rho[i];
        const double b0 = i <= k ? j : 0.0;
        // The deviation route loses accuracy only where F itself has decayed.
        const bool use_dev = std::abs(flux[i]) >= 0.25 * std::abs(f0[i]);
        if (use_dev) {
            d.a_phi[i] = (f0[i] + dev[i]) / d.rho[i];
            double dg;
            if (i == 0) {
                dg = g * dev[0] + gp * (4.0 - g);
            } else if (i == n - 1) {
                dg = backward(dev, i);
            } else {
                dg = central(dev, i);
            }
            d.b[i] = b0 + dg / r2;
            if (i == k) d.b_kink_outer = dg / r2;
        } else {
            d.a_phi[i] = flux[i] / d.rho[i];
            double df;
            if (i == 0) {
                df = g * flux[0];
            } else if (i == n - 1 || i == k) {
                df = backward(flux, i);
            } else {
                df = central(flux, i);
            }
            d.b[i] = df / r2;
            if (i == k) d.b_kink_outer = forward(flux, i) / r2;
        }
    }
    return d;
}

double lagrange4(const double* xs, const double* ys, double x) {
    double out = 0.0;
    for (int i = 0; i < 4; ++i) {
        double w = 1.0;
        for (int k = 0; k < 4; ++k) {
            if (k != i) w *= (x - xs[k]) / (xs[i] - xs[k]);
        }
        out += w * ys[i];
    }
    return out;
}

// Cubic interpolation in s on one side of the kink; in log|f| when the
// stencil has a single sign, which keeps the exponential tail accurate.
double interpolate(const Discretization& d, const std::vector<double>& values, double outer_kink_value,
                   double rho) {
    const bool outer = rho >= d.rho[d.kink];
    const std::size_t lo = outer ? d.kink : 0;
    const std::size_t hi = outer ? d.rho.size() - 1 : d.kink;
    const double s = std::log(rho);
    const double t = (s - d.s0) / d.step;
    const auto base = static_cast<std::ptrdiff_t>(std::floor(t)) - 1;
    const auto first = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(base, static_cast<std::ptrdiff_t>(lo), static_cast<std::ptrdiff_t>(hi) - 3));
    double xs[4], ys[4];
    bool same_sign = true;
    for (int i = 0; i < 4; ++i) {
        const std::size_t node = first + i;
        xs[i] = d.s0 + static_cast<double>(node) * d.step;
        ys[i] = (outer && node == d.kink) ? outer_kink_value : values[node];
        if (ys[i] == 0.0 || std::signbit(ys[i]) != std::signbit(ys[0])) same_sign = false;
    }
    if (!same_sign) return lagrange4(xs, ys, s);
    const double sign = std::signbit(ys[0]) ? -1.0 : 1.0;
    double logs[4];
    for (int i = 0; i < 4; ++i) logs[i] = std::log(std::abs(ys[i]));
    return sign * std::exp(lagrange4(xs, logs, s));
}

}  // namespace

OdeOracleResult ode_oracle(const SolenoidSpec& s, InverseRange m, std::vector<double> grid,
                           const OdeOracleOptions& opts) {
    s.validate();
    if (m.massless()) throw InvalidInput("ode_oracle requires m > 0");
    if (grid.empty() || !(grid.front() > 0.0)) throw InvalidInput("ode_oracle: grid must be nonempty and positive");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw InvalidInput("ode_oracle: grid must be strictly increasing");
    }
    const double mu = m.per_cm();
    const double a = s.radius_cm;
    // The solve always covers at least [0.01 a, max(10 a, 30/m)] so both boundary
    // conditions sit where the asymptotic behaviour holds.
    Span span;
    span.rho_lo = std::min({grid.front(), 0.01 * a, 0.01 / mu});
    span.rho_hi = std::max({grid.back(), 10.0 * a, 30.0 / mu});
    span.rho_end = span.rho_hi + opts.decay_margin / mu;

    Layout layout = initial_layout(a, span, opts.initial_log_step);
    Discretization coarse = solve(s, mu, layout);
    double estimate = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= opts.max_refinements; ++level) {
        layout = layout.refined();
        Discretization fine = solve(s, mu, layout);
        estimate = 0.0;
        for (std::size_t i = 0; i < coarse.rho.size(); ++i) {
            if (coarse.rho[i] < grid.front() || coarse.rho[i] > grid.back()) continue;
            const double ref = fine.a_phi[2 * i];
            estimate = std::max(estimate, std::abs(coarse.a_phi[i] - ref) / std::abs(ref));
        }
        if (estimate <= opts.richardson_target) {
            Discretization ex = coarse;
            for (std::size_t i = 0; i < ex.rho.size(); ++i) {
                ex.a_phi[i] = (4.0 * fine.a_phi[2 * i] - coarse.a_phi[i]) / 3.0;
                ex.b[i] = (4.0 * fine.b[2 * i] - coarse.b[i]) / 3.0;
            }
            ex.b_kink_outer = (4.0 * fine.b_kink_outer - coarse.b_kink_outer) / 3.0;

            const auto& a_nodes = ex.a_phi;
            const double a_kink = a_nodes[ex.kink];
            const double m2 = mu * mu;
            const double j = s.interior_field_gauss;

            OdeOracleResult out;
            out.profile.method = ProfileMethod::ode_oracle;
            for (double rho : grid) {
                const double b = interpolate(ex, ex.b, ex.b_kink_outer, rho);
                out.profile.b_z.push_back(b);
                out.profile.a_phi.push_back(interpolate(ex, a_nodes, a_kink, rho));
                out.profile.pi_kernel.push_back(rho < a ? (j - b) / m2 : b / m2);
            }
            out.profile.grid = std::move(grid);
            out.richardson_estimate = estimate;
            out.log_step = fine.step;
            out.nodes = fine.rho.size();
            out.refinements = level;
            return out;
        }
        coarse = std::move(fine);
    }
    std::ostringstream msg;
    msg << "ode_oracle: Richardson estimate " << estimate << " above target " << opts.richardson_target
        << " after " << opts.max_refinements << " refinements (log step " << layout.step << ", "
        << coarse.rho.size() << " nodes)";
    throw ConvergenceError(msg.str());
}

}  // namespace procaab
