#pragma once

// Adaptive Gauss-Kronrod (15-point) quadrature over a list of panels.

#include <functional>
#include <span>
#include <vector>

namespace procaab::quad {

struct Options {
    double rel_tol = 1e-10;
    double abs_floor = 1e-30;
    unsigned max_depth = 18;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    double l1 = 0.0;  ///< integral of |f|, the scale the relative target applies to
};

/// Integrates f over [a, b]. Throws ConvergenceError if the error estimate
/// exceeds rel_tol * l1 + abs_floor.
Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts = {});

/// Integrates over consecutive panels [breaks[i], breaks[i+1]] and sums.
Result integrate_panels(const std::function<double(double)>& f, std::span<const double> breaks,
                        const Options& opts = {});

/// Breakpoints from lo to hi (lo > 0) whose successive ratio is at most `ratio`.
std::vector<double> geometric_breaks(double lo, double hi, double ratio = 2.0);

}  // namespace procaab::quad
