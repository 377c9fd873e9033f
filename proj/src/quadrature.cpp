#include "procaab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "procaab/errors.hpp"

namespace procaab::quad {

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts) {
    Result r;
    if (a == b) return r;
    r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, opts.max_depth, opts.rel_tol, &r.abs_error, &r.l1);
    r.l1 = std::abs(r.l1);
    if (!std::isfinite(r.value) || r.abs_error > opts.rel_tol * r.l1 + opts.abs_floor) {
        std::ostringstream msg;
        msg << "quadrature on [" << a << ", " << b << "] did not converge: estimate " << r.abs_error
            << " vs target " << opts.rel_tol * r.l1 + opts.abs_floor;
        throw ConvergenceError(msg.str());
    }
    return r;
}

Result integrate_panels(const std::function<double(double)>& f, std::span<const double> breaks,
                        const Options& opts) {
    Result total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const auto r = integrate(f, breaks[i], breaks[i + 1], opts);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.l1 += r.l1;
    }
    return total;
}

std::vector<double> geometric_breaks(double lo, double hi, double ratio) {
    if (!(lo > 0.0) || !(hi >= lo) || !(ratio > 1.0)) {
        throw InvalidInput("geometric_breaks: need 0 < lo <= hi and ratio > 1");
    }
    const auto n = static_cast<int>(std::ceil(std::log(hi / lo) / std::log(ratio)));
    std::vector<double> out;
    out.reserve(n + 1);
    out.push_back(lo);
    for (int i = 1; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
    if (hi > lo) out.push_back(hi);
    return out;
}

}  // namespace procaab::quad
