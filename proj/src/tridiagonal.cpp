#include "procaab/tridiagonal.hpp"

#include <cmath>
#include <limits>

#include "procaab/errors.hpp"

namespace procaab {

std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> sup, std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || sub.size() != n || sup.size() != n || rhs.size() != n) {
        throw InvalidInput("solve_tridiagonal: band sizes disagree");
    }
    std::vector<double> c(n), x(n);
    auto pivot_check = [](double p, std::size_t row) {
        if (!(std::abs(p) > std::numeric_limits<double>::min())) {
            throw ConvergenceError("solve_tridiagonal: zero pivot at row " + std::to_string(row));
        }
    };
    pivot_check(diag[0], 0);
    c[0] = sup[0] / diag[0];
    x[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double p = diag[i] - sub[i] * c[i - 1];
        pivot_check(p, i);
        c[i] = (i + 1 < n) ? sup[i] / p : 0.0;
        x[i] = (rhs[i] - sub[i] * x[i - 1]) / p;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

}  // namespace procaab
