#pragma once

#include <span>
#include <vector>

namespace procaab {

/// Thomas algorithm for a tridiagonal system. sub[0] and sup[n-1] are ignored.
/// Throws ConvergenceError on a vanishing pivot (no pivoting is attempted).
std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> sup, std::span<const double> rhs);

}  // namespace procaab
