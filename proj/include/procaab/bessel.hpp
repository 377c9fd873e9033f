#pragma once

// Modified Bessel functions of the first and second kind, orders 0 and 1.
//
// I_n: power series for x <= kIAsymptoticCrossover, Hankel asymptotic
// expansion above it. K_n: Neumann-type series for x <= kKSeriesCrossover,
// Steed's continued fraction (CF2) above it. Every branch is accurate to a
// few ulp-hundreds, comfortably better than 1e-10 relative.
//
// The *_scaled variants return e^{-x} I_n(x) and e^{x} K_n(x); use them for
// products like I_1(ma) K_0(m rho) whose factors overflow individually.

namespace procaab::bessel {

inline constexpr double kIAsymptoticCrossover = 25.0;
inline constexpr double kKSeriesCrossover = 2.0;

double i0(double x);
double i1(double x);
double k0(double x);
double k1(double x);

double i0_scaled(double x);
double i1_scaled(double x);
double k0_scaled(double x);
double k1_scaled(double x);

// Cancellation-free remainders for small-argument perturbation theory.

/// I_0(x) - 1.
double i0_minus_one(double x);
/// 2 I_1(x) / x - 1.
double i1_ratio_minus_one(double x);
/// K_1(x) - 1/x.
double k1_minus_reciprocal(double x);

}  // namespace procaab::bessel
