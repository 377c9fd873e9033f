#include "doctest.h"
#include "procaab/bessel.hpp"
#include "procaab/errors.hpp"

#include <cmath>
#include <vector>

using namespace procaab;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::vector<double> sample_points() {
    std::vector<double> xs;
    for (double e = -8.0; e <= 2.7; e += 0.05) xs.push_back(std::pow(10.0, e));
    // both sides of each branch crossover
    for (double x : {bessel::kKSeriesCrossover, bessel::kIAsymptoticCrossover}) {
        xs.push_back(x * (1 - 1e-12));
        xs.push_back(x * (1 + 1e-12));
    }
    return xs;
}

}  // namespace

TEST_CASE("I0, I1, K0, K1 agree with the standard library to 1e-10") {
    for (double x : sample_points()) {
        CAPTURE(x);
        CHECK(rel(bessel::i0(x), std::cyl_bessel_i(0.0, x)) < 1e-10);
        CHECK(rel(bessel::i1(x), std::cyl_bessel_i(1.0, x)) < 1e-10);
        if (x < 600) {
            CHECK(rel(bessel::k0(x), std::cyl_bessel_k(0.0, x)) < 1e-10);
            CHECK(rel(bessel::k1(x), std::cyl_bessel_k(1.0, x)) < 1e-10);
        }
    }
}

TEST_CASE("tabulated values") {
    // Abramowitz & Stegun table 9.8 / 9.11 entries
    CHECK(rel(bessel::i0(1.0), 1.2660658777520082) < 1e-14);
    CHECK(rel(bessel::i1(1.0), 0.5651591039924851) < 1e-14);
    CHECK(rel(bessel::k0(1.0), 0.42102443824070834) < 1e-13);
    CHECK(rel(bessel::k1(1.0), 0.6019072301972346) < 1e-13);
    CHECK(rel(bessel::k0(0.2), 1.7527038555281695) < 1e-13);
}

TEST_CASE("scaled variants stay finite where the plain ones overflow") {
    for (double x : {100.0, 700.0, 1e4, 1e6}) {
        CAPTURE(x);
        const double i0s = bessel::i0_scaled(x);
        const double k0s = bessel::k0_scaled(x);
        CHECK(std::isfinite(i0s));
        CHECK(std::isfinite(k0s));
        // leading asymptotics: e^{-x} I ~ 1/sqrt(2 pi x), e^{x} K ~ sqrt(pi / 2x)
        CHECK(rel(i0s, 1.0 / std::sqrt(2 * M_PI * x)) < 1.0 / x);
        CHECK(rel(k0s, std::sqrt(M_PI / (2 * x))) < 1.0 / x);
        // Wronskian I0 K1 + I1 K0 = 1/x survives scaling
        const double w = i0s * bessel::k1_scaled(x) + bessel::i1_scaled(x) * k0s;
        CHECK(rel(w, 1.0 / x) < 1e-12);
    }
}

TEST_CASE("Wronskian identity across all branches") {
    for (double x : sample_points()) {
        CAPTURE(x);
        const double w = bessel::i0_scaled(x) * bessel::k1_scaled(x) + bessel::i1_scaled(x) * bessel::k0_scaled(x);
        CHECK(rel(w * x, 1.0) < 1e-12);
    }
}

TEST_CASE("remainders are accurate where the direct difference cancels") {
    for (double x : {1e-9, 1e-6, 1e-3, 0.1, 1.0, 1.9}) {
        CAPTURE(x);
        // leading terms of each expansion
        const double q = x * x / 4;
        if (x < 1e-3) {
            CHECK(rel(bessel::i0_minus_one(x), q) < 1e-6);
            CHECK(rel(bessel::i1_ratio_minus_one(x), q / 2) < 1e-6);
            CHECK(rel(bessel::k1_minus_reciprocal(x), 0.5 * x * std::log(x / 2) + 0.25 * x * (2 * 0.5772156649015329 - 1)) < 1e-4);
        } else {
            CHECK(rel(bessel::i0_minus_one(x), std::cyl_bessel_i(0.0, x) - 1.0) < 1e-9);
            CHECK(rel(bessel::i1_ratio_minus_one(x), 2 * std::cyl_bessel_i(1.0, x) / x - 1.0) < 1e-9);
            CHECK(rel(bessel::k1_minus_reciprocal(x), std::cyl_bessel_k(1.0, x) - 1.0 / x) < 1e-9);
        }
    }
    CHECK(bessel::i0_minus_one(0.0) == 0.0);
}

TEST_CASE("argument guards") {
    CHECK_THROWS_AS(bessel::k0(0.0), InvalidInput);
    CHECK_THROWS_AS(bessel::k1(-1.0), InvalidInput);
    CHECK_THROWS_AS(bessel::i0(-1.0), InvalidInput);
    CHECK(bessel::i0(0.0) == 1.0);
    CHECK(bessel::i1(0.0) == 0.0);
}
