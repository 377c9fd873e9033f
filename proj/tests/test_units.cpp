#include "doctest.h"
#include "procaab/errors.hpp"
#include "procaab/units.hpp"

#include <cmath>
#include <random>

using namespace procaab;

namespace {
double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST_CASE("to_grams reproduces the published range/mass pairs") {
    CHECK(rel(to_grams(InverseRange::from_range_cm(1.66e13)).grams(), 2.1e-51) < 0.03);
    CHECK(rel(to_grams(InverseRange::from_range_cm(1.4e7)).grams(), 2.5e-45) < 0.03);
    CHECK(to_grams(InverseRange{}).grams() == 0.0);
}

TEST_CASE("to_inverse_cm") {
    // hbar / (m c) with the table constants
    const double range = 1.0 / to_inverse_cm(MassGrams(2.1e-51)).per_cm();
    CHECK(rel(range, 1.0546e-27 / (2.1e-51 * 2.9979e10)) < 1e-12);
    CHECK(rel(range, 1.67e13) < 0.01);
    CHECK(to_inverse_cm(MassGrams(0.0)).per_cm() == 0.0);
    const double back = to_grams(to_inverse_cm(MassGrams(1e-48))).grams();
    CHECK(rel(back, 1e-48) < 1e-12);
}

TEST_CASE("conversions are strict inverses and monotone") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_range(-60.0, 20.0);
    double prev_m = 0.0, prev_g = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double m = std::pow(10.0, log_range(rng));
        const double g = to_grams(InverseRange(m)).grams();
        CHECK(rel(to_inverse_cm(MassGrams(g)).per_cm(), m) < 1e-12);
        if (i > 0) CHECK((m > prev_m) == (g > prev_g));
        prev_m = m;
        prev_g = g;
    }
}

TEST_CASE("uncertainty_mass") {
    const double dt = 1e10 * constants::kYearSeconds;
    const double m = uncertainty_mass(dt).grams();
    CHECK(rel(m, 6.6263e-27 / (dt * 2.9979e10 * 2.9979e10)) < 1e-4);
    CHECK(rel(m, 2.3e-65) < 0.05);
    CHECK(std::floor(std::log10(m)) == -65);
    CHECK(rel(uncertainty_mass(2 * dt).grams(), 0.5 * m) < 1e-14);
    CHECK_THROWS_AS(uncertainty_mass(0.0), InvalidInput);
    CHECK_THROWS_AS(uncertainty_mass(-1.0), InvalidInput);
}

TEST_CASE("constants table") {
    CHECK(rel(constants::kH, 2 * constants::kPi * constants::kHbar) < 1e-12);
}

TEST_CASE("reference bounds") {
    const auto& refs = reference_bounds();
    REQUIRE(refs.size() == 4);
    CHECK(find_reference_bound("toroid").inverse_range.range_cm() == doctest::Approx(1.66e13));
    CHECK(find_reference_bound("geomagnetic").inverse_range.range_cm() == doctest::Approx(5e10));
    CHECK(find_reference_bound("BD").inverse_range.range_cm() == doctest::Approx(1.4e7));
    CHECK(find_reference_bound("coulomb").inverse_range.range_cm() == doctest::Approx(3e9));
    for (const auto& r : refs) {
        CHECK_MESSAGE(rel(to_grams(r.inverse_range).grams(), r.mass.grams()) < 0.05, r.label);
    }
    CHECK_THROWS_AS(find_reference_bound("no-such-experiment"), InvalidInput);
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(InverseRange(-1.0), InvalidInput);
    CHECK_THROWS_AS(MassGrams(-1e-50), InvalidInput);
    CHECK(std::isinf(InverseRange{}.range_cm()));
}
