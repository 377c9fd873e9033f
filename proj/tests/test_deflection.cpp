#include <doctest.h>

#include <cmath>

#include "procaab/bounds.hpp"
#include "procaab/deflection.hpp"
#include "procaab/errors.hpp"

using namespace procaab;

namespace {

SolenoidSpec unit_solenoid(double j = 1.0) {
    SolenoidSpec s;
    s.radius_cm = 1.0;
    s.interior_field_gauss = j;
    return s;
}

const OpenSegment kPath{100.0, 10.0};

}  // namespace

TEST_CASE("massless field gives no deflection") {
    const auto e = ProbeSpec::electron(50.0);
    const auto d = deflection::deflect(e, unit_solenoid(), kPath, InverseRange());
    CHECK(d.delta_p_perp == 0.0);
    CHECK(d.alpha == 0.0);
    CHECK(d.equivalent_phase == 0.0);
    CHECK(d.heisenberg_product == 0.0);
    CHECK_FALSE(d.heisenberg_ok);
}

TEST_CASE("impulse sign and linearity") {
    const InverseRange m(1e-5);
    const double base = deflection::transverse_impulse(ProbeSpec::charge(1.0), unit_solenoid(), kPath, m);
    CHECK(base < 0.0);  // return flux outside: -sign(q j)
    CHECK(deflection::transverse_impulse(ProbeSpec::charge(1.0), unit_solenoid(-1.0), kPath, m) ==
          doctest::Approx(-base).epsilon(1e-12));
    const double both = deflection::transverse_impulse(ProbeSpec::charge(2.0), unit_solenoid(2.0), kPath, m);
    CHECK(std::fabs(both / base - 4.0) <= 1e-10);
}

TEST_CASE("impulse scales as m^2 up to the log") {
    for (double my : {1e-5, 1e-4, 1e-3}) {
        const double m = my / kPath.offset_cm;
        const auto q = ProbeSpec::charge(1.0);
        const double r = deflection::transverse_impulse(q, unit_solenoid(), kPath, InverseRange(2.0 * m)) /
                         deflection::transverse_impulse(q, unit_solenoid(), kPath, InverseRange(m));
        CHECK(r >= 3.5);
        CHECK(r <= 4.5);
    }
}

TEST_CASE("impulse matches the exterior field on a short segment") {
    const InverseRange m(1e-4);
    const OpenSegment tiny{1e-3, 10.0};
    const double dp = deflection::transverse_impulse(ProbeSpec::charge(1.0), unit_solenoid(), tiny, m);
    const double expected = 1.0 / constants::kC * 2e-3 * field::delta_b(10.0, unit_solenoid(), m);
    CHECK(dp == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("deflection identities") {
    const auto e = ProbeSpec::electron(50.0);
    const auto d = deflection::deflect(e, unit_solenoid(1e3), kPath, InverseRange(1e-6), 200.0, 2e-4);
    CHECK(d.alpha * *e.momentum_g_cm_s == doctest::Approx(d.delta_p_perp).epsilon(1e-12));
    CHECK(d.delta_s_perp == doctest::Approx(d.alpha * 200.0).epsilon(1e-15));
    CHECK(d.equivalent_phase ==
          doctest::Approx(2.0 * constants::kPi * d.alpha * 2e-4 / *e.wavelength_cm).epsilon(1e-12));
    CHECK(d.heisenberg_product == doctest::Approx(std::fabs(d.delta_p_perp * d.delta_s_perp)).epsilon(1e-15));
}

TEST_CASE("equivalent phase vanishes continuously") {
    const auto e = ProbeSpec::electron(50.0);
    double prev = HUGE_VAL;
    for (double m : {1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
        const double p = std::fabs(deflection::deflect(e, unit_solenoid(), kPath, InverseRange(m)).equivalent_phase);
        CHECK(p < prev);
        prev = p;
    }
    CHECK(prev < 1e-9);
}

TEST_CASE("heisenberg flag flips at h") {
    // product grows as j^2; choose j so that the product straddles h
    const auto e = ProbeSpec::electron(50.0);
    const InverseRange m(1e-3);
    const double p1 = deflection::deflect(e, unit_solenoid(1.0), kPath, m).heisenberg_product;
    const double j_at_h = std::sqrt(constants::kH / p1);
    CHECK_FALSE(deflection::deflect(e, unit_solenoid(j_at_h * 0.999), kPath, m).heisenberg_ok);
    CHECK(deflection::deflect(e, unit_solenoid(j_at_h * 1.001), kPath, m).heisenberg_ok);
}

TEST_CASE("argument errors") {
    const auto e = ProbeSpec::electron(50.0);
    CHECK_THROWS_AS(deflection::deflect(ProbeSpec::charge(1.0), unit_solenoid(), kPath, InverseRange(1e-5)),
                    InvalidInput);
    CHECK_THROWS_AS(deflection::deflect(e, unit_solenoid(), OpenSegment{10.0, 0.5}, InverseRange(1e-5)),
                    DomainError);
    CHECK_THROWS_AS(deflection::deflect(e, unit_solenoid(), kPath, InverseRange(1e-5), 0.0), InvalidInput);
}
