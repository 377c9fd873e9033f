#include <doctest.h>

#include <cmath>
#include <sstream>

#include "procaab/errors.hpp"
#include "support.hpp"

using namespace procaab;

namespace {

Experiment bd_experiment() {
    const BDReference bd;
    Experiment e;
    e.probe = ProbeSpec::charge(constants::kElectronCharge);
    e.solenoid = bd.solenoid();
    e.path = ClosedLoop{bd.rho_bd_cm};
    return e;
}

const BoundResult& row(const BoundsReport& r, BoundMethod m) {
    for (const auto& x : r.rows) {
        if (x.method == m) return x;
    }
    FAIL("missing bound row");
    return r.rows.front();
}

}  // namespace

TEST_CASE("precision and names") {
    CHECK(PrecisionSpec{1e-3}.threshold_rad() == doctest::Approx(2.0 * constants::kPi * 1e-3));
    CHECK_THROWS_AS(PrecisionSpec{0.0}.validate(), InvalidInput);
    CHECK_THROWS_AS(PrecisionSpec{1.0}.validate(), InvalidInput);
    for (Effect e : {Effect::ab_closed, Effect::tkachuk, Effect::pm_q}) CHECK(effect_from_string(to_string(e)) == e);
    CHECK_THROWS_AS(effect_from_string("toroid"), InvalidInput);
}

TEST_CASE("reference experiment") {
    const BDReference bd;
    CHECK(bd.phi0_ab() == doctest::Approx(1.66e9).epsilon(0.01));
    CHECK(to_grams(InverseRange::from_range_cm(bd.inv_range_bd_cm)).grams() ==
          doctest::Approx(bd.mass_bd_g).epsilon(0.05));
    const auto r = bounds(bd_experiment(), PrecisionSpec{1e-3});
    const auto& asym = row(r, BoundMethod::asymptotic);
    CHECK(asym.inverse_range_cm == doctest::Approx(1.4e7).epsilon(1e-3));
    CHECK(row(r, BoundMethod::exact_quadrature).inverse_range_cm == doctest::Approx(1.4e7).epsilon(0.005));
    CHECK(asym.neglected_log_correction == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("bound rows are self-consistent") {
    auto e = bd_experiment();
    for (const auto& r : bounds(e, PrecisionSpec{1e-3}).rows) {
        CHECK(r.ratio_vs_bd == doctest::Approx(r.inverse_range_cm / 1.4e7).epsilon(1e-12));
        CHECK(to_inverse_cm(r.mass).per_cm() == doctest::Approx(1.0 / r.inverse_range_cm).epsilon(1e-12));
    }
}

TEST_CASE("weaker precision gives a weaker bound") {
    const auto e = bd_experiment();
    double prev = 0.0;
    for (double eps : {1e-5, 1e-4, 1e-3, 1e-2}) {
        const double m = row(bounds(e, PrecisionSpec{eps}), BoundMethod::asymptotic).m_gamma.per_cm();
        CHECK(m > prev);
        prev = m;
    }
}

TEST_CASE("inversion closure on random geometries") {
    std::mt19937_64 rng(2024);
    for (Effect effect : {Effect::ab_closed, Effect::tkachuk, Effect::pm_q}) {
        for (int i = 0; i < 10; ++i) {
            const auto e = testing::random_experiment(effect, rng);
            CAPTURE(to_string(effect));
            CHECK(testing::closure_error(e, BoundMethod::asymptotic, rng) <= 1e-6);
            CHECK(testing::closure_error(e, BoundMethod::exact_quadrature, rng) <= 1e-6);
        }
    }
}

TEST_CASE("unreachable and non-monotone brackets") {
    auto weak = [](InverseRange m) { return 1e-9 * m.per_cm(); };
    CHECK_THROWS_WITH_AS(invert_bound(weak, 1.0, 1.0), doctest::Contains("unreachable in validity window"),
                         DomainError);
    auto bumpy = [](InverseRange m) { return m.per_cm() * (2.0 + std::sin(50.0 * std::log(m.per_cm()))); };
    CHECK_THROWS_AS(invert_bound(bumpy, 1.0, 0.05), DomainError);
    auto linear = [](InverseRange m) { return m.per_cm(); };
    CHECK(invert_bound(linear, 1.0, 3e-7).per_cm() == doctest::Approx(3e-7).epsilon(1e-9));
}

TEST_CASE("weak effects report warnings, not rows") {
    Experiment e = bd_experiment();
    e.solenoid.interior_field_gauss = 1e-12;  // phase far below threshold everywhere
    CHECK_THROWS_AS(bounds(e, PrecisionSpec{1e-3}), DomainError);
}

TEST_CASE("tkachuk comparison") {
    const double d = constants::kElectronCharge * constants::kBohrRadius;
    CHECK(compare_tkachuk(d, 1.0) == doctest::Approx(7.27e-5).epsilon(0.01));
    CHECK(compare_tkachuk(d, 1.0) == doctest::Approx(std::sqrt(constants::kBohrRadius)).epsilon(1e-12));
    CHECK(compare_tkachuk(d, 4.0) == doctest::Approx(compare_tkachuk(d, 1.0) / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(compare_tkachuk(d, 0.0), InvalidInput);
}

TEST_CASE("open-path comparison") {
    SolenoidSpec big;
    big.radius_cm = 500.0;
    big.interior_field_gauss = 1.0;
    const OpenSegment path{3000.0, 800.0};
    const double ratio = std::sqrt(pm_q_bracket(big, path, 1.0));
    CHECK(ratio == doctest::Approx(1.24e6).epsilon(0.01));
    CHECK(ratio == doctest::Approx(std::sqrt((8.0 / constants::kPi) * 2.5e7 * 24000.0)).epsilon(1e-12));
    const auto r = compare_pm_q(big, path);
    CHECK(r.inverse_range_cm == doctest::Approx(1.73e13).epsilon(0.01));
    CHECK(r.mass.grams() == doctest::Approx(2.0e-51).epsilon(0.25));
    CHECK(compare_pm_q(big, path, 4.0).inverse_range_cm == doctest::Approx(2.0 * r.inverse_range_cm).epsilon(1e-12));

    // self-comparison: same radius, x y = rho_BD^2
    const BDReference bd;
    SolenoidSpec same;
    same.radius_cm = bd.a_bd_cm;
    same.interior_field_gauss = 1.0;
    CHECK(pm_q_bracket(same, OpenSegment{bd.rho_bd_cm * 4.0, bd.rho_bd_cm / 4.0}, 1.0) / kPmQBracketConstant ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("open-path scaling is the rearranged asymptotic inversion") {
    // Same j as the reference; the open-path phi0 is half the closed-loop one at equal a, j.
    const BDReference bd;
    Experiment e;
    e.effect = Effect::pm_q;
    e.probe = ProbeSpec::charge(constants::kElectronCharge);
    e.solenoid = bd.solenoid();
    e.solenoid.radius_cm = 500.0;
    e.path = OpenSegment{3000.0, 800.0};
    const auto r = bounds(e, PrecisionSpec{1e-3});
    const auto& scaling = row(r, BoundMethod::bd_scaling);
    const auto& asym = row(r, BoundMethod::asymptotic);
    CHECK(asym.inverse_range_cm ==
          doctest::Approx(scaling.inverse_range_cm * std::sqrt(0.5) * asym.neglected_log_correction).epsilon(1e-8));
}

TEST_CASE("bounds csv") {
    std::ostringstream out;
    write_csv(out, bounds(bd_experiment(), PrecisionSpec{1e-3}).rows);
    const std::string s = out.str();
    CHECK(s.rfind("effect,epsilon,m_gamma_inv_cm,m_ph_g,ratio_vs_bd,method,neglected_log_correction\n", 0) == 0);
    CHECK(s.find("ab_closed,0.001,1.4e+07,") != std::string::npos);
}

TEST_CASE("experiment validation") {
    Experiment e = bd_experiment();
    e.effect = Effect::pm_q;
    CHECK_THROWS_AS(e.validate(), InvalidInput);
    e.effect = Effect::ab_closed;
    e.j_ratio = 0.0;
    CHECK_THROWS_AS(e.validate(), InvalidInput);
}
