#include "dcl/functionals.hpp"
#include "dcl/quadrature.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace dcl;
using testing::body;
using testing::profile;

TEST_SUITE("quadrature") {

TEST_CASE("spec defaults and validation") {
    CHECK(QuadratureSpec::for_order(0).nodes == 16);
    CHECK(QuadratureSpec::for_order(64).nodes == 272);
    CHECK(QuadratureSpec::for_profiles(profile(2, {{3, 0.1}}), profile(2, {{10, 0.1}})).nodes == 56);
    CHECK_THROWS_AS(QuadratureSpec({3, kTwoPi}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(QuadratureSpec({16, 0.0}).validate(), std::invalid_argument);
}

TEST_CASE("periodic_trapezoid examples") {
    CHECK(periodic_trapezoid([](double) { return 1.0; }, {32, kTwoPi}) == doctest::Approx(kTwoPi).epsilon(1e-15));
    CHECK(periodic_trapezoid([](double t) { return std::cos(t) * std::cos(t); }, {16, kTwoPi}) ==
          doctest::Approx(kPi).epsilon(1e-15));
    const auto p = profile(2.0, {{3, 0.2}});
    const double a = periodic_trapezoid(
        [&](double t) {
            const double r = eval_radial(p, t);
            return 0.5 * r * r;
        },
        {64, kTwoPi});
    CHECK(a == doctest::Approx(1.02 * kPi).epsilon(1e-14));
}

TEST_CASE("correlation_integral examples") {
    const auto disc = body(2.0);
    CHECK(correlation_integral(disc, disc, 3, Angle(1.0), {32, kTwoPi}) == doctest::Approx(18 * kPi).epsilon(1e-14));
    const auto s = body(2.0, {{2, 0.2}});
    CHECK(correlation_integral(s, s, 2, Angle(kPi), {32, kTwoPi}) == doctest::Approx(8.16 * kPi).epsilon(1e-14));
    CHECK(correlation_integral(s, s, 2, Angle(kPi / 2), {32, kTwoPi}) == doctest::Approx(7.84 * kPi).epsilon(1e-14));
}

TEST_CASE("property: half-period identity") {
    testing::Gen gen(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = gen.profile(gen.integer(0, 32));
        const int k = gen.integer(2, 8);
        const auto spec = QuadratureSpec::for_order(p.max_order());
        const double full = half_period_chord_integral(p, k, spec);
        const double direct = direct_half_period_chord_integral(p, k, spec.nodes);
        CHECK(testing::rel(full, direct) < 1e-10);
        // and against an independent Gauss-Legendre evaluation of the same integral
        const double gl = testing::gauss_integral(
            [&](double t) { return testing::rho_k(p, k, t) * testing::rho_k(p, k, t + kPi / k); }, 0.0, kPi / k, 64);
        CHECK(testing::rel(full, gl) < 1e-10);
    }
}

TEST_CASE("property: doubling the node count changes nothing") {
    testing::Gen gen(22);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = gen.profile(gen.integer(0, 64));
        const auto q = gen.profile(gen.integer(0, 64));
        const int k = gen.integer(2, 8);
        const double alpha = gen.uniform(0, kTwoPi);
        auto spec = QuadratureSpec::for_profiles(p, q);
        auto twice = spec;
        twice.nodes *= 2;
        CHECK(testing::rel(quadrature::area(p, spec), quadrature::area(p, twice)) < 1e-10);
        CHECK(testing::rel(quadrature::oriented_area(p, spec), quadrature::oriented_area(p, twice)) < 1e-10);
        CHECK(testing::rel(quadrature::dual_mixed_area_disk(p, spec), quadrature::dual_mixed_area_disk(p, twice)) <
              1e-10);
        CHECK(testing::rel(quadrature::dual_l2_distance_squared(p, q, spec),
                           quadrature::dual_l2_distance_squared(p, q, twice)) < 1e-10);
        CHECK(testing::rel(quadrature::chord_self_integral(p, k, spec), quadrature::chord_self_integral(p, k, twice)) <
              1e-10);
        CHECK(testing::rel(quadrature::chord_mixed_integral(p, q, k, alpha, spec),
                           quadrature::chord_mixed_integral(p, q, k, alpha, twice)) < 1e-10);
    }
}

}  // TEST_SUITE
