#include "dcl/harmonic.hpp"
#include "support.hpp"

#include <doctest.h>

#include <limits>

using namespace dcl;
using testing::body;
using testing::profile;

TEST_SUITE("harmonic") {

TEST_CASE("angle canonicalization") {
    CHECK(Angle(0.0).value() == 0.0);
    CHECK(Angle(kTwoPi).value() == doctest::Approx(0.0));
    CHECK(Angle(-kPi / 2).value() == doctest::Approx(1.5 * kPi));
    CHECK(Angle(7 * kPi).value() == doctest::Approx(kPi));
    CHECK(Angle(-1e-300).value() < kTwoPi);
    CHECK_THROWS_AS(Angle(std::nan("")), std::invalid_argument);
}

TEST_CASE("profile rejects non-finite coefficients") {
    CHECK_THROWS_AS(FourierProfile(std::numeric_limits<double>::infinity(), {}), std::invalid_argument);
    CHECK_THROWS_AS(FourierProfile(2.0, {{0.1, NAN}}), std::invalid_argument);
    CHECK(profile(2.0).harmonic(5) == Harmonic{});
}

TEST_CASE("eval_radial examples") {
    CHECK(eval_radial(profile(2.0), 1.234) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_radial(profile(2.0, {{1, 0.3}}), 0.0) == doctest::Approx(1.3).epsilon(1e-15));
    CHECK(std::abs(eval_radial(profile(2.0, {{3, 0.2}}), kPi / 6) - 1.0) < 1e-15);
}

TEST_CASE("evaluation is 2pi periodic") {
    testing::Gen gen(11);
    for (int i = 0; i < 20; ++i) {
        const auto p = gen.profile(16);
        const double t = gen.uniform(0, kTwoPi);
        CHECK(eval_radial(p, Angle(t + kTwoPi)) == doctest::Approx(eval_radial(p, Angle(t))).epsilon(1e-13));
    }
}

TEST_CASE("recurrence matches direct trigonometric evaluation") {
    testing::Gen gen(12);
    for (int i = 0; i < 50; ++i) {
        const auto p = gen.raw(32);
        const double t = gen.uniform(0, kTwoPi);
        CHECK(std::abs(eval_radial(p, t) - testing::rho(p, t)) < 1e-12);
        CHECK(std::abs(eval_radial_derivative(p, t) - testing::rho_prime(p, t)) < 1e-10);
    }
}

TEST_CASE("eval_radial_derivative examples") {
    CHECK(eval_radial_derivative(profile(2.0), 0.7) == 0.0);
    CHECK(eval_radial_derivative(profile(2.0, {{1, 0.0, 0.5}}), 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    const auto p = profile(2.0, {{3, 0.2}});
    CHECK(std::abs(eval_radial_derivative(p, 0.0)) < 1e-15);
    const double h = 1e-5;
    const double fd = (eval_radial(p, h) - eval_radial(p, -h)) / (2 * h);
    CHECK(std::abs(fd - eval_radial_derivative(p, 0.0)) < 1e-8);
}

TEST_CASE("property: derivative agrees with centered differences") {
    testing::Gen gen(13);
    const double h = 1e-5;
    for (int i = 0; i < 200; ++i) {
        const auto p = gen.raw(gen.integer(0, 32));
        const double t = gen.uniform(0, kTwoPi);
        const double fd = (eval_radial(p, t + h) - eval_radial(p, t - h)) / (2 * h);
        // truncation h^2/6 |rho'''| plus cancellation in the difference
        double third = 0.0;
        for (int n = 1; n <= p.max_order(); ++n) {
            third += double(n) * n * n * (std::abs(p.harmonic(n).a) + std::abs(p.harmonic(n).b));
        }
        CHECK(std::abs(fd - eval_radial_derivative(p, t)) < h * h / 6 * third + 2e-9);
    }
}

TEST_CASE("k_order_radial examples") {
    CHECK(k_order_radial(profile(2.0), 4, 0.3) == doctest::Approx(4.0).epsilon(1e-15));
    for (double t : {0.0, 0.4, 2.0, 5.5}) {
        CHECK(k_order_radial(profile(2.0, {{1, 0.3}}), 2, t) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(k_order_radial_filtered(profile(2.0, {{1, 0.3}}), 2, t) == doctest::Approx(2.0).epsilon(1e-14));
    }
    CHECK(k_order_radial(profile(2.0, {{2, 0.2}}), 2, 0.0) == doctest::Approx(2.4).epsilon(1e-14));
    CHECK(k_order_radial_filtered(profile(2.0, {{2, 0.2}}), 2, 0.0) == doctest::Approx(2.4).epsilon(1e-14));
    CHECK_THROWS_AS(k_order_radial(profile(2.0), 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(k_order_radial_filtered(profile(2.0), 0, 0.0), std::invalid_argument);
}

TEST_CASE("property: summation and filtered paths agree") {
    testing::Gen gen(14);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = gen.profile(gen.integer(1, 40));
        for (int k = 2; k <= 8; ++k) {
            for (int i = 0; i < 100; ++i) {
                const double t = gen.uniform(0, kTwoPi);
                REQUIRE(std::abs(k_order_radial(p, k, t) - k_order_radial_filtered(p, k, t)) < 1e-10);
            }
        }
    }
}

TEST_CASE("property: rho_k has period 2pi/k") {
    testing::Gen gen(15);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = gen.profile(24);
        const int k = gen.integer(2, 8);
        const double t = gen.uniform(0, kTwoPi);
        CHECK(std::abs(k_order_radial(p, k, t) - k_order_radial(p, k, t + kTwoPi / k)) < 1e-12);
    }
}

TEST_CASE("validate_positivity") {
    SUBCASE("sufficient condition") {
        const auto s = validate_positivity(profile(2.0, {{1, 0.3}}));
        CHECK(s.certificate() == PositivityCertificate::sufficient_condition);
        CHECK(s.min_radial() >= 0.7 - 1e-15);
    }
    SUBCASE("explicit negative value") {
        try {
            (void)validate_positivity(profile(2.0, {{1, 1.5}}));
            FAIL("expected rejection");
        } catch (const PositivityError& e) {
            CHECK(e.value() == doctest::Approx(-0.5).epsilon(1e-12));
            CHECK(e.argmin() == doctest::Approx(kPi).epsilon(1e-12));
        }
    }
    SUBCASE("grid scan decides") {
        // dense minimum of 1 + 0.6 cos t + 0.6 sin 2t is about -0.0561 near t = 2.50673
        try {
            (void)validate_positivity(profile(2.0, {{1, 0.6}, {2, 0.0, 0.6}}));
            FAIL("expected rejection");
        } catch (const PositivityError& e) {
            CHECK(e.value() < -0.05);
            CHECK(std::abs(e.argmin() - 2.50673) < kTwoPi / 1024);
        }
        const auto ok = validate_positivity(profile(2.0, {{1, 0.6}, {2, 0.0, 0.4}}));
        CHECK(ok.certificate() == PositivityCertificate::grid_verified);
        CHECK(ok.min_radial() > 0.0);
    }
    SUBCASE("grid floor") {
        CHECK_THROWS_AS(validate_positivity(profile(2.0, {{1, 0.6}, {2, 0.0, 0.6}}), 512), std::invalid_argument);
        CHECK(default_positivity_nodes(profile(2.0)) == 1024);
        CHECK(default_positivity_nodes(FourierProfile(2.0, std::vector<Harmonic>(200))) == 1600);
    }
    SUBCASE("nonpositive mean") {
        CHECK_THROWS_AS(validate_positivity(profile(-2.0)), PositivityError);
        CHECK_THROWS_AS(validate_positivity(profile(0.0)), PositivityError);
    }
    SUBCASE("disc") {
        CHECK(StarBody::disc(2.0).profile().a0() == 4.0);
        CHECK_THROWS(StarBody::disc(0.0));
    }
}

TEST_CASE("project_even_k_harmonics") {
    CHECK(project_even_k_harmonics(profile(2.0, {{4, 0.1}}), 2).harmonic(4) == Harmonic{});
    CHECK(project_even_k_harmonics(profile(2.0, {{2, 0.2}}), 2) == profile(2.0, {{2, 0.2}}));
    const auto p = project_even_k_harmonics(profile(2.0, {{3, 0.2}, {6, 0.1}, {12, 0.05}}), 3);
    CHECK(p.harmonic(3).a == 0.2);
    CHECK(p.harmonic(6) == Harmonic{});
    CHECK(p.harmonic(12) == Harmonic{});
    CHECK(even_k_violations(profile(2.0, {{3, 0.2}, {6, 0.1}, {12, 0.05}}), 3) == std::vector<int>{6, 12});
    CHECK(even_k_violations(p, 3).empty());
    CHECK_THROWS_AS(project_even_k_harmonics(p, 1), std::invalid_argument);
}

TEST_CASE("property: projector is idempotent and leaves other coefficients bit-identical") {
    testing::Gen gen(16);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = gen.raw(gen.integer(0, 40));
        const int k = gen.integer(2, 8);
        const auto once = project_even_k_harmonics(p, k);
        CHECK(project_even_k_harmonics(once, k) == once);
        CHECK(once.a0() == p.a0());
        for (int n = 1; n <= p.max_order(); ++n) {
            if (n % (2 * k) == 0) {
                CHECK(once.harmonic(n) == Harmonic{});
            } else {
                CHECK(once.harmonic(n) == p.harmonic(n));
            }
        }
    }
}

TEST_CASE("equality families") {
    const auto disc = make_equality_family({FamilyKind::disc}, 2.0);
    CHECK(eval_radial(disc.profile(), 0.9) == doctest::Approx(1.0));

    const std::pair<int, Harmonic> first[] = {{1, {0.4, 0.0}}};
    const auto fh = make_equality_family({FamilyKind::first_harmonic}, 2.0, first);
    CHECK(eval_radial(fh.profile(), 0.0) == doctest::Approx(1.4));

    const std::pair<int, Harmonic> third[] = {{3, {0.2, 0.0}}};
    const auto km = make_equality_family({FamilyKind::k_multiples, 3}, 2.0, third);
    CHECK(eval_radial(km.profile(), 0.0) == doctest::Approx(1.2));
    CHECK(eval_radial(km.profile(), kPi / 3) == doctest::Approx(0.8));

    CHECK_THROWS_AS(make_equality_family({FamilyKind::first_harmonic}, 2.0, third), std::invalid_argument);
    CHECK_THROWS_AS(make_equality_family({FamilyKind::even_k_multiples, 3}, 2.0, third), std::invalid_argument);
    const std::pair<int, Harmonic> big[] = {{1, {1.5, 0.0}}};
    CHECK_THROWS_AS(make_equality_family({FamilyKind::first_harmonic}, 2.0, big), PositivityError);

    const EqualityFamily even{FamilyKind::even_k_multiples, 2};
    CHECK(even.allows(4));
    CHECK(even.allows(8));
    CHECK_FALSE(even.allows(2));
    CHECK(family_admits(even, profile(2.0, {{4, 0.1}})));
    CHECK_FALSE(family_admits(even, profile(2.0, {{2, 0.1}})));
    CHECK(off_family_norm(even, profile(2.0, {{2, 0.3}, {4, 0.1}, {5, 0.0, 0.4}})) == doctest::Approx(0.5));
    CHECK(to_string(EqualityFamily{FamilyKind::k_multiples, 3}) == "k_multiples(3)");
    CHECK(family_kind_from_string("first_harmonic") == FamilyKind::first_harmonic);
    CHECK_FALSE(family_kind_from_string("ellipse"));
}

TEST_CASE("fit_profile examples") {
    std::vector<RadialSample> s;
    for (int j = 0; j < 64; ++j) {
        const double t = kTwoPi * j / 64;
        s.push_back({t, 1.0 + 0.2 * std::cos(3 * t)});
    }
    const auto p = fit_profile(s, 8);
    CHECK(std::abs(p.a0() - 2.0) < 1e-12);
    CHECK(std::abs(p.harmonic(3).a - 0.2) < 1e-12);
    for (int n = 1; n <= 8; ++n) {
        if (n != 3) {
            CHECK(p.harmonic(n).energy() < 1e-24);
        }
    }
    CHECK(std::abs(p.harmonic(3).b) < 1e-12);

    std::vector<RadialSample> flat;
    for (int j = 0; j < 9; ++j) {
        flat.push_back({kTwoPi * j / 9, 1.0});
    }
    const auto q = fit_profile(flat, 4);
    CHECK(std::abs(q.a0() - 2.0) < 1e-12);
    CHECK(q.harmonic_energy() < 1e-24);

    std::vector<RadialSample> few(flat.begin(), flat.begin() + 5);
    CHECK_THROWS_AS(fit_profile(few, 8), std::invalid_argument);
}

TEST_CASE("property: fit round-trips band-limited profiles") {
    testing::Gen gen(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int order = gen.integer(0, 24);
        const auto p = gen.profile(order);
        std::vector<RadialSample> s;
        const bool uniform = trial % 2 == 0;
        // non-uniform sets are jittered grids: arbitrary random angles make the
        // least-squares system too ill-conditioned for a 1e-10 round trip
        const int count = uniform ? 2 * order + 1 + gen.integer(0, 20) : 4 * order + 8 + gen.integer(0, 20);
        for (int j = 0; j < count; ++j) {
            const double cell = kTwoPi / count;
            const double t = uniform ? cell * j : cell * (j + gen.uniform(-0.25, 0.25));
            s.push_back({t, eval_radial(p, t)});
        }
        const auto q = fit_profile(s, order);
        CHECK(std::abs(q.a0() - p.a0()) < 1e-10);
        for (int n = 1; n <= order; ++n) {
            CHECK(std::abs(q.harmonic(n).a - p.harmonic(n).a) < 1e-10);
            CHECK(std::abs(q.harmonic(n).b - p.harmonic(n).b) < 1e-10);
        }
    }
}

}  // TEST_SUITE
