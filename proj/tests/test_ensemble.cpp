#include "dcl/ensemble.hpp"
#include "support.hpp"

#include <doctest.h>

#include <atomic>
#include <cstdlib>

using namespace dcl;

TEST_SUITE("ensemble") {

TEST_CASE("spec validation") {
    EnsembleSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.count = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = {};
    spec.decay = -1;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = {};
    spec.a0_min = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = {};
    spec.hypothesis_filter = HypothesisFilter{InequalityId::T1, 1};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = {};
    CHECK_THROWS_AS(sample_star_body(spec, 1), std::out_of_range);
}

TEST_CASE("sigma zero gives the mean disc") {
    EnsembleSpec spec;
    spec.count = 5;
    spec.sigma = 0.0;
    for (std::size_t i = 0; i < spec.count; ++i) {
        const auto s = sample_star_body(spec, i);
        CHECK(s.profile().harmonic_energy() == 0.0);
        CHECK(s.min_radial() == doctest::Approx(s.profile().mean_radius()));
        CHECK(s.profile().a0() >= 1.0);
        CHECK(s.profile().a0() <= 3.0);
    }
}

TEST_CASE("fixed (seed, index) is bit-identical") {
    EnsembleSpec spec;
    spec.count = 10;
    spec.seed = 12345;
    for (std::size_t i = 0; i < spec.count; ++i) {
        CHECK(sample_star_body(spec, i).profile() == sample_star_body(spec, i).profile());
    }
    CHECK_FALSE(sample_star_body(spec, 0).profile() == sample_star_body(spec, 1).profile());
    auto other = spec;
    other.seed = 12346;
    CHECK_FALSE(sample_star_body(spec, 3).profile() == sample_star_body(other, 3).profile());
}

TEST_CASE("hypothesis filter zeroes multiples of 2k") {
    EnsembleSpec spec;
    spec.count = 50;
    spec.hypothesis_filter = HypothesisFilter{InequalityId::T1, 2};
    for (std::size_t i = 0; i < spec.count; ++i) {
        const auto p = sample_star_body(spec, i).profile();
        for (int n = 4; n <= p.max_order(); n += 4) {
            CHECK(p.harmonic(n) == Harmonic{});
        }
        CHECK(even_k_violations(p, 2).empty());
    }
}

TEST_CASE("property: sampled bodies respect the positivity floor") {
    EnsembleSpec spec;
    spec.count = 300;
    spec.sigma = 3.0;  // large enough that shrinking is routine
    spec.decay = 0.5;
    spec.max_order = 16;
    spec.positivity_floor = 0.2;
    int shrunk = 0;
    for (std::size_t i = 0; i < spec.count; ++i) {
        const auto s = sample_star_body(spec, i);
        const auto [minimum, where] = grid_minimum(s.profile(), 4096);
        CHECK(minimum >= 0.2 * s.profile().mean_radius() * (1 - 1e-6));
        CHECK(s.min_radial() > 0.0);
        shrunk += s.profile().harmonic_energy() < 9.0 ? 1 : 0;
    }
    CHECK(shrunk > 0);
}

TEST_CASE("generate_ensemble matches per-index sampling") {
    EnsembleSpec spec;
    spec.count = 40;
    spec.seed = 3;
    const auto all = generate_ensemble(spec);
    REQUIRE(all.size() == 40);
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i].profile() == sample_star_body(spec, i).profile());
    }
}

TEST_CASE("parallel_for visits every index once and reports the lowest failure") {
    for (unsigned workers : {1u, 2u, 4u, 8u}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, workers);
        for (auto& h : hits) {
            CHECK(h.load() == 1);
        }
        try {
            parallel_for(
                100,
                [](std::size_t i) {
                    if (i % 10 == 7) {
                        throw std::runtime_error(std::to_string(i));
                    }
                },
                workers);
            FAIL("expected an exception");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()) == "7");
        }
    }
}

TEST_CASE("worker count honors DCL_THREADS") {
    const unsigned base = worker_count();
    ::setenv("DCL_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    ::setenv("DCL_THREADS", "junk", 1);
    CHECK(worker_count() == base);
    ::unsetenv("DCL_THREADS");
}

TEST_CASE("sweep: 100 filtered bodies, T1, k=2, four lambdas") {
    EnsembleSpec spec;
    spec.count = 100;
    spec.hypothesis_filter = HypothesisFilter{InequalityId::T1, 2};
    const auto bodies = generate_ensemble(spec);
    SweepGrid grid;
    grid.id = InequalityId::T1;
    grid.k = {2};
    grid.lambda = {0.0, 0.2, 0.4, 0.6};
    const auto res = sweep(bodies, grid);
    CHECK(res.rows.size() == 400);
    CHECK(res.summary.reports == 400);
    CHECK(res.summary.violations == 0);
    CHECK(res.summary.min_slack >= 0.0);
    CHECK(res.summary.max_oracle_residual < 1e-9);
    CHECK(res.rows[5].body == 1);
    CHECK(res.rows[5].report.params.lambda == 0.2);
}

TEST_CASE("sweep: disc under T2 is tight everywhere") {
    const std::vector<StarBody> bodies{StarBody::disc(1.0)};
    SweepGrid grid;
    grid.id = InequalityId::T2;
    grid.k = {2};
    grid.mu = {-2, -3, -4};
    const auto res = sweep(bodies, grid);
    REQUIRE(res.rows.size() == 3);
    for (const auto& row : res.rows) {
        CHECK(std::abs(row.report.slack) < 1e-12);
        CHECK(row.report.verdict == Verdict::equality);
    }
    CHECK(res.summary.equalities == 3);
}

TEST_CASE("sweep: single body under T3 over eight shifts") {
    const std::vector<StarBody> bodies{testing::body(2.0, {{2, 0.2}})};
    SweepGrid grid;
    grid.id = InequalityId::T3;
    grid.k = {2};
    grid.alpha = {kPi / 8, kPi / 4, kPi / 2, 3 * kPi / 4, kPi, 5 * kPi / 4, 3 * kPi / 2, 7 * kPi / 4};
    const auto res = sweep(bodies, grid);
    REQUIRE(res.rows.size() == 8);
    CHECK(res.summary.argmin_params.alpha == kPi);
    CHECK(std::abs(res.summary.min_slack) < 1e-12);
    double best = -1;
    double at = 0;
    for (const auto& row : res.rows) {
        if (row.report.slack > best) {
            best = row.report.slack;
            at = *row.report.params.alpha;
        }
    }
    CHECK(best == doctest::Approx(0.04 * kPi).epsilon(1e-12));
    CHECK(at == kPi / 2);
}

TEST_CASE("sweep rejects out-of-range grids unless exploring") {
    const std::vector<StarBody> bodies{StarBody::disc(1.0), testing::body(2.0, {{3, 0.2}})};
    SweepGrid grid;
    grid.id = InequalityId::T1;
    grid.k = {3};
    grid.lambda = {0.5, 2.0};
    CHECK_THROWS_AS(sweep(bodies, grid), ParameterRangeError);
    VerifyOptions explore;
    explore.allow_out_of_range = true;
    const auto res = sweep(bodies, grid, explore);
    CHECK(res.summary.violations == 0);
    CHECK(res.summary.expected_violations == 1);
    grid.lambda.clear();
    CHECK_THROWS_AS(sweep(bodies, grid), std::invalid_argument);
}

TEST_CASE("property: sweeps are identical across worker counts") {
    EnsembleSpec spec;
    spec.count = 30;
    spec.seed = 99;
    const auto bodies = generate_ensemble(spec);
    SweepGrid grid;
    grid.id = InequalityId::T3;
    grid.k = {2, 5};
    grid.alpha = {0.5, 2.0};
    ::setenv("DCL_THREADS", "1", 1);
    const auto one = sweep(bodies, grid);
    ::unsetenv("DCL_THREADS");
    const auto many = sweep(bodies, grid);
    REQUIRE(one.rows.size() == many.rows.size());
    for (std::size_t i = 0; i < one.rows.size(); ++i) {
        CHECK(one.rows[i].report.slack == many.rows[i].report.slack);
        CHECK(one.rows[i].partner == many.rows[i].partner);
    }
}

}  // TEST_SUITE
