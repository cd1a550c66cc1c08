#pragma once

// Seeded random star bodies and parameter sweeps over them.

#include "dcl/harmonic.hpp"
#include "dcl/inequalities.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace dcl {

struct HypothesisFilter {
    InequalityId id = InequalityId::T1;
    int k = 2;
};

struct EnsembleSpec {
    std::size_t count = 1;
    std::uint64_t seed = 0;
    int max_order = 64;
    double a0_min = 1.0;
    double a0_max = 3.0;
    double sigma = 0.5;  // harmonic n has standard deviation sigma / n^decay
    double decay = 2.0;
    std::optional<HypothesisFilter> hypothesis_filter;
    double positivity_floor = 0.05;  // min rho >= floor * a0 / 2

    /// Throws std::invalid_argument on an inconsistent spec.
    void validate() const;
};

/// Deterministic in (seed, index). Harmonics are shrunk by a common factor when needed
/// so that min rho >= positivity_floor * a0 / 2.
StarBody sample_star_body(const EnsembleSpec& spec, std::size_t index);

/// All count bodies, generated in parallel, ordered by index.
std::vector<StarBody> generate_ensemble(const EnsembleSpec& spec);

struct SweepGrid {
    InequalityId id = InequalityId::T1;
    std::vector<int> k;
    std::vector<double> lambda;
    std::vector<double> mu;
    std::vector<double> alpha;

    /// Parameter points in the order reports are emitted.
    std::vector<Parameters> points() const;
};

struct SweepRow {
    std::size_t body = 0;
    std::size_t partner = 0;  // meaningful for two-body inequalities
    SlackReport report;
};

struct SweepSummary {
    std::size_t reports = 0;
    std::size_t violations = 0;  // violated verdicts inside the admissible range
    std::size_t expected_violations = 0;
    std::size_t equalities = 0;
    std::size_t family_mismatches = 0;
    double min_slack = 0.0;
    std::size_t argmin_body = 0;
    Parameters argmin_params;
    double max_oracle_residual = 0.0;  // relative to max(1, |lhs|, |rhs|)
};

struct SweepResult {
    std::vector<SweepRow> rows;
    SweepSummary summary;
};

/// One report per (body, grid point), body-major. Two-body inequalities pair body i with body (i + 1) mod n.
SweepResult sweep(std::span<const StarBody> bodies, const SweepGrid& grid, const VerifyOptions& opts = {});

/// Worker count: hardware concurrency, capped by DCL_THREADS when set.
unsigned worker_count();

/// Runs fn(i) for i in [0, n) across workers. Each index is handled exactly once; callers
/// write results into per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);
/// Same with an explicit worker count (>= 1).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned workers);

}  // namespace dcl
