#pragma once

// Descent on closed-form slacks, used to probe which bodies attain equality.

#include "dcl/harmonic.hpp"
#include "dcl/inequalities.hpp"

#include <optional>
#include <vector>

namespace dcl {

/// Closed-form slack of an inequality as a function of the body's coefficients.
/// Matches evaluate_inequality(...).slack without the hypothesis and range checks.
double closed_form_slack(InequalityId id, const Parameters& params, const FourierProfile& s,
                         const FourierProfile* t = nullptr);

/// Per-index weights w_n with slack = sum_n w_n (a_n^2 + b_n^2), for the inequalities whose
/// slack is a diagonal quadratic in the harmonics (all but T3 and mixed_iso). Index 0 is unused.
std::optional<std::vector<double>> diagonal_slack_weights(InequalityId id, const Parameters& params, int max_order);

/// Gradient of closed_form_slack with respect to S's harmonics as (d/da_n, d/db_n), n = 1..N.
std::vector<Harmonic> slack_gradient(InequalityId id, const Parameters& params, const FourierProfile& s,
                                     const FourierProfile* t = nullptr);

enum class StepRule {
    preconditioned,  // scale each coordinate by the inverse diagonal curvature
    gradient,        // plain steepest descent
};

struct SearchSpec {
    InequalityId id = InequalityId::T1;
    Parameters params;
    StarBody start = StarBody::disc(1.0);
    std::optional<StarBody> partner;  // held fixed for T3 / mixed_iso
    StepRule step_rule = StepRule::preconditioned;
    int max_iters = 500;
    double convergence_tol = 1e-12;
    double barrier_weight = 1e-8;  // weight of -log(min rho / (a0/2)) in the line-search objective
    double line_search_tol = 1e-12;
};

struct SearchStep {
    int iteration = 0;
    double slack = 0.0;
    double objective = 0.0;
    double step_length = 0.0;
    double min_radial = 0.0;
};

struct SearchResult {
    StarBody terminal;
    std::vector<SearchStep> trace;  // trace[0] is the start
    int iterations = 0;
    bool converged = false;
    bool budget_exhausted = false;
    double terminal_slack = 0.0;
    std::optional<EqualityFamily> predicted_family;
    double off_family_norm = 0.0;
};

/// a0 is held fixed; only harmonics move. Every iterate is a certified star body.
/// Throws HypothesisError / ParameterRangeError like the matching slack_* function.
SearchResult minimize_slack(const SearchSpec& spec);

std::string to_string(StepRule rule);
std::optional<StepRule> step_rule_from_string(const std::string& name);

}  // namespace dcl
