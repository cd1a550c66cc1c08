#pragma once

// Slack and verdict for each sharp inequality on star bodies.
//
// Slack is always oriented so that slack >= 0 means the inequality holds, whichever
// direction the inequality is written in. Left and right sides keep the written order.

#include "dcl/functionals.hpp"
#include "dcl/harmonic.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcl {

enum class InequalityId {
    T1,         // chord integral <= kA + lambda (A(S,B)^2 - pi A), 0 <= lambda <= k/pi
    T2,         // chord integral >= kA + mu * oriented area, mu <= -k
    T3,         // (1/2k^2) int rho_k(S) rho_k(T, . + alpha) <= sqrt(A(S) A(T))
    C31,        // (1/k) chord integral <= A
    stab35,     // T1 deficit <= (pi lambda - k)/2 * d2(S, a0/2 B)^2
    stab37,     // T2 deficit >= (-k - mu/2) * d2(S, a0/2 B)^2
    dual_iso,   // A(S,B)^2 <= pi A(S)
    mixed_iso,  // A(S,B) A(T,B) <= pi sqrt(A(S) A(T))
};

std::string to_string(InequalityId id);
std::optional<InequalityId> inequality_from_string(const std::string& name);
bool needs_partner(InequalityId id);

enum class Verdict { holds, equality, violated };
std::string to_string(Verdict verdict);

struct Parameters {
    std::optional<int> k;
    std::optional<double> lambda;
    std::optional<double> mu;
    std::optional<double> alpha;
};

struct SlackReport {
    InequalityId id = InequalityId::T1;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    Parameters params;
    Verdict verdict = Verdict::holds;
    double tolerance = 0.0;
    /// Family the theorem names for equality at these parameters.
    std::optional<EqualityFamily> expected_family;
    /// Set when the bodies lie in the expected family (for T3: regardless of verdict).
    std::optional<EqualityFamily> equality_family_match;
    Method method = Method::closed_form;
    /// max(|lhs_closed - lhs_quadrature|, |rhs_closed - rhs_quadrature|)
    std::optional<double> oracle_residual;
    /// Evaluated outside the admissible parameter range on request.
    bool out_of_range = false;

    /// Equality verdict whose bodies are outside the expected family.
    bool family_mismatch() const { return verdict == Verdict::equality && expected_family && !equality_family_match; }
};

/// Theorem 1 / (3.5) hypothesis failure: coefficients at n with n/k even are nonzero.
class HypothesisError : public std::invalid_argument {
public:
    HypothesisError(int k, std::vector<int> indices);
    const std::vector<int>& indices() const noexcept { return indices_; }

private:
    std::vector<int> indices_;
};

class ParameterRangeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct VerifyOptions {
    bool allow_out_of_range = false;
    /// Project away the even n/k harmonics before T1 / stab35 instead of rejecting.
    bool project = false;
    bool cross_check = true;
    std::optional<int> nodes;
    double tol_scale = 1e-9;
};

SlackReport slack_theorem1(const StarBody& s, int k, double lambda, const VerifyOptions& opts = {});
SlackReport slack_theorem2(const StarBody& s, int k, double mu, const VerifyOptions& opts = {});
SlackReport slack_corollary31(const StarBody& s, int k, const VerifyOptions& opts = {});
SlackReport slack_theorem3(const StarBody& s, const StarBody& t, int k, Angle alpha, const VerifyOptions& opts = {});
SlackReport stability_margin_35(const StarBody& s, int k, double lambda, const VerifyOptions& opts = {});
SlackReport stability_margin_37(const StarBody& s, int k, double mu, const VerifyOptions& opts = {});
SlackReport slack_dual_isoperimetric(const StarBody& s, const VerifyOptions& opts = {});
SlackReport slack_mixed_isoperimetric(const StarBody& s, const StarBody& t, const VerifyOptions& opts = {});

/// Dispatches on id. Two-body inequalities need t (std::invalid_argument otherwise).
SlackReport evaluate_inequality(InequalityId id, const StarBody& s, const StarBody* t, const Parameters& params,
                                const VerifyOptions& opts = {});

/// Equality family the inequality names at these parameters; none outside the admissible range.
std::optional<EqualityFamily> mandated_family(InequalityId id, const Parameters& params);

/// Family of the body (and partner, for two-body inequalities) if it matches the mandated one.
/// Throws std::logic_error unless report.verdict is equality.
std::optional<EqualityFamily> classify_equality(const StarBody& s, const SlackReport& report,
                                                const StarBody* t = nullptr);

struct LimitPoint {
    int k = 0;
    double value = 0.0;         // (1/2k^2) * mixed chord integral, closed form
    double oracle_value = 0.0;  // same, by quadrature
    double deviation = 0.0;     // |value - A(S,B) A(T,B) / pi|
    double oracle_deviation = 0.0;
    double predicted_deviation = 0.0;  // harmonic part of the mixed closed form
};

/// k -> infinity study of the normalized mixed chord integral. k_values must be >= 2 and increasing.
std::vector<LimitPoint> limit_sequence(const StarBody& s, const StarBody& t, Angle alpha, std::span<const int> k_values,
                                       std::optional<int> nodes = {});

}  // namespace dcl
