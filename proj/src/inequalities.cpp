#include "dcl/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <functional>

namespace dcl {

std::string to_string(InequalityId id) {
    switch (id) {
        case InequalityId::T1:
            return "T1";
        case InequalityId::T2:
            return "T2";
        case InequalityId::T3:
            return "T3";
        case InequalityId::C31:
            return "C31";
        case InequalityId::stab35:
            return "stab35";
        case InequalityId::stab37:
            return "stab37";
        case InequalityId::dual_iso:
            return "dual_iso";
        case InequalityId::mixed_iso:
            return "mixed_iso";
    }
    return "unknown";
}

std::optional<InequalityId> inequality_from_string(const std::string& name) {
    for (auto id : {InequalityId::T1, InequalityId::T2, InequalityId::T3, InequalityId::C31, InequalityId::stab35,
                    InequalityId::stab37, InequalityId::dual_iso, InequalityId::mixed_iso}) {
        if (to_string(id) == name) {
            return id;
        }
    }
    return std::nullopt;
}

bool needs_partner(InequalityId id) {
    return id == InequalityId::T3 || id == InequalityId::mixed_iso;
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::holds:
            return "holds";
        case Verdict::equality:
            return "equality";
        case Verdict::violated:
            return "violated";
    }
    return "unknown";
}

HypothesisError::HypothesisError(int k, std::vector<int> indices)
    : std::invalid_argument(fmt::format(
          "hypothesis violated for k={}: nonzero coefficients at n={} where n/k is even (use --project)", k,
          fmt::join(indices, ","))),
      indices_(std::move(indices)) {}

namespace {

// Evaluates integrals by one method; the inequality formulas are written once against it.
struct Path {
    Method method;
    QuadratureSpec spec;

    double area(const FourierProfile& p) const {
        return method == Method::closed_form ? closed_form::area(p) : quadrature::area(p, spec);
    }
    double oriented_area(const FourierProfile& p) const {
        return method == Method::closed_form ? closed_form::oriented_area(p) : quadrature::oriented_area(p, spec);
    }
    double mixed_disk(const FourierProfile& p) const {
        return method == Method::closed_form ? closed_form::dual_mixed_area_disk(p)
                                             : quadrature::dual_mixed_area_disk(p, spec);
    }
    double chord(const FourierProfile& p, int k) const {
        return method == Method::closed_form ? closed_form::chord_self_integral(p, k)
                                             : quadrature::chord_self_integral(p, k, spec);
    }
    double mixed_chord(const FourierProfile& p, const FourierProfile& q, int k, double alpha) const {
        return method == Method::closed_form ? closed_form::chord_mixed_integral(p, q, k, alpha)
                                             : quadrature::chord_mixed_integral(p, q, k, alpha, spec);
    }
    double mean_disc_distance2(const FourierProfile& p) const {
        return method == Method::closed_form
                   ? closed_form::mean_disc_distance_squared(p)
                   : quadrature::dual_l2_distance_squared(p, FourierProfile(p.a0()), spec);
    }
};

struct Sides {
    double lhs;
    double rhs;
};

enum class Orientation { rhs_minus_lhs, lhs_minus_rhs };

SlackReport finish(InequalityId id, const Parameters& params, Orientation orientation, const FourierProfile& s,
                   const FourierProfile& t, const VerifyOptions& opts,
                   const std::function<Sides(const Path&)>& sides) {
    auto spec = QuadratureSpec::for_profiles(s, t);
    if (opts.nodes) {
        spec.nodes = *opts.nodes;
    }
    spec.validate();

    SlackReport r;
    r.id = id;
    r.params = params;
    const auto closed = sides(Path{Method::closed_form, spec});
    r.lhs = closed.lhs;
    r.rhs = closed.rhs;
    r.slack = orientation == Orientation::rhs_minus_lhs ? r.rhs - r.lhs : r.lhs - r.rhs;
    if (opts.cross_check) {
        const auto quad = sides(Path{Method::quadrature, spec});
        r.oracle_residual = std::max(std::abs(closed.lhs - quad.lhs), std::abs(closed.rhs - quad.rhs));
    }
    r.tolerance = opts.tol_scale * std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
    if (std::abs(r.slack) <= r.tolerance) {
        r.verdict = Verdict::equality;
    } else if (r.slack < -r.tolerance) {
        r.verdict = Verdict::violated;
    } else {
        r.verdict = Verdict::holds;
    }
    r.expected_family = mandated_family(id, params);
    return r;
}

bool lambda_at_upper_end(int k, double lambda) {
    return std::abs(lambda - k / kPi) <= 1e-12 * (k / kPi);
}

bool lambda_admissible(int k, double lambda) {
    return lambda >= 0.0 && (lambda <= k / kPi || lambda_at_upper_end(k, lambda));
}

bool mu_admissible(int k, double mu) {
    return mu <= -static_cast<double>(k);
}

// Returns true when the parameters are out of range and exploration was requested.
bool check_range(bool admissible, const VerifyOptions& opts, const std::string& what) {
    if (admissible) {
        return false;
    }
    if (!opts.allow_out_of_range) {
        throw ParameterRangeError(what);
    }
    return true;
}

StarBody hypothesis_body(const StarBody& s, int k, const VerifyOptions& opts) {
    if (opts.project) {
        return validate_positivity(project_even_k_harmonics(s.profile(), k));
    }
    auto bad = even_k_violations(s.profile(), k);
    if (!bad.empty()) {
        throw HypothesisError(k, std::move(bad));
    }
    return s;
}

void attach_family(SlackReport& r, const StarBody& s, const StarBody* t) {
    if (r.id == InequalityId::T3) {
        if (r.expected_family && family_admits(*r.expected_family, s.profile()) && t != nullptr &&
            family_admits(*r.expected_family, t->profile())) {
            r.equality_family_match = r.expected_family;
        }
        return;
    }
    if (r.verdict == Verdict::equality) {
        r.equality_family_match = classify_equality(s, r, t);
    }
}

SlackReport theorem1_like(InequalityId id, const StarBody& body, int k, double lambda, const VerifyOptions& opts) {
    require_order(k);
    const bool out = check_range(lambda_admissible(k, lambda), opts,
                                 fmt::format("lambda={} outside [0, k/pi] for k={}", lambda, k));
    const auto checked = hypothesis_body(body, k, opts);
    const auto& p = checked.profile();
    const Parameters params{k, lambda, {}, {}};
    SlackReport r;
    if (id == InequalityId::T1) {
        r = finish(id, params, Orientation::rhs_minus_lhs, p, p, opts, [&](const Path& path) {
            const double a = path.area(p);
            const double ab = path.mixed_disk(p);
            return Sides{path.chord(p, k), k * a + lambda * (ab * ab - kPi * a)};
        });
    } else {
        r = finish(id, params, Orientation::rhs_minus_lhs, p, p, opts, [&](const Path& path) {
            const double a = path.area(p);
            const double ab = path.mixed_disk(p);
            const double deficit = path.chord(p, k) - k * a - lambda * (ab * ab - kPi * a);
            return Sides{deficit, 0.5 * (kPi * lambda - k) * path.mean_disc_distance2(p)};
        });
    }
    r.out_of_range = out;
    if (out) {
        r.expected_family.reset();
    }
    attach_family(r, checked, nullptr);
    return r;
}

SlackReport theorem2_like(InequalityId id, const StarBody& s, int k, double mu, const VerifyOptions& opts) {
    require_order(k);
    const bool out =
        check_range(mu_admissible(k, mu), opts, fmt::format("mu={} must be <= -k for k={}", mu, k));
    const auto& p = s.profile();
    const Parameters params{k, {}, mu, {}};
    SlackReport r;
    if (id == InequalityId::T2) {
        r = finish(id, params, Orientation::lhs_minus_rhs, p, p, opts, [&](const Path& path) {
            return Sides{path.chord(p, k), k * path.area(p) + mu * path.oriented_area(p)};
        });
    } else {
        r = finish(id, params, Orientation::lhs_minus_rhs, p, p, opts, [&](const Path& path) {
            const double deficit = path.chord(p, k) - k * path.area(p) - mu * path.oriented_area(p);
            return Sides{deficit, (-k - 0.5 * mu) * path.mean_disc_distance2(p)};
        });
    }
    r.out_of_range = out;
    if (out) {
        r.expected_family.reset();
    }
    attach_family(r, s, nullptr);
    return r;
}

}  // namespace

SlackReport slack_theorem1(const StarBody& s, int k, double lambda, const VerifyOptions& opts) {
    return theorem1_like(InequalityId::T1, s, k, lambda, opts);
}

SlackReport stability_margin_35(const StarBody& s, int k, double lambda, const VerifyOptions& opts) {
    return theorem1_like(InequalityId::stab35, s, k, lambda, opts);
}

SlackReport slack_theorem2(const StarBody& s, int k, double mu, const VerifyOptions& opts) {
    return theorem2_like(InequalityId::T2, s, k, mu, opts);
}

SlackReport stability_margin_37(const StarBody& s, int k, double mu, const VerifyOptions& opts) {
    return theorem2_like(InequalityId::stab37, s, k, mu, opts);
}

SlackReport slack_corollary31(const StarBody& s, int k, const VerifyOptions& opts) {
    require_order(k);
    const auto& p = s.profile();
    auto r = finish(InequalityId::C31, Parameters{k, {}, {}, {}}, Orientation::rhs_minus_lhs, p, p, opts,
                    [&](const Path& path) { return Sides{path.chord(p, k) / k, path.area(p)}; });
    attach_family(r, s, nullptr);
    return r;
}

SlackReport slack_theorem3(const StarBody& s, const StarBody& t, int k, Angle alpha, const VerifyOptions& opts) {
    require_order(k);
    const double a = alpha.value();
    const bool out = check_range(a > 0.0, opts, fmt::format("alpha={} must lie in (0, 2pi)", a));
    const auto& p = s.profile();
    const auto& q = t.profile();
    const double k2 = static_cast<double>(k) * k;
    auto r = finish(InequalityId::T3, Parameters{k, {}, {}, a}, Orientation::rhs_minus_lhs, p, q, opts,
                    [&](const Path& path) {
                        return Sides{path.mixed_chord(p, q, k, a) / (2.0 * k2), std::sqrt(path.area(p) * path.area(q))};
                    });
    r.out_of_range = out;
    if (out) {
        r.expected_family.reset();
    }
    attach_family(r, s, &t);
    return r;
}

SlackReport slack_dual_isoperimetric(const StarBody& s, const VerifyOptions& opts) {
    const auto& p = s.profile();
    auto r = finish(InequalityId::dual_iso, Parameters{}, Orientation::rhs_minus_lhs, p, p, opts,
                    [&](const Path& path) {
                        const double ab = path.mixed_disk(p);
                        return Sides{ab * ab, kPi * path.area(p)};
                    });
    attach_family(r, s, nullptr);
    return r;
}

SlackReport slack_mixed_isoperimetric(const StarBody& s, const StarBody& t, const VerifyOptions& opts) {
    const auto& p = s.profile();
    const auto& q = t.profile();
    auto r = finish(InequalityId::mixed_iso, Parameters{}, Orientation::rhs_minus_lhs, p, q, opts,
                    [&](const Path& path) {
                        return Sides{path.mixed_disk(p) * path.mixed_disk(q),
                                     kPi * std::sqrt(path.area(p) * path.area(q))};
                    });
    attach_family(r, s, &t);
    return r;
}

SlackReport evaluate_inequality(InequalityId id, const StarBody& s, const StarBody* t, const Parameters& params,
                                const VerifyOptions& opts) {
    auto need = [&](const auto& field, const char* name) {
        if (!field) {
            throw std::invalid_argument(fmt::format("{} needs parameter {}", to_string(id), name));
        }
        return *field;
    };
    if (needs_partner(id) && t == nullptr) {
        throw std::invalid_argument(fmt::format("{} needs a second body", to_string(id)));
    }
    switch (id) {
        case InequalityId::T1:
            return slack_theorem1(s, need(params.k, "k"), need(params.lambda, "lambda"), opts);
        case InequalityId::T2:
            return slack_theorem2(s, need(params.k, "k"), need(params.mu, "mu"), opts);
        case InequalityId::T3:
            return slack_theorem3(s, *t, need(params.k, "k"), Angle(need(params.alpha, "alpha")), opts);
        case InequalityId::C31:
            return slack_corollary31(s, need(params.k, "k"), opts);
        case InequalityId::stab35:
            return stability_margin_35(s, need(params.k, "k"), need(params.lambda, "lambda"), opts);
        case InequalityId::stab37:
            return stability_margin_37(s, need(params.k, "k"), need(params.mu, "mu"), opts);
        case InequalityId::dual_iso:
            return slack_dual_isoperimetric(s, opts);
        case InequalityId::mixed_iso:
            return slack_mixed_isoperimetric(s, *t, opts);
    }
    throw std::invalid_argument("unknown inequality");
}

std::optional<EqualityFamily> mandated_family(InequalityId id, const Parameters& params) {
    const int k = params.k.value_or(0);
    switch (id) {
        case InequalityId::T1:
            if (!params.lambda || !lambda_admissible(k, *params.lambda)) {
                return std::nullopt;
            }
            return lambda_at_upper_end(k, *params.lambda) ? EqualityFamily{FamilyKind::first_harmonic}
                                                          : EqualityFamily{FamilyKind::disc};
        case InequalityId::T2:
            if (!params.mu || !mu_admissible(k, *params.mu)) {
                return std::nullopt;
            }
            return *params.mu == -static_cast<double>(k) ? EqualityFamily{FamilyKind::first_harmonic}
                                                         : EqualityFamily{FamilyKind::disc};
        case InequalityId::C31:
            return EqualityFamily{FamilyKind::even_k_multiples, k};
        case InequalityId::T3:
            return EqualityFamily{FamilyKind::k_multiples, k};
        case InequalityId::stab35:
            return EqualityFamily{FamilyKind::first_harmonic};
        case InequalityId::stab37:
        case InequalityId::dual_iso:
        case InequalityId::mixed_iso:
            return EqualityFamily{FamilyKind::disc};
    }
    return std::nullopt;
}

std::optional<EqualityFamily> classify_equality(const StarBody& s, const SlackReport& report, const StarBody* t) {
    if (report.verdict != Verdict::equality) {
        throw std::logic_error(
            fmt::format("classify_equality needs an equality verdict (got {})", to_string(report.verdict)));
    }
    const auto family = mandated_family(report.id, report.params);
    if (!family) {
        return std::nullopt;
    }
    if (!family_admits(*family, s.profile())) {
        return std::nullopt;
    }
    if (needs_partner(report.id) && t != nullptr && !family_admits(*family, t->profile())) {
        return std::nullopt;
    }
    return family;
}

std::vector<LimitPoint> limit_sequence(const StarBody& s, const StarBody& t, Angle alpha, std::span<const int> k_values,
                                       std::optional<int> nodes) {
    const auto& p = s.profile();
    const auto& q = t.profile();
    const double a = alpha.value();
    const double limit = closed_form::dual_mixed_area_disk(p) * closed_form::dual_mixed_area_disk(q) / kPi;
    auto spec = QuadratureSpec::for_profiles(p, q);
    if (nodes) {
        spec.nodes = *nodes;
    }
    spec.validate();

    std::vector<LimitPoint> out;
    int previous = 1;
    for (int k : k_values) {
        require_order(k);
        if (k <= previous) {
            throw std::invalid_argument("k values must be strictly increasing");
        }
        previous = k;
        const double norm = 1.0 / (2.0 * static_cast<double>(k) * k);
        LimitPoint pt;
        pt.k = k;
        pt.value = norm * closed_form::chord_mixed_integral(p, q, k, a);
        pt.oracle_value = norm * quadrature::chord_mixed_integral(p, q, k, a, spec);
        pt.deviation = std::abs(pt.value - limit);
        pt.oracle_deviation = std::abs(pt.oracle_value - limit);

        double harmonic = 0.0;
        const int order = std::min(p.max_order(), q.max_order());
        for (int n = k; n <= order; n += k) {
            const auto hs = p.harmonic(n);
            const auto ht = q.harmonic(n);
            harmonic += (hs.a * ht.a + hs.b * ht.b) * std::cos(n * a) + (hs.a * ht.b - hs.b * ht.a) * std::sin(n * a);
        }
        pt.predicted_deviation = std::abs(0.5 * kPi * harmonic);
        out.push_back(pt);
    }
    return out;
}

}  // namespace dcl
