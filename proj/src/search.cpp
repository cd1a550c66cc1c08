#include "dcl/search.hpp"

#include "dcl/functionals.hpp"

#include <cmath>
#include <fmt/format.h>

namespace dcl {

namespace {

// (-1)^(n/k) when k divides n, else 0: the factor each harmonic picks up in the chord integral.
double chord_sign(int n, int k) {
    if (n % k != 0) {
        return 0.0;
    }
    return (n / k) % 2 == 0 ? 1.0 : -1.0;
}

int need_k(const Parameters& params, InequalityId id) {
    if (!params.k) {
        throw std::invalid_argument(fmt::format("{} needs parameter k", to_string(id)));
    }
    require_order(*params.k);
    return *params.k;
}

double need(const std::optional<double>& v, const char* name, InequalityId id) {
    if (!v) {
        throw std::invalid_argument(fmt::format("{} needs parameter {}", to_string(id), name));
    }
    return *v;
}

const FourierProfile& need_partner(const FourierProfile* t, InequalityId id) {
    if (t == nullptr) {
        throw std::invalid_argument(fmt::format("{} needs a second body", to_string(id)));
    }
    return *t;
}

}  // namespace

double closed_form_slack(InequalityId id, const Parameters& params, const FourierProfile& s, const FourierProfile* t) {
    using namespace closed_form;
    switch (id) {
        case InequalityId::T1: {
            const int k = need_k(params, id);
            const double lambda = need(params.lambda, "lambda", id);
            const double a = area(s);
            const double ab = dual_mixed_area_disk(s);
            return k * a + lambda * (ab * ab - kPi * a) - chord_self_integral(s, k);
        }
        case InequalityId::T2: {
            const int k = need_k(params, id);
            const double mu = need(params.mu, "mu", id);
            return chord_self_integral(s, k) - k * area(s) - mu * oriented_area(s);
        }
        case InequalityId::C31: {
            const int k = need_k(params, id);
            return area(s) - chord_self_integral(s, k) / k;
        }
        case InequalityId::T3: {
            const int k = need_k(params, id);
            const double alpha = need(params.alpha, "alpha", id);
            const auto& q = need_partner(t, id);
            return std::sqrt(area(s) * area(q)) - chord_mixed_integral(s, q, k, alpha) / (2.0 * k * k);
        }
        case InequalityId::stab35: {
            const int k = need_k(params, id);
            const double lambda = need(params.lambda, "lambda", id);
            const double a = area(s);
            const double ab = dual_mixed_area_disk(s);
            const double deficit = chord_self_integral(s, k) - k * a - lambda * (ab * ab - kPi * a);
            return 0.5 * (kPi * lambda - k) * mean_disc_distance_squared(s) - deficit;
        }
        case InequalityId::stab37: {
            const int k = need_k(params, id);
            const double mu = need(params.mu, "mu", id);
            const double deficit = chord_self_integral(s, k) - k * area(s) - mu * oriented_area(s);
            return deficit - (-k - 0.5 * mu) * mean_disc_distance_squared(s);
        }
        case InequalityId::dual_iso: {
            const double ab = dual_mixed_area_disk(s);
            return kPi * area(s) - ab * ab;
        }
        case InequalityId::mixed_iso: {
            const auto& q = need_partner(t, id);
            return kPi * std::sqrt(area(s) * area(q)) - dual_mixed_area_disk(s) * dual_mixed_area_disk(q);
        }
    }
    throw std::invalid_argument("unknown inequality");
}

std::optional<std::vector<double>> diagonal_slack_weights(InequalityId id, const Parameters& params, int max_order) {
    if (id == InequalityId::T3 || id == InequalityId::mixed_iso) {
        return std::nullopt;
    }
    std::vector<double> w(static_cast<std::size_t>(max_order) + 1, 0.0);
    const int k = id == InequalityId::dual_iso ? 0 : need_k(params, id);
    const double half_k_pi = 0.5 * k * kPi;
    for (int n = 1; n <= max_order; ++n) {
        const double e = k > 0 ? chord_sign(n, k) : 0.0;
        const double n2 = static_cast<double>(n) * n;
        double value = 0.0;
        switch (id) {
            case InequalityId::T1:
                value = half_k_pi * (1.0 - e) - 0.5 * kPi * kPi * need(params.lambda, "lambda", id);
                break;
            case InequalityId::T2:
                value = half_k_pi * (e - 1.0 - need(params.mu, "mu", id) * n2 / k);
                break;
            case InequalityId::C31:
                value = 0.5 * kPi * (1.0 - e);
                break;
            case InequalityId::stab35:
                value = -half_k_pi * e;
                break;
            case InequalityId::stab37:
                value = half_k_pi * (e + 1.0 - need(params.mu, "mu", id) * (n2 - 1.0) / k);
                break;
            case InequalityId::dual_iso:
                value = 0.5 * kPi * kPi;
                break;
            default:
                break;
        }
        w[static_cast<std::size_t>(n)] = value;
    }
    return w;
}

std::vector<Harmonic> slack_gradient(InequalityId id, const Parameters& params, const FourierProfile& s,
                                     const FourierProfile* t) {
    const int order = s.max_order();
    std::vector<Harmonic> g(static_cast<std::size_t>(order));
    if (const auto w = diagonal_slack_weights(id, params, order)) {
        for (int n = 1; n <= order; ++n) {
            const auto h = s.harmonic(n);
            const double wn = (*w)[static_cast<std::size_t>(n)];
            g[static_cast<std::size_t>(n - 1)] = {2.0 * wn * h.a, 2.0 * wn * h.b};
        }
        return g;
    }

    const auto& q = need_partner(t, id);
    const double area_s = closed_form::area(s);
    const double area_t = closed_form::area(q);
    // d sqrt(A_S A_T) / d a_n = A_T * pi a_n / (2 sqrt(A_S A_T))
    const double root_scale = kPi * area_t / (2.0 * std::sqrt(area_s * area_t));
    const double outer = id == InequalityId::mixed_iso ? kPi : 1.0;
    for (int n = 1; n <= order; ++n) {
        const auto h = s.harmonic(n);
        g[static_cast<std::size_t>(n - 1)] = {outer * root_scale * h.a, outer * root_scale * h.b};
    }
    if (id == InequalityId::T3) {
        const int k = need_k(params, id);
        const double alpha = need(params.alpha, "alpha", id);
        for (int n = k; n <= order; n += k) {
            const auto ht = q.harmonic(n);
            const double c = std::cos(n * alpha);
            const double sn = std::sin(n * alpha);
            auto& gn = g[static_cast<std::size_t>(n - 1)];
            gn.a -= 0.5 * kPi * (ht.a * c + ht.b * sn);
            gn.b -= 0.5 * kPi * (ht.b * c - ht.a * sn);
        }
    }
    return g;
}

std::string to_string(StepRule rule) {
    return rule == StepRule::preconditioned ? "preconditioned" : "gradient";
}

std::optional<StepRule> step_rule_from_string(const std::string& name) {
    if (name == "preconditioned") {
        return StepRule::preconditioned;
    }
    if (name == "gradient") {
        return StepRule::gradient;
    }
    return std::nullopt;
}

namespace {

FourierProfile moved(const FourierProfile& p, const std::vector<Harmonic>& d, double t) {
    std::vector<Harmonic> h(p.harmonics().begin(), p.harmonics().end());
    for (std::size_t i = 0; i < h.size(); ++i) {
        h[i].a += t * d[i].a;
        h[i].b += t * d[i].b;
    }
    return FourierProfile(p.a0(), std::move(h));
}

double dot(const std::vector<Harmonic>& x, const std::vector<Harmonic>& y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i].a * y[i].a + x[i].b * y[i].b;
    }
    return sum;
}

// Coordinates with w_n = 0 do not change the slack. When the full preconditioned step would
// leave the star bodies (the neutral part alone dips below zero), shrink them toward zero
// just enough that the step lands with min rho >= 5% of the mean radius.
void relax_neutral(const FourierProfile& p, const std::vector<double>& w, std::vector<Harmonic>& d, int nodes) {
    double wmax = 0.0;
    for (double x : w) {
        wmax = std::max(wmax, std::abs(x));
    }
    const auto full = moved(p, d, 1.0);
    if (grid_minimum(full, nodes).first >= 0.05 * p.mean_radius()) {
        return;
    }
    std::vector<Harmonic> neutral(d.size());
    bool any = false;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (std::abs(w[i + 1]) <= 1e-12 * wmax) {
            neutral[i] = p.harmonic(static_cast<int>(i) + 1);
            any = true;
        }
    }
    if (!any) {
        return;
    }
    const double dip = grid_minimum(FourierProfile(0.0, neutral), nodes).first;
    if (!(dip < 0.0)) {
        return;
    }
    const double gamma = std::min(1.0, 0.95 * p.mean_radius() / -dip);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (std::abs(w[i + 1]) <= 1e-12 * wmax) {
            d[i] = {(gamma - 1.0) * neutral[i].a, (gamma - 1.0) * neutral[i].b};
        }
    }
}

}  // namespace

SearchResult minimize_slack(const SearchSpec& spec) {
    if (spec.max_iters < 0) {
        throw std::invalid_argument("max_iters must be >= 0");
    }
    const StarBody* partner = spec.partner ? &*spec.partner : nullptr;
    if (needs_partner(spec.id) && partner == nullptr) {
        throw std::invalid_argument(fmt::format("{} search needs a partner body", to_string(spec.id)));
    }
    // Runs the admissibility checks (range, hypothesis) the verifier would apply.
    VerifyOptions check;
    check.cross_check = false;
    (void)evaluate_inequality(spec.id, spec.start, partner, spec.params, check);

    const FourierProfile* q = partner ? &partner->profile() : nullptr;
    FourierProfile p = spec.start.profile();
    const int order = p.max_order();
    const int nodes = default_positivity_nodes(p);
    const auto weights = diagonal_slack_weights(spec.id, spec.params, order);

    auto slack_of = [&](const FourierProfile& x) {
        if (weights) {
            double sum = 0.0;
            for (int n = 1; n <= order; ++n) {
                sum += (*weights)[static_cast<std::size_t>(n)] * x.harmonic(n).energy();
            }
            return sum;
        }
        return closed_form_slack(spec.id, spec.params, x, q);
    };
    // -log(min rho / (a0/2)); empty when the candidate is not a star body.
    auto barrier_of = [&](const FourierProfile& x) -> std::optional<std::pair<double, double>> {
        const double m = grid_minimum(x, nodes).first;
        if (!(m > 0.0)) {
            return std::nullopt;
        }
        return std::pair{-std::log(m / x.mean_radius()), m};
    };

    double slack = slack_of(p);
    auto bar = barrier_of(p);
    if (!bar) {
        throw PositivityError(0.0, grid_minimum(p, nodes).first);
    }
    double objective = slack + spec.barrier_weight * bar->first;

    SearchResult out{spec.start, {}, 0, false, false, slack, mandated_family(spec.id, spec.params), 0.0};
    out.trace.push_back({0, slack, objective, 0.0, bar->second});

    double last_step = 1.0;
    for (int it = 1;; ++it) {
        if (slack <= spec.convergence_tol) {
            out.converged = true;
            break;
        }
        if (it > spec.max_iters) {
            out.budget_exhausted = true;
            break;
        }
        const auto g = slack_gradient(spec.id, spec.params, p, q);
        std::vector<Harmonic> d(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            double scale = 1.0;
            if (weights && spec.step_rule == StepRule::preconditioned) {
                const double w = (*weights)[i + 1];
                scale = w > 0.0 ? 1.0 / (2.0 * w) : 0.0;
            }
            d[i] = {-scale * g[i].a, -scale * g[i].b};
        }
        if (weights && spec.step_rule == StepRule::preconditioned) {
            relax_neutral(p, *weights, d, nodes);
        }
        const double slope = dot(g, d);
        if (!(slope < -1e-300)) {
            // stationary: no descent direction left
            out.converged = true;
            break;
        }

        double t = 1.0;
        if (weights && spec.step_rule == StepRule::gradient) {
            double num = 0.0;
            double den = 0.0;
            for (int n = 1; n <= order; ++n) {
                const double w = (*weights)[static_cast<std::size_t>(n)];
                const auto c = p.harmonic(n);
                const auto& dn = d[static_cast<std::size_t>(n - 1)];
                num += w * (c.a * dn.a + c.b * dn.b);
                den += w * (dn.a * dn.a + dn.b * dn.b);
            }
            t = den > 0.0 ? -num / den : 1.0;
        } else if (!weights) {
            t = 2.0 * last_step;
        }

        bool accepted = false;
        for (int tries = 0; tries < 80 && t > 0.0; ++tries, t *= 0.5) {
            auto cand = moved(p, d, t);
            const auto cb = barrier_of(cand);
            if (!cb) {
                continue;
            }
            const double cs = slack_of(cand);
            const double cf = cs + spec.barrier_weight * cb->first;
            if (cf <= objective + 1e-4 * t * slope && cs <= slack + spec.line_search_tol) {
                p = std::move(cand);
                slack = cs;
                objective = cf;
                bar = cb;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            out.converged = slack <= spec.convergence_tol;
            break;
        }
        last_step = t;
        out.iterations = it;
        out.trace.push_back({it, slack, objective, t, bar->second});
    }

    out.terminal = validate_positivity(p);
    out.terminal_slack = slack;
    if (out.predicted_family) {
        out.off_family_norm = off_family_norm(*out.predicted_family, p);
    }
    return out;
}

}  // namespace dcl
