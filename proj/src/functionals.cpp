#include "dcl/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace dcl {

std::string to_string(Method method) {
    return method == Method::closed_form ? "closed_form" : "quadrature";
}

bool FunctionalValue::agrees(double rel_tol) const {
    if (!cross_check_residual) {
        return true;
    }
    return *cross_check_residual <= rel_tol * std::max(1.0, std::abs(value));
}

namespace closed_form {

double area(const FourierProfile& s) {
    return 0.25 * kPi * s.a0() * s.a0() + 0.5 * kPi * s.harmonic_energy();
}

double oriented_area(const FourierProfile& s) {
    double sum = 0.0;
    int n = 1;
    for (const auto& h : s.harmonics()) {
        sum += static_cast<double>(n) * n * h.energy();
        ++n;
    }
    return 0.5 * kPi * sum;
}

double dual_mixed_area_disk(const FourierProfile& s) {
    return 0.5 * kPi * s.a0();
}

double dual_l2_distance_squared(const FourierProfile& s, const FourierProfile& t) {
    const double da0 = s.a0() - t.a0();
    double sum = 0.0;
    const int order = std::max(s.max_order(), t.max_order());
    for (int n = 1; n <= order; ++n) {
        const auto hs = s.harmonic(n);
        const auto ht = t.harmonic(n);
        const double da = hs.a - ht.a;
        const double db = hs.b - ht.b;
        sum += da * da + db * db;
    }
    return 0.5 * kPi * da0 * da0 + kPi * sum;
}

double mean_disc_distance_squared(const FourierProfile& s) {
    return kPi * s.harmonic_energy();
}

double chord_self_integral(const FourierProfile& s, int k) {
    require_order(k);
    double alternating = 0.0;
    double sign = -1.0;
    for (int n = k; n <= s.max_order(); n += k) {
        alternating += sign * s.harmonic(n).energy();
        sign = -sign;
    }
    return k * kPi * s.a0() * s.a0() / 4.0 + 0.5 * k * kPi * alternating;
}

double chord_mixed_integral(const FourierProfile& s, const FourierProfile& t, int k, double alpha) {
    require_order(k);
    const double k2 = static_cast<double>(k) * k;
    double sum = 0.0;
    const int order = std::min(s.max_order(), t.max_order());
    for (int n = k; n <= order; n += k) {
        const auto hs = s.harmonic(n);
        const auto ht = t.harmonic(n);
        sum += (hs.a * ht.a + hs.b * ht.b) * std::cos(n * alpha) + (hs.a * ht.b - hs.b * ht.a) * std::sin(n * alpha);
    }
    return kPi * k2 * s.a0() * t.a0() / 2.0 + kPi * k2 * sum;
}

}  // namespace closed_form

namespace quadrature {

double area(const FourierProfile& s, const QuadratureSpec& spec) {
    return periodic_trapezoid(
        [&](double theta) {
            const double r = eval_radial(s, theta);
            return 0.5 * r * r;
        },
        spec);
}

double oriented_area(const FourierProfile& s, const QuadratureSpec& spec) {
    return periodic_trapezoid(
        [&](double theta) {
            const double d = eval_radial_derivative(s, theta);
            return 0.5 * d * d;
        },
        spec);
}

double dual_mixed_area_disk(const FourierProfile& s, const QuadratureSpec& spec) {
    return periodic_trapezoid([&](double theta) { return 0.5 * eval_radial(s, theta); }, spec);
}

double dual_l2_distance_squared(const FourierProfile& s, const FourierProfile& t, const QuadratureSpec& spec) {
    return periodic_trapezoid(
        [&](double theta) {
            const double d = eval_radial(s, theta) - eval_radial(t, theta);
            return d * d;
        },
        spec);
}

double chord_self_integral(const FourierProfile& s, int k, const QuadratureSpec& spec) {
    return half_period_chord_integral(s, k, spec);
}

double chord_mixed_integral(const FourierProfile& s, const FourierProfile& t, int k, double alpha,
                            const QuadratureSpec& spec) {
    return correlation_integral(s, t, k, alpha, spec);
}

}  // namespace quadrature

namespace {

QuadratureSpec spec_for(const EvalOptions& opts, const FourierProfile& s, const FourierProfile& t) {
    auto spec = QuadratureSpec::for_profiles(s, t);
    if (opts.nodes) {
        spec.nodes = *opts.nodes;
    }
    spec.validate();
    return spec;
}

template <class Closed, class Quad>
FunctionalValue evaluate(const EvalOptions& opts, Closed&& closed, Quad&& quad) {
    FunctionalValue out;
    out.method = opts.method;
    if (opts.method == Method::closed_form) {
        out.value = closed();
        if (opts.cross_check) {
            out.cross_check_residual = std::abs(out.value - quad());
        }
    } else {
        out.value = quad();
        if (opts.cross_check) {
            out.cross_check_residual = std::abs(out.value - closed());
        }
    }
    return out;
}

}  // namespace

FunctionalValue area(const StarBody& s, const EvalOptions& opts) {
    const auto& p = s.profile();
    const auto spec = spec_for(opts, p, p);
    return evaluate(opts, [&] { return closed_form::area(p); }, [&] { return quadrature::area(p, spec); });
}

FunctionalValue oriented_area(const StarBody& s, const EvalOptions& opts) {
    const auto& p = s.profile();
    const auto spec = spec_for(opts, p, p);
    return evaluate(opts, [&] { return closed_form::oriented_area(p); },
                    [&] { return quadrature::oriented_area(p, spec); });
}

FunctionalValue dual_mixed_area_disk(const StarBody& s, const EvalOptions& opts) {
    const auto& p = s.profile();
    const auto spec = spec_for(opts, p, p);
    return evaluate(opts, [&] { return closed_form::dual_mixed_area_disk(p); },
                    [&] { return quadrature::dual_mixed_area_disk(p, spec); });
}

FunctionalValue dual_l2_distance(const StarBody& s, const StarBody& t, const EvalOptions& opts) {
    const auto& p = s.profile();
    const auto& q = t.profile();
    const auto spec = spec_for(opts, p, q);
    // Square roots amplify rounding near zero distance, so compare before taking them.
    auto out = evaluate(opts, [&] { return closed_form::dual_l2_distance_squared(p, q); },
                        [&] { return quadrature::dual_l2_distance_squared(p, q, spec); });
    out.value = std::sqrt(std::max(out.value, 0.0));
    return out;
}

FunctionalValue chord_self_integral(const StarBody& s, int k, const EvalOptions& opts) {
    require_order(k);
    const auto& p = s.profile();
    const auto spec = spec_for(opts, p, p);
    return evaluate(opts, [&] { return closed_form::chord_self_integral(p, k); },
                    [&] { return quadrature::chord_self_integral(p, k, spec); });
}

FunctionalValue chord_mixed_integral(const StarBody& s, const StarBody& t, int k, Angle alpha,
                                     const EvalOptions& opts) {
    require_order(k);
    const auto& p = s.profile();
    const auto& q = t.profile();
    const auto spec = spec_for(opts, p, q);
    return evaluate(opts, [&] { return closed_form::chord_mixed_integral(p, q, k, alpha.value()); },
                    [&] { return quadrature::chord_mixed_integral(p, q, k, alpha.value(), spec); });
}

double lemma_identity_residual(const StarBody& s, int k, Lemma which, std::optional<Angle> alpha, const StarBody* g,
                               std::optional<int> nodes) {
    require_order(k);
    const auto& f = s.profile();

    if (which == Lemma::lemma1) {
        auto spec = QuadratureSpec::for_order(f.max_order());
        if (nodes) {
            spec.nodes = *nodes;
        }
        const double lhs = half_period_chord_integral(f, k, spec);
        double rhs = 0.0;
        for (int m = 1; m <= k; ++m) {
            const double shift = (2.0 * m - 1.0) * kPi / k;
            rhs += periodic_trapezoid([&](double theta) { return eval_radial(f, theta) * eval_radial(f, theta + shift); },
                                      spec);
        }
        return std::abs(lhs - 0.5 * rhs);
    }

    if (g == nullptr || !alpha) {
        throw std::invalid_argument("lemma2 residual needs a second body and a shift alpha");
    }
    const auto& gp = g->profile();
    auto spec = QuadratureSpec::for_profiles(f, gp);
    if (nodes) {
        spec.nodes = *nodes;
    }
    const double a = alpha->value();
    const double lhs = correlation_integral(f, gp, k, a, spec);
    double rhs = 0.0;
    for (int m = 1; m <= k; ++m) {
        const double shift = 2.0 * m * kPi / k;
        rhs += periodic_trapezoid(
            [&](double theta) {
                return eval_radial(f, theta + shift) * eval_radial(gp, theta + a) +
                       eval_radial(f, theta) * eval_radial(gp, theta + a + shift);
            },
            spec);
    }
    return std::abs(lhs - 0.5 * k * rhs);
}

}  // namespace dcl
