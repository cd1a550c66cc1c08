#pragma once

// Periodic trapezoid rule: the independent oracle behind every closed-form functional.

#include "dcl/harmonic.hpp"

#include <concepts>

namespace dcl {

struct QuadratureSpec {
    int nodes = 16;
    double period = kTwoPi;

    /// 4 * N_max + 16 nodes over [0, 2pi).
    static QuadratureSpec for_order(int max_order);
    static QuadratureSpec for_profiles(const FourierProfile& s, const FourierProfile& t);

    /// Throws std::invalid_argument unless nodes >= 4 and period > 0.
    void validate() const;
};

/// (P/M) * sum_{j<M} f(j P / M). Exact for trigonometric polynomials of degree < M in 2 pi x / P.
template <std::invocable<double> F>
double periodic_trapezoid(F&& f, const QuadratureSpec& spec) {
    spec.validate();
    const double h = spec.period / spec.nodes;
    double sum = 0.0;
    for (int j = 0; j < spec.nodes; ++j) {
        sum += f(j * h);
    }
    return h * sum;
}

/// Integral over [0, 2pi) of rho_k(S, theta) * rho_k(T, theta + alpha).
double correlation_integral(const FourierProfile& s, const FourierProfile& t, int k, double alpha,
                            const QuadratureSpec& spec);
inline double correlation_integral(const StarBody& s, const StarBody& t, int k, Angle alpha,
                                   const QuadratureSpec& spec) {
    return correlation_integral(s.profile(), t.profile(), k, alpha.value(), spec);
}

/// Integral over [0, pi/k] of rho_k(theta) rho_k(theta + pi/k). The integrand has period pi/k,
/// so this is 1/(2k) of the full-circle trapezoid sum.
double half_period_chord_integral(const FourierProfile& s, int k, const QuadratureSpec& spec);

/// Same integral with the trapezoid laid directly on [0, pi/k).
double direct_half_period_chord_integral(const FourierProfile& s, int k, int nodes);

}  // namespace dcl
