#pragma once

// Geometric functionals of star bodies. Each one has a Parseval closed form and an
// independent quadrature path; the checked entry points run both.

#include "dcl/harmonic.hpp"
#include "dcl/quadrature.hpp"

#include <optional>
#include <string>

namespace dcl {

enum class Method { closed_form, quadrature };
std::string to_string(Method method);

struct FunctionalValue {
    double value = 0.0;
    Method method = Method::closed_form;
    std::optional<double> cross_check_residual;

    /// True when no cross-check ran or |closed - quadrature| <= rel_tol * max(1, |value|).
    bool agrees(double rel_tol = 1e-9) const;
};

namespace closed_form {

double area(const FourierProfile& s);
double oriented_area(const FourierProfile& s);
double dual_mixed_area_disk(const FourierProfile& s);
double dual_l2_distance_squared(const FourierProfile& s, const FourierProfile& t);
/// Squared distance to the disc of radius a0/2: pi * sum (a_n^2 + b_n^2).
double mean_disc_distance_squared(const FourierProfile& s);
double chord_self_integral(const FourierProfile& s, int k);
double chord_mixed_integral(const FourierProfile& s, const FourierProfile& t, int k, double alpha);

}  // namespace closed_form

namespace quadrature {

double area(const FourierProfile& s, const QuadratureSpec& spec);
double oriented_area(const FourierProfile& s, const QuadratureSpec& spec);
double dual_mixed_area_disk(const FourierProfile& s, const QuadratureSpec& spec);
double dual_l2_distance_squared(const FourierProfile& s, const FourierProfile& t, const QuadratureSpec& spec);
double chord_self_integral(const FourierProfile& s, int k, const QuadratureSpec& spec);
double chord_mixed_integral(const FourierProfile& s, const FourierProfile& t, int k, double alpha,
                            const QuadratureSpec& spec);

}  // namespace quadrature

struct EvalOptions {
    Method method = Method::closed_form;
    bool cross_check = true;
    std::optional<int> nodes;  // default 4 * N_max + 16
};

FunctionalValue area(const StarBody& s, const EvalOptions& opts = {});
FunctionalValue oriented_area(const StarBody& s, const EvalOptions& opts = {});
FunctionalValue dual_mixed_area_disk(const StarBody& s, const EvalOptions& opts = {});
FunctionalValue dual_l2_distance(const StarBody& s, const StarBody& t, const EvalOptions& opts = {});
FunctionalValue chord_self_integral(const StarBody& s, int k, const EvalOptions& opts = {});
FunctionalValue chord_mixed_integral(const StarBody& s, const StarBody& t, int k, Angle alpha,
                                     const EvalOptions& opts = {});

enum class Lemma { lemma1, lemma2 };

/// |lhs - rhs| of the chosen identity, both sides by quadrature.
///   lemma1: int_0^{pi/k} rho_k rho_k(. + pi/k)  vs  1/2 sum_{m=1}^{k} int rho rho(. + (2m-1) pi / k)
///   lemma2: int f_k g_k(. + alpha)  vs  k/2 sum_{m=1}^{k} int [f(. + 2m pi/k) g(. + alpha) + f g(. + alpha + 2m pi/k)]
/// lemma2 needs g and alpha (std::invalid_argument otherwise).
double lemma_identity_residual(const StarBody& s, int k, Lemma which, std::optional<Angle> alpha = {},
                               const StarBody* g = nullptr, std::optional<int> nodes = {});

}  // namespace dcl
