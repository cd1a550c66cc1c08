#include "dcl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace dcl {

QuadratureSpec QuadratureSpec::for_order(int max_order) {
    return {4 * std::max(max_order, 0) + 16, kTwoPi};
}

QuadratureSpec QuadratureSpec::for_profiles(const FourierProfile& s, const FourierProfile& t) {
    return for_order(std::max(s.max_order(), t.max_order()));
}

void QuadratureSpec::validate() const {
    if (nodes < 4) {
        throw std::invalid_argument(fmt::format("quadrature needs at least 4 nodes (got {})", nodes));
    }
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw std::invalid_argument("quadrature period must be positive");
    }
}

double correlation_integral(const FourierProfile& s, const FourierProfile& t, int k, double alpha,
                            const QuadratureSpec& spec) {
    require_order(k);
    return periodic_trapezoid(
        [&](double theta) { return k_order_radial(s, k, theta) * k_order_radial(t, k, theta + alpha); }, spec);
}

double half_period_chord_integral(const FourierProfile& s, int k, const QuadratureSpec& spec) {
    require_order(k);
    const double shift = kPi / k;
    const double full = periodic_trapezoid(
        [&](double theta) { return k_order_radial(s, k, theta) * k_order_radial(s, k, theta + shift); }, spec);
    return full / (2.0 * k);
}

double direct_half_period_chord_integral(const FourierProfile& s, int k, int nodes) {
    require_order(k);
    const double shift = kPi / k;
    return periodic_trapezoid(
        [&](double theta) { return k_order_radial(s, k, theta) * k_order_radial(s, k, theta + shift); },
        QuadratureSpec{nodes, shift});
}

}  // namespace dcl
