#pragma once

// Shared helpers for the test binaries: terse body builders, seeded generators and a
// composite Gauss-Legendre integrator that shares no code with the library's trapezoid rule.

#include "dcl/harmonic.hpp"

#include <array>
#include <cmath>
#include <initializer_list>
#include <random>
#include <vector>

namespace testing {

struct Coef {
    int n;
    double a;
    double b = 0.0;
};

inline dcl::FourierProfile profile(double a0, std::initializer_list<Coef> coefs = {}) {
    int top = 0;
    for (const auto& c : coefs) {
        top = std::max(top, c.n);
    }
    std::vector<dcl::Harmonic> h(static_cast<std::size_t>(top));
    for (const auto& c : coefs) {
        h[static_cast<std::size_t>(c.n - 1)] = {c.a, c.b};
    }
    return dcl::FourierProfile(a0, std::move(h));
}

inline dcl::StarBody body(double a0, std::initializer_list<Coef> coefs = {}) {
    return dcl::validate_positivity(profile(a0, coefs));
}

// Random profile with harmonics decaying like scale / n^2, shrunk until comfortably positive.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    dcl::FourierProfile profile(int max_order, double scale = 0.5) {
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<dcl::Harmonic> h(static_cast<std::size_t>(max_order));
        for (int n = 1; n <= max_order; ++n) {
            const double sd = scale / (double(n) * n);
            h[static_cast<std::size_t>(n - 1)] = {sd * g(rng_), sd * g(rng_)};
        }
        dcl::FourierProfile p(uniform(1.0, 3.0), std::move(h));
        double bound = 0.0;
        for (const auto& x : p.harmonics()) {
            bound += std::hypot(x.a, x.b);
        }
        if (bound > 0.8 * p.mean_radius()) {
            p = p.shrunk(0.8 * p.mean_radius() / bound);
        }
        return p;
    }

    dcl::StarBody body(int max_order, double scale = 0.5) { return dcl::validate_positivity(profile(max_order, scale)); }

    // Coefficients in [-1, 1], not necessarily a star body.
    dcl::FourierProfile raw(int max_order) {
        std::vector<dcl::Harmonic> h(static_cast<std::size_t>(max_order));
        for (auto& x : h) {
            x = {uniform(-1, 1), uniform(-1, 1)};
        }
        return dcl::FourierProfile(uniform(-1, 1), std::move(h));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// 10-point Gauss-Legendre nodes on [-1, 1], found by Newton iteration on P_10.
inline const std::array<std::pair<double, double>, 10>& gauss_legendre_10() {
    static const auto rule = [] {
        std::array<std::pair<double, double>, 10> out{};
        constexpr int m = 10;
        for (int i = 0; i < m; ++i) {
            double x = std::cos(dcl::kPi * (i + 0.75) / (m + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0;
                double p1 = x;
                for (int j = 2; j <= m; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) {
                    break;
                }
            }
            out[static_cast<std::size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
        }
        return out;
    }();
    return rule;
}

// Composite Gauss-Legendre over [lo, hi] with `panels` panels.
template <typename F>
double gauss_integral(F&& f, double lo, double hi, int panels = 256) {
    const auto& rule = gauss_legendre_10();
    const double h = (hi - lo) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h;
        for (const auto& [x, w] : rule) {
            sum += w * f(mid + 0.5 * h * x);
        }
    }
    return 0.5 * h * sum;
}

// Plain direct evaluation, independent of the library's rotation recurrence.
inline double rho(const dcl::FourierProfile& p, double theta) {
    double r = 0.5 * p.a0();
    for (int n = 1; n <= p.max_order(); ++n) {
        const auto h = p.harmonic(n);
        r += h.a * std::cos(n * theta) + h.b * std::sin(n * theta);
    }
    return r;
}

inline double rho_prime(const dcl::FourierProfile& p, double theta) {
    double r = 0.0;
    for (int n = 1; n <= p.max_order(); ++n) {
        const auto h = p.harmonic(n);
        r += n * (h.b * std::cos(n * theta) - h.a * std::sin(n * theta));
    }
    return r;
}

inline double rho_k(const dcl::FourierProfile& p, int k, double theta) {
    double r = 0.0;
    for (int m = 0; m < k; ++m) {
        r += rho(p, theta + 2.0 * m * dcl::kPi / k);
    }
    return r;
}

inline double rel(double x, double y) {
    const double s = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x - y) / s;
}

}  // namespace testing
