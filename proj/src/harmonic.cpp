#include "dcl/harmonic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

namespace dcl {

namespace {

// Walks (cos n theta, sin n theta) for n = 1, 2, ... by repeated rotation.
struct HarmonicWalker {
    explicit HarmonicWalker(double theta) : c1(std::cos(theta)), s1(std::sin(theta)), c(c1), s(s1) {}

    void advance() {
        const double next_c = c * c1 - s * s1;
        s = s * c1 + c * s1;
        c = next_c;
    }

    double c1, s1;
    double c, s;
};

}  // namespace

Angle::Angle(double radians) {
    if (!std::isfinite(radians)) {
        throw std::invalid_argument("angle must be finite");
    }
    double v = std::fmod(radians, kTwoPi);
    if (v < 0.0) {
        v += kTwoPi;
    }
    if (v >= kTwoPi) {
        v = 0.0;
    }
    value_ = v;
}

FourierProfile::FourierProfile(double a0, std::vector<Harmonic> harmonics)
    : a0_(a0), harmonics_(std::move(harmonics)) {
    if (!std::isfinite(a0_)) {
        throw std::invalid_argument("a0 must be finite");
    }
    for (std::size_t i = 0; i < harmonics_.size(); ++i) {
        if (!std::isfinite(harmonics_[i].a) || !std::isfinite(harmonics_[i].b)) {
            throw std::invalid_argument(fmt::format("harmonic {} is not finite", i + 1));
        }
    }
}

Harmonic FourierProfile::harmonic(int n) const {
    if (n < 1 || n > max_order()) {
        return {};
    }
    return harmonics_[static_cast<std::size_t>(n - 1)];
}

double FourierProfile::harmonic_energy() const noexcept {
    double sum = 0.0;
    for (const auto& h : harmonics_) {
        sum += h.energy();
    }
    return sum;
}

FourierProfile FourierProfile::with_harmonic(int n, Harmonic h) const {
    if (n < 1) {
        throw std::invalid_argument("harmonic index must be >= 1");
    }
    auto harmonics = harmonics_;
    if (static_cast<std::size_t>(n) > harmonics.size()) {
        harmonics.resize(static_cast<std::size_t>(n));
    }
    harmonics[static_cast<std::size_t>(n - 1)] = h;
    return FourierProfile(a0_, std::move(harmonics));
}

FourierProfile FourierProfile::scaled(double c) const {
    auto out = shrunk(c);
    out.a0_ *= c;
    return out;
}

FourierProfile FourierProfile::shrunk(double c) const {
    auto harmonics = harmonics_;
    for (auto& h : harmonics) {
        h.a *= c;
        h.b *= c;
    }
    return FourierProfile(a0_, std::move(harmonics));
}

FourierProfile FourierProfile::trimmed() const {
    auto harmonics = harmonics_;
    while (!harmonics.empty() && harmonics.back().a == 0.0 && harmonics.back().b == 0.0) {
        harmonics.pop_back();
    }
    return FourierProfile(a0_, std::move(harmonics));
}

double eval_radial(const FourierProfile& profile, double theta) {
    double sum = profile.mean_radius();
    HarmonicWalker w(theta);
    for (const auto& h : profile.harmonics()) {
        sum += h.a * w.c + h.b * w.s;
        w.advance();
    }
    return sum;
}

double eval_radial_derivative(const FourierProfile& profile, double theta) {
    double sum = 0.0;
    HarmonicWalker w(theta);
    int n = 1;
    for (const auto& h : profile.harmonics()) {
        sum += n * (h.b * w.c - h.a * w.s);
        w.advance();
        ++n;
    }
    return sum;
}

void require_order(int k) {
    if (k < 2) {
        throw std::invalid_argument(fmt::format("order k must be >= 2 (got {})", k));
    }
}

double k_order_radial(const FourierProfile& profile, int k, double theta) {
    require_order(k);
    const double step = kTwoPi / k;
    double sum = 0.0;
    for (int m = 0; m < k; ++m) {
        sum += eval_radial(profile, theta + m * step);
    }
    return sum;
}

double k_order_radial_filtered(const FourierProfile& profile, int k, double theta) {
    require_order(k);
    double sum = 0.5 * profile.a0();
    for (int n = k; n <= profile.max_order(); n += k) {
        const auto h = profile.harmonic(n);
        sum += h.a * std::cos(n * theta) + h.b * std::sin(n * theta);
    }
    return k * sum;
}

PositivityError::PositivityError(double argmin, double value)
    : std::runtime_error(fmt::format("radial function is not positive: rho({:.17g}) = {:.17g}", argmin, value)),
      argmin_(argmin),
      value_(value) {}

int default_positivity_nodes(const FourierProfile& profile) {
    return std::max(1024, 8 * profile.max_order());
}

std::pair<double, double> grid_minimum(const FourierProfile& profile, int nodes) {
    double best = eval_radial(profile, 0.0);
    double argmin = 0.0;
    for (int j = 1; j < nodes; ++j) {
        const double theta = kTwoPi * j / nodes;
        const double r = eval_radial(profile, theta);
        if (r < best) {
            best = r;
            argmin = theta;
        }
    }
    return {best, argmin};
}

StarBody validate_positivity(const FourierProfile& profile, std::optional<int> grid_nodes) {
    const int floor = default_positivity_nodes(profile);
    const int nodes = grid_nodes.value_or(floor);
    if (nodes < floor) {
        throw std::invalid_argument(fmt::format("positivity grid needs at least {} nodes (got {})", floor, nodes));
    }

    double amplitude = 0.0;
    for (const auto& h : profile.harmonics()) {
        amplitude += std::hypot(h.a, h.b);
    }
    const double bound = profile.mean_radius() - amplitude;
    if (bound > 0.0) {
        return StarBody(profile, bound, PositivityCertificate::sufficient_condition);
    }

    const auto [minimum, argmin] = grid_minimum(profile, nodes);
    if (!(minimum > 0.0)) {
        throw PositivityError(argmin, minimum);
    }
    return StarBody(profile, minimum, PositivityCertificate::grid_verified);
}

StarBody StarBody::disc(double radius) {
    return validate_positivity(FourierProfile(2.0 * radius));
}

FourierProfile project_even_k_harmonics(const FourierProfile& profile, int k) {
    require_order(k);
    std::vector<Harmonic> harmonics(profile.harmonics().begin(), profile.harmonics().end());
    for (std::size_t n = 2 * static_cast<std::size_t>(k); n <= harmonics.size(); n += 2 * static_cast<std::size_t>(k)) {
        harmonics[n - 1] = {};
    }
    return FourierProfile(profile.a0(), std::move(harmonics));
}

std::vector<int> even_k_violations(const FourierProfile& profile, int k, double tol) {
    require_order(k);
    std::vector<int> out;
    for (int n = 2 * k; n <= profile.max_order(); n += 2 * k) {
        const auto h = profile.harmonic(n);
        if (std::abs(h.a) > tol || std::abs(h.b) > tol) {
            out.push_back(n);
        }
    }
    return out;
}

bool EqualityFamily::allows(int n) const {
    switch (kind) {
        case FamilyKind::disc:
            return false;
        case FamilyKind::first_harmonic:
            return n == 1;
        case FamilyKind::k_multiples:
            return k >= 1 && n % k == 0;
        case FamilyKind::even_k_multiples:
            return k >= 1 && n % (2 * k) == 0;
    }
    return false;
}

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::disc:
            return "disc";
        case FamilyKind::first_harmonic:
            return "first_harmonic";
        case FamilyKind::k_multiples:
            return "k_multiples";
        case FamilyKind::even_k_multiples:
            return "even_k_multiples";
    }
    return "unknown";
}

std::string to_string(const EqualityFamily& family) {
    if (family.kind == FamilyKind::k_multiples || family.kind == FamilyKind::even_k_multiples) {
        return fmt::format("{}({})", to_string(family.kind), family.k);
    }
    return to_string(family.kind);
}

std::optional<FamilyKind> family_kind_from_string(const std::string& name) {
    for (auto kind : {FamilyKind::disc, FamilyKind::first_harmonic, FamilyKind::k_multiples,
                      FamilyKind::even_k_multiples}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

double off_family_norm(const EqualityFamily& family, const FourierProfile& profile) {
    double sum = 0.0;
    for (int n = 1; n <= profile.max_order(); ++n) {
        if (!family.allows(n)) {
            sum += profile.harmonic(n).energy();
        }
    }
    return std::sqrt(sum);
}

bool family_admits(const EqualityFamily& family, const FourierProfile& profile, double tol) {
    for (int n = 1; n <= profile.max_order(); ++n) {
        if (family.allows(n)) {
            continue;
        }
        const auto h = profile.harmonic(n);
        if (std::abs(h.a) > tol || std::abs(h.b) > tol) {
            return false;
        }
    }
    return true;
}

StarBody make_equality_family(const EqualityFamily& family, double a0,
                              std::span<const std::pair<int, Harmonic>> coefficients) {
    if ((family.kind == FamilyKind::k_multiples || family.kind == FamilyKind::even_k_multiples) && family.k < 2) {
        throw std::invalid_argument("family order k must be >= 2");
    }
    FourierProfile profile(a0);
    for (const auto& [n, h] : coefficients) {
        if (!family.allows(n)) {
            throw std::invalid_argument(
                fmt::format("family {} forbids a coefficient at index {}", to_string(family), n));
        }
        profile = profile.with_harmonic(n, h);
    }
    return validate_positivity(profile);
}

namespace {

std::optional<double> uniform_start(std::vector<double> thetas) {
    std::sort(thetas.begin(), thetas.end());
    const auto m = thetas.size();
    const double spacing = kTwoPi / static_cast<double>(m);
    for (std::size_t j = 1; j < m; ++j) {
        if (std::abs(thetas[j] - thetas[j - 1] - spacing) > 1e-12) {
            return std::nullopt;
        }
    }
    if (std::abs(thetas.front() + kTwoPi - thetas.back() - spacing) > 1e-12) {
        return std::nullopt;
    }
    return thetas.front();
}

}  // namespace

FourierProfile fit_profile(std::span<const RadialSample> samples, int max_order) {
    if (max_order < 0) {
        throw std::invalid_argument("max_order must be >= 0");
    }
    const std::size_t needed = 2 * static_cast<std::size_t>(max_order) + 1;
    std::vector<double> thetas;
    thetas.reserve(samples.size());
    for (const auto& s : samples) {
        if (!std::isfinite(s.radius)) {
            throw std::invalid_argument("sample radius must be finite");
        }
        thetas.push_back(Angle(s.theta).value());
    }
    auto distinct = thetas;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < needed) {
        throw std::invalid_argument(fmt::format(
            "underdetermined fit: {} distinct angles for order {} (need {})", distinct.size(), max_order, needed));
    }

    std::vector<Harmonic> harmonics(static_cast<std::size_t>(max_order));
    if (distinct.size() == samples.size() && uniform_start(thetas)) {
        const double m = static_cast<double>(samples.size());
        double a0 = 0.0;
        for (const auto& s : samples) {
            a0 += s.radius;
        }
        for (int n = 1; n <= max_order; ++n) {
            double a = 0.0;
            double b = 0.0;
            for (const auto& s : samples) {
                a += s.radius * std::cos(n * s.theta);
                b += s.radius * std::sin(n * s.theta);
            }
            harmonics[static_cast<std::size_t>(n - 1)] = {2.0 * a / m, 2.0 * b / m};
        }
        return FourierProfile(2.0 * a0 / m, std::move(harmonics));
    }

    const auto rows = static_cast<Eigen::Index>(samples.size());
    const auto cols = static_cast<Eigen::Index>(needed);
    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        design(i, 0) = 0.5;
        for (int n = 1; n <= max_order; ++n) {
            design(i, 2 * n - 1) = std::cos(n * s.theta);
            design(i, 2 * n) = std::sin(n * s.theta);
        }
        rhs(i) = s.radius;
    }
    const Eigen::VectorXd x = design.colPivHouseholderQr().solve(rhs);
    for (int n = 1; n <= max_order; ++n) {
        harmonics[static_cast<std::size_t>(n - 1)] = {x(2 * n - 1), x(2 * n)};
    }
    return FourierProfile(x(0), std::move(harmonics));
}

}  // namespace dcl
