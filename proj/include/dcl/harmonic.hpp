#pragma once

// Truncated Fourier radial profiles of planar star bodies.
//
// A profile stores rho(theta) = a0/2 + sum_{n=1}^{N} (a_n cos n theta + b_n sin n theta).
// Harmonic indices are 1-based; a0 is kept apart because of the 1/2 convention.

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcl {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// An angle in radians, canonicalized to [0, 2pi).
class Angle {
public:
    constexpr Angle() = default;
    explicit Angle(double radians);

    double value() const noexcept { return value_; }

private:
    double value_ = 0.0;
};

struct Harmonic {
    double a = 0.0;
    double b = 0.0;

    double energy() const noexcept { return a * a + b * b; }
    bool operator==(const Harmonic&) const = default;
};

class FourierProfile {
public:
    FourierProfile() = default;
    /// Throws std::invalid_argument on non-finite coefficients.
    explicit FourierProfile(double a0, std::vector<Harmonic> harmonics = {});

    double a0() const noexcept { return a0_; }
    double mean_radius() const noexcept { return 0.5 * a0_; }
    int max_order() const noexcept { return static_cast<int>(harmonics_.size()); }
    std::span<const Harmonic> harmonics() const noexcept { return harmonics_; }

    /// Coefficient pair at 1-based index n; zero beyond max_order().
    Harmonic harmonic(int n) const;

    /// Sum over n >= 1 of a_n^2 + b_n^2.
    double harmonic_energy() const noexcept;

    FourierProfile with_harmonic(int n, Harmonic h) const;
    FourierProfile scaled(double c) const;
    /// Multiplies every harmonic (not a0) by c.
    FourierProfile shrunk(double c) const;
    /// Drops trailing all-zero harmonics.
    FourierProfile trimmed() const;

    bool operator==(const FourierProfile&) const = default;

private:
    double a0_ = 0.0;
    std::vector<Harmonic> harmonics_;
};

double eval_radial(const FourierProfile& profile, double theta);
inline double eval_radial(const FourierProfile& profile, Angle theta) {
    return eval_radial(profile, theta.value());
}

double eval_radial_derivative(const FourierProfile& profile, double theta);
inline double eval_radial_derivative(const FourierProfile& profile, Angle theta) {
    return eval_radial_derivative(profile, theta.value());
}

/// rho_k(theta) = sum_{m=0}^{k-1} rho(theta + 2 m pi / k), by direct summation.
double k_order_radial(const FourierProfile& profile, int k, double theta);
inline double k_order_radial(const FourierProfile& profile, int k, Angle theta) {
    return k_order_radial(profile, k, theta.value());
}

/// Same quantity via harmonic filtering: only indices that are multiples of k survive, scaled by k.
double k_order_radial_filtered(const FourierProfile& profile, int k, double theta);

/// Throws std::invalid_argument unless k >= 2.
void require_order(int k);

enum class PositivityCertificate { sufficient_condition, grid_verified };

class PositivityError : public std::runtime_error {
public:
    PositivityError(double argmin, double value);

    double argmin() const noexcept { return argmin_; }
    double value() const noexcept { return value_; }

private:
    double argmin_;
    double value_;
};

class StarBody;

/// Grid node count used when none is given: max(1024, 8 * N_max).
int default_positivity_nodes(const FourierProfile& profile);

/// Certifies rho > 0. Throws PositivityError with the grid argmin on failure,
/// std::invalid_argument if grid_nodes is below the default floor.
StarBody validate_positivity(const FourierProfile& profile, std::optional<int> grid_nodes = {});

/// Minimum of rho over a uniform grid and where it occurs.
std::pair<double, double> grid_minimum(const FourierProfile& profile, int nodes);

class StarBody {
public:
    const FourierProfile& profile() const noexcept { return profile_; }
    double min_radial() const noexcept { return min_radial_; }
    PositivityCertificate certificate() const noexcept { return certificate_; }

    double radial(double theta) const { return eval_radial(profile_, theta); }
    int max_order() const noexcept { return profile_.max_order(); }

    static StarBody disc(double radius);

private:
    friend StarBody validate_positivity(const FourierProfile&, std::optional<int>);
    StarBody(FourierProfile profile, double min_radial, PositivityCertificate certificate)
        : profile_(std::move(profile)), min_radial_(min_radial), certificate_(certificate) {}

    FourierProfile profile_;
    double min_radial_;
    PositivityCertificate certificate_;
};

/// Zeroes every coefficient whose index is a multiple of 2k (n/k even).
FourierProfile project_even_k_harmonics(const FourierProfile& profile, int k);

/// Indices n with n/k even and |a_n| or |b_n| above tol.
std::vector<int> even_k_violations(const FourierProfile& profile, int k, double tol = 1e-12);

enum class FamilyKind { disc, first_harmonic, k_multiples, even_k_multiples };

struct EqualityFamily {
    FamilyKind kind = FamilyKind::disc;
    int k = 0;  // only for k_multiples / even_k_multiples

    /// Whether index n may carry a nonzero coefficient.
    bool allows(int n) const;
    bool operator==(const EqualityFamily&) const = default;
};

std::string to_string(FamilyKind kind);
std::string to_string(const EqualityFamily& family);
std::optional<FamilyKind> family_kind_from_string(const std::string& name);

/// L2 norm of the coefficients the family forbids.
double off_family_norm(const EqualityFamily& family, const FourierProfile& profile);
bool family_admits(const EqualityFamily& family, const FourierProfile& profile, double tol = 1e-9);

/// Builds a body with exactly the family's sparsity pattern. Throws std::invalid_argument
/// when a coefficient sits at a forbidden index and PositivityError when rho is not positive.
StarBody make_equality_family(const EqualityFamily& family, double a0,
                              std::span<const std::pair<int, Harmonic>> coefficients = {});

struct RadialSample {
    double theta = 0.0;
    double radius = 0.0;
};

/// Recovers coefficients up to max_order from samples: DFT on a uniform grid,
/// least squares otherwise. Throws std::invalid_argument when underdetermined.
FourierProfile fit_profile(std::span<const RadialSample> samples, int max_order);

}  // namespace dcl
