#include "dcl/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fmt/format.h>
#include <mutex>
#include <random>
#include <string>
#include <thread>

namespace dcl {

void EnsembleSpec::validate() const {
    if (count < 1) {
        throw std::invalid_argument("ensemble count must be >= 1");
    }
    if (max_order < 0) {
        throw std::invalid_argument("ensemble n_max must be >= 0");
    }
    if (!(a0_min > 0.0) || !(a0_max >= a0_min)) {
        throw std::invalid_argument("ensemble a0 range must satisfy 0 < min <= max");
    }
    if (!(sigma >= 0.0) || !(decay >= 0.0)) {
        throw std::invalid_argument("ensemble sigma and decay must be >= 0");
    }
    if (!(positivity_floor >= 0.0 && positivity_floor < 1.0)) {
        throw std::invalid_argument("positivity floor must lie in [0, 1)");
    }
    if (hypothesis_filter) {
        require_order(hypothesis_filter->k);
    }
}

namespace {

// Grid minimum with every discrete local minimum polished by golden-section search.
double refined_minimum(const FourierProfile& p, int nodes) {
    const double h = kTwoPi / nodes;
    std::vector<double> r(static_cast<std::size_t>(nodes));
    for (int j = 0; j < nodes; ++j) {
        r[static_cast<std::size_t>(j)] = eval_radial(p, h * j);
    }
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double best = *std::min_element(r.begin(), r.end());
    for (int j = 0; j < nodes; ++j) {
        const double here = r[static_cast<std::size_t>(j)];
        if (here > r[static_cast<std::size_t>((j + nodes - 1) % nodes)] ||
            here > r[static_cast<std::size_t>((j + 1) % nodes)]) {
            continue;
        }
        double lo = h * (j - 1);
        double hi = h * (j + 1);
        double x1 = hi - g * (hi - lo);
        double x2 = lo + g * (hi - lo);
        double f1 = eval_radial(p, x1);
        double f2 = eval_radial(p, x2);
        for (int it = 0; it < 40; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = eval_radial(p, x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = eval_radial(p, x2);
            }
        }
        best = std::min({best, f1, f2});
    }
    return best;
}

}  // namespace

StarBody sample_star_body(const EnsembleSpec& spec, std::size_t index) {
    spec.validate();
    if (index >= spec.count) {
        throw std::out_of_range(fmt::format("body index {} outside ensemble of {}", index, spec.count));
    }
    const auto idx = static_cast<std::uint64_t>(index);
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
    std::mt19937_64 rng(seq);

    const double a0 = std::uniform_real_distribution<double>(spec.a0_min, spec.a0_max)(rng);
    std::vector<Harmonic> harmonics(static_cast<std::size_t>(spec.max_order));
    std::normal_distribution<double> unit(0.0, 1.0);
    for (int n = 1; n <= spec.max_order; ++n) {
        const double sd = spec.sigma / std::pow(static_cast<double>(n), spec.decay);
        const double a = unit(rng);
        const double b = unit(rng);
        if (sd > 0.0) {
            harmonics[static_cast<std::size_t>(n - 1)] = {sd * a, sd * b};
        }
    }
    FourierProfile profile(a0, std::move(harmonics));

    const auto& filter = spec.hypothesis_filter;
    if (filter && (filter->id == InequalityId::T1 || filter->id == InequalityId::stab35)) {
        profile = project_even_k_harmonics(profile, filter->k);
    }

    const double target = spec.positivity_floor * profile.mean_radius();
    const int nodes = default_positivity_nodes(profile);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double minimum = refined_minimum(profile, nodes);
        if (minimum >= target && minimum > 0.0) {
            break;
        }
        const double dip = profile.mean_radius() - minimum;  // > 0 here
        const double factor = (profile.mean_radius() - target) / dip * (1.0 - 1e-9);
        profile = profile.shrunk(factor);
    }
    return validate_positivity(profile);
}

std::vector<StarBody> generate_ensemble(const EnsembleSpec& spec) {
    spec.validate();
    std::vector<std::optional<StarBody>> slots(spec.count);
    parallel_for(spec.count, [&](std::size_t i) { slots[i] = sample_star_body(spec, i); });
    std::vector<StarBody> out;
    out.reserve(spec.count);
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

std::vector<Parameters> SweepGrid::points() const {
    auto require = [&](const auto& values, const char* name) {
        if (values.empty()) {
            throw std::invalid_argument(fmt::format("{} sweep needs a non-empty {} grid", to_string(id), name));
        }
    };
    std::vector<Parameters> out;
    switch (id) {
        case InequalityId::T1:
        case InequalityId::stab35:
            require(k, "k");
            require(lambda, "lambda");
            for (int kk : k) {
                for (double l : lambda) {
                    out.push_back({kk, l, {}, {}});
                }
            }
            break;
        case InequalityId::T2:
        case InequalityId::stab37:
            require(k, "k");
            require(mu, "mu");
            for (int kk : k) {
                for (double m : mu) {
                    out.push_back({kk, {}, m, {}});
                }
            }
            break;
        case InequalityId::C31:
            require(k, "k");
            for (int kk : k) {
                out.push_back({kk, {}, {}, {}});
            }
            break;
        case InequalityId::T3:
            require(k, "k");
            require(alpha, "alpha");
            for (int kk : k) {
                for (double a : alpha) {
                    out.push_back({kk, {}, {}, a});
                }
            }
            break;
        case InequalityId::dual_iso:
        case InequalityId::mixed_iso:
            out.push_back({});
            break;
    }
    return out;
}

SweepResult sweep(std::span<const StarBody> bodies, const SweepGrid& grid, const VerifyOptions& opts) {
    if (bodies.empty()) {
        throw std::invalid_argument("sweep needs at least one body");
    }
    const auto points = grid.points();
    const std::size_t n = bodies.size();
    std::vector<std::vector<SweepRow>> per_body(n);
    parallel_for(n, [&](std::size_t i) {
        const std::size_t partner = (i + 1) % n;
        auto& rows = per_body[i];
        rows.reserve(points.size());
        for (const auto& p : points) {
            rows.push_back({i, partner, evaluate_inequality(grid.id, bodies[i], &bodies[partner], p, opts)});
        }
    });

    SweepResult out;
    out.rows.reserve(n * points.size());
    auto& sum = out.summary;
    bool first = true;
    for (auto& rows : per_body) {
        for (auto& row : rows) {
            const auto& r = row.report;
            ++sum.reports;
            if (r.verdict == Verdict::violated) {
                if (r.out_of_range) {
                    ++sum.expected_violations;
                } else {
                    ++sum.violations;
                }
            }
            if (r.verdict == Verdict::equality) {
                ++sum.equalities;
            }
            if (r.family_mismatch()) {
                ++sum.family_mismatches;
            }
            if (first || r.slack < sum.min_slack) {
                sum.min_slack = r.slack;
                sum.argmin_body = row.body;
                sum.argmin_params = r.params;
                first = false;
            }
            if (r.oracle_residual) {
                const double scale = std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
                sum.max_oracle_residual = std::max(sum.max_oracle_residual, *r.oracle_residual / scale);
            }
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DCL_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) {
                n = std::min(n, static_cast<unsigned>(cap));
            }
        } catch (const std::exception&) {
            // ignore malformed values
        }
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    parallel_for(n, fn, worker_count());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned workers) {
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::size_t error_index = n;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    // keep the lowest failing index so the reported error is reproducible
                    std::lock_guard lock(error_mutex);
                    if (i < error_index) {
                        error_index = i;
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace dcl
