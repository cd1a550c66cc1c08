#pragma once

// Config-driven batch runs (sweep, search, limit, report) that write CSV/JSON artifacts.

#include "dcl/ensemble.hpp"
#include "dcl/io.hpp"
#include "dcl/search.hpp"

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcl {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOutcome {
    std::vector<std::filesystem::path> files;  // in write order
    std::size_t violations = 0;                // in-range violations found by the run
};

/// {"count", "seed", "n_max", "a0_range": [lo, hi], "sigma", "decay",
///  "hypothesis_filter": {"inequality", "k"}, "positivity_floor"}; every key optional.
EnsembleSpec ensemble_from_json(const nlohmann::json& j, const std::string& pointer = "/ensemble");
nlohmann::json ensemble_to_json(const EnsembleSpec& spec);

/// Inline body object, or {"file": path} resolved against base_dir.
FourierProfile body_from_config(const nlohmann::json& j, const std::filesystem::path& base_dir,
                                const std::string& pointer);

// The identity / lemma / sign suite run over one ensemble.
struct SuiteConfig {
    EnsembleSpec ensemble;
    std::vector<int> k{2, 3, 4, 5, 6, 7, 8};
    int lambda_points = 5;                    // i/(points-1) * k/pi
    std::vector<double> mu_multiples{1, 2, 4};  // mu = -m k
    int alpha_points = 8;                     // (2j+1) pi / points
    int lemma_alphas = 5;                     // random alphas per body for the second lemma
    std::optional<int> nodes;
};

struct IdentityCheck {
    std::string functional;
    std::optional<int> k;
    std::size_t evaluations = 0;
    double max_relative_residual = 0.0;
};

struct LemmaCheck {
    std::string lemma;
    int k = 0;
    std::size_t evaluations = 0;
    double max_residual = 0.0;
};

struct SignCheck {
    InequalityId id = InequalityId::T1;
    std::optional<int> k;
    std::size_t evaluations = 0;
    std::size_t violations = 0;
    std::size_t equalities = 0;
    std::size_t family_mismatches = 0;
    double min_slack = 0.0;
};

struct SuiteResult {
    std::vector<IdentityCheck> identities;
    std::vector<LemmaCheck> lemmas;
    std::vector<SignCheck> signs;
};

SuiteConfig suite_config_from_json(const nlohmann::json& j);
SuiteResult run_suite(const SuiteConfig& config);

/// Each writes its artifacts into out_dir (created if missing). Throw ConfigError, IoError,
/// ParseError, PositivityError, HypothesisError or ParameterRangeError.
RunOutcome run_sweep(const nlohmann::json& config, const std::filesystem::path& out_dir,
                     const std::filesystem::path& base_dir = ".");
RunOutcome run_search(const nlohmann::json& config, const std::filesystem::path& out_dir,
                      const std::filesystem::path& base_dir = ".");
RunOutcome run_limit(const nlohmann::json& config, const std::filesystem::path& out_dir,
                     const std::filesystem::path& base_dir = ".");
RunOutcome run_report(const nlohmann::json& config, const std::filesystem::path& out_dir,
                      const std::filesystem::path& base_dir = ".");

}  // namespace dcl
