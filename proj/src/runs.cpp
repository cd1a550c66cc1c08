#include "dcl/runs.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <random>
#include <system_error>

namespace dcl {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string join(const std::string& pointer, const std::string& key) {
    return pointer + "/" + key;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& pointer) {
    if (!j.is_object()) {
        throw ConfigError(fmt::format("{}: expected an object", pointer.empty() ? "/" : pointer));
    }
    for (const auto& [key, value] : j.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!known) {
            throw ConfigError(fmt::format("{}: unknown key", join(pointer, key)));
        }
    }
}

double as_double(const json& v, const std::string& at) {
    if (!v.is_number()) {
        throw ConfigError(fmt::format("{}: expected a number", at));
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw ConfigError(fmt::format("{}: expected a finite number", at));
    }
    return d;
}

long long as_integer(const json& v, const std::string& at) {
    if (!v.is_number_integer()) {
        throw ConfigError(fmt::format("{}: expected an integer", at));
    }
    return v.get<long long>();
}

int as_int(const json& v, const std::string& at) {
    const auto x = as_integer(v, at);
    if (x < -1000000000LL || x > 1000000000LL) {
        throw ConfigError(fmt::format("{}: integer out of range", at));
    }
    return static_cast<int>(x);
}

bool as_bool(const json& v, const std::string& at) {
    if (!v.is_boolean()) {
        throw ConfigError(fmt::format("{}: expected true or false", at));
    }
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& at) {
    if (!v.is_string()) {
        throw ConfigError(fmt::format("{}: expected a string", at));
    }
    return v.get<std::string>();
}

template <typename T, typename Conv>
std::vector<T> as_list(const json& v, const std::string& at, Conv conv) {
    std::vector<T> out;
    if (v.is_number()) {
        out.push_back(conv(v, at));
        return out;
    }
    if (!v.is_array()) {
        throw ConfigError(fmt::format("{}: expected a number or an array of numbers", at));
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(conv(v[i], fmt::format("{}/{}", at, i)));
    }
    return out;
}

std::optional<double> opt_double(const json& j, const char* key, const std::string& pointer) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return as_double(j.at(key), join(pointer, key));
}

std::optional<int> opt_int(const json& j, const char* key, const std::string& pointer) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return as_int(j.at(key), join(pointer, key));
}

InequalityId inequality_at(const json& j, const char* key, const std::string& pointer) {
    if (!j.contains(key)) {
        throw ConfigError(fmt::format("{}: missing", join(pointer, key)));
    }
    const auto name = as_string(j.at(key), join(pointer, key));
    const auto id = inequality_from_string(name);
    if (!id) {
        throw ConfigError(fmt::format("{}: unknown inequality \"{}\"", join(pointer, key), name));
    }
    return *id;
}

VerifyOptions verify_options_from(const json& config) {
    VerifyOptions opts;
    if (config.contains("allow_out_of_range")) {
        opts.allow_out_of_range = as_bool(config.at("allow_out_of_range"), "/allow_out_of_range");
    }
    if (config.contains("project")) {
        opts.project = as_bool(config.at("project"), "/project");
    }
    if (config.contains("cross_check")) {
        opts.cross_check = as_bool(config.at("cross_check"), "/cross_check");
    }
    opts.nodes = opt_int(config, "nodes", "");
    if (auto tol = opt_double(config, "tol", "")) {
        if (!(*tol > 0.0)) {
            throw ConfigError("/tol: must be positive");
        }
        opts.tol_scale = *tol;
    }
    return opts;
}

void prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError(fmt::format("cannot create output directory {}", dir.string()));
    }
}

json optional_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::string cell(const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string{};
}

double relative(double closed, double oracle) {
    const double scale = std::max(std::abs(closed), std::abs(oracle));
    return scale > 0.0 ? std::abs(closed - oracle) / scale : 0.0;
}

std::mt19937_64 stream(std::uint64_t seed, std::size_t index, std::uint32_t salt) {
    const auto idx = static_cast<std::uint64_t>(index);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32), salt};
    return std::mt19937_64(seq);
}

Parameters search_parameters(const json& config) {
    Parameters p;
    p.k = opt_int(config, "k", "");
    p.lambda = opt_double(config, "lambda", "");
    p.mu = opt_double(config, "mu", "");
    p.alpha = opt_double(config, "alpha", "");
    return p;
}

}  // namespace

EnsembleSpec ensemble_from_json(const json& j, const std::string& pointer) {
    check_keys(j, {"count", "seed", "n_max", "a0_range", "sigma", "decay", "hypothesis_filter", "positivity_floor"},
               pointer);
    EnsembleSpec spec;
    if (j.contains("count")) {
        const auto c = as_integer(j.at("count"), join(pointer, "count"));
        if (c < 1) {
            throw ConfigError(fmt::format("{}: must be >= 1", join(pointer, "count")));
        }
        spec.count = static_cast<std::size_t>(c);
    }
    if (j.contains("seed")) {
        const auto& v = j.at("seed");
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
            throw ConfigError(fmt::format("{}: expected a non-negative integer", join(pointer, "seed")));
        }
        spec.seed = v.get<std::uint64_t>();
    }
    if (auto n = opt_int(j, "n_max", pointer)) {
        spec.max_order = *n;
    }
    if (j.contains("a0_range")) {
        const auto r = as_list<double>(j.at("a0_range"), join(pointer, "a0_range"), as_double);
        if (r.size() != 2) {
            throw ConfigError(fmt::format("{}: expected [min, max]", join(pointer, "a0_range")));
        }
        spec.a0_min = r[0];
        spec.a0_max = r[1];
    }
    if (auto v = opt_double(j, "sigma", pointer)) {
        spec.sigma = *v;
    }
    if (auto v = opt_double(j, "decay", pointer)) {
        spec.decay = *v;
    }
    if (auto v = opt_double(j, "positivity_floor", pointer)) {
        spec.positivity_floor = *v;
    }
    if (j.contains("hypothesis_filter") && !j.at("hypothesis_filter").is_null()) {
        const auto at = join(pointer, "hypothesis_filter");
        const auto& f = j.at("hypothesis_filter");
        check_keys(f, {"inequality", "k"}, at);
        HypothesisFilter filter;
        filter.id = inequality_at(f, "inequality", at);
        if (!f.contains("k")) {
            throw ConfigError(fmt::format("{}/k: missing", at));
        }
        filter.k = as_int(f.at("k"), at + "/k");
        spec.hypothesis_filter = filter;
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(fmt::format("{}: {}", pointer, e.what()));
    }
    return spec;
}

json ensemble_to_json(const EnsembleSpec& spec) {
    json filter = nullptr;
    if (spec.hypothesis_filter) {
        filter = json{{"inequality", to_string(spec.hypothesis_filter->id)}, {"k", spec.hypothesis_filter->k}};
    }
    return json{{"count", spec.count},
                {"seed", spec.seed},
                {"n_max", spec.max_order},
                {"a0_range", json::array({spec.a0_min, spec.a0_max})},
                {"sigma", spec.sigma},
                {"decay", spec.decay},
                {"hypothesis_filter", std::move(filter)},
                {"positivity_floor", spec.positivity_floor}};
}

FourierProfile body_from_config(const json& j, const fs::path& base_dir, const std::string& pointer) {
    if (j.is_object() && j.contains("file")) {
        check_keys(j, {"file"}, pointer);
        fs::path file = as_string(j.at("file"), join(pointer, "file"));
        if (file.is_relative()) {
            file = base_dir / file;
        }
        return load_profile(file);
    }
    return profile_from_json(j, pointer);
}

// ---- sweep ----

RunOutcome run_sweep(const json& config, const fs::path& out_dir, const fs::path& base_dir) {
    check_keys(config,
               {"ensemble", "bodies", "inequality", "k", "lambda", "mu", "alpha", "nodes", "tol",
                "allow_out_of_range", "project", "cross_check"},
               "");
    SweepGrid grid;
    grid.id = inequality_at(config, "inequality", "");
    if (config.contains("k")) {
        grid.k = as_list<int>(config.at("k"), "/k", as_int);
    }
    if (config.contains("lambda")) {
        grid.lambda = as_list<double>(config.at("lambda"), "/lambda", as_double);
    }
    if (config.contains("mu")) {
        grid.mu = as_list<double>(config.at("mu"), "/mu", as_double);
    }
    if (config.contains("alpha")) {
        grid.alpha = as_list<double>(config.at("alpha"), "/alpha", as_double);
    }
    try {
        (void)grid.points();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const auto opts = verify_options_from(config);

    if (config.contains("ensemble") && config.contains("bodies")) {
        throw ConfigError("give either /ensemble or /bodies, not both");
    }
    std::optional<EnsembleSpec> spec;
    std::vector<StarBody> bodies;
    if (config.contains("bodies")) {
        const auto& list = config.at("bodies");
        if (!list.is_array() || list.empty()) {
            throw ConfigError("/bodies: expected a non-empty array");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            bodies.push_back(validate_positivity(body_from_config(list[i], base_dir, fmt::format("/bodies/{}", i))));
        }
    } else {
        spec = ensemble_from_json(config.value("ensemble", json::object()));
        bodies = generate_ensemble(*spec);
    }

    const auto result = sweep(bodies, grid, opts);

    prepare_dir(out_dir);
    std::string csv = csv_header() + "\n";
    for (const auto& row : result.rows) {
        csv += csv_row(row.report);
        csv += "\n";
    }
    const auto& s = result.summary;
    json summary{
        {"inequality", to_string(grid.id)},
        {"bodies", bodies.size()},
        {"ensemble", spec ? ensemble_to_json(*spec) : json(nullptr)},
        {"grid", {{"k", grid.k}, {"lambda", grid.lambda}, {"mu", grid.mu}, {"alpha", grid.alpha}}},
        {"reports", s.reports},
        {"violations", s.violations},
        {"expected_violations", s.expected_violations},
        {"equalities", s.equalities},
        {"family_mismatches", s.family_mismatches},
        {"min_slack", s.min_slack},
        {"argmin_body", s.argmin_body},
        {"argmin_parameters", parameters_to_json(s.argmin_params)},
        {"max_oracle_residual", s.max_oracle_residual},
    };
    RunOutcome out;
    out.violations = s.violations;
    out.files = {out_dir / "sweep.csv", out_dir / "sweep_summary.json"};
    write_text_file(out.files[0], csv);
    write_text_file(out.files[1], dump_json(summary));
    return out;
}

// ---- search ----

RunOutcome run_search(const json& config, const fs::path& out_dir, const fs::path& base_dir) {
    check_keys(config,
               {"inequality", "k", "lambda", "mu", "alpha", "start", "ensemble", "starts", "partner", "step_rule",
                "max_iters", "convergence_tol", "barrier_weight", "line_search_tol"},
               "");
    SearchSpec base;
    base.id = inequality_at(config, "inequality", "");
    base.params = search_parameters(config);
    if (config.contains("step_rule")) {
        const auto name = as_string(config.at("step_rule"), "/step_rule");
        const auto rule = step_rule_from_string(name);
        if (!rule) {
            throw ConfigError(fmt::format("/step_rule: unknown rule \"{}\"", name));
        }
        base.step_rule = *rule;
    }
    if (auto v = opt_int(config, "max_iters", "")) {
        if (*v < 0) {
            throw ConfigError("/max_iters: must be >= 0");
        }
        base.max_iters = *v;
    }
    if (auto v = opt_double(config, "convergence_tol", "")) {
        base.convergence_tol = *v;
    }
    if (auto v = opt_double(config, "barrier_weight", "")) {
        if (*v < 0.0) {
            throw ConfigError("/barrier_weight: must be >= 0");
        }
        base.barrier_weight = *v;
    }
    if (auto v = opt_double(config, "line_search_tol", "")) {
        base.line_search_tol = *v;
    }
    if (config.contains("partner")) {
        base.partner = validate_positivity(body_from_config(config.at("partner"), base_dir, "/partner"));
    }
    if (needs_partner(base.id) && !base.partner) {
        throw ConfigError(fmt::format("/partner: required for {}", to_string(base.id)));
    }

    if (config.contains("start") == config.contains("ensemble")) {
        throw ConfigError("give exactly one of /start or /ensemble");
    }
    std::vector<StarBody> starts;
    std::optional<EnsembleSpec> spec;
    if (config.contains("start")) {
        if (config.contains("starts")) {
            throw ConfigError("/starts: only valid with /ensemble");
        }
        starts.push_back(validate_positivity(body_from_config(config.at("start"), base_dir, "/start")));
    } else {
        spec = ensemble_from_json(config.at("ensemble"));
        if (config.contains("starts")) {
            const auto n = as_integer(config.at("starts"), "/starts");
            if (n < 1 || static_cast<std::size_t>(n) > spec->count) {
                throw ConfigError("/starts: must lie in [1, ensemble count]");
            }
            spec->count = static_cast<std::size_t>(n);
        }
        starts = generate_ensemble(*spec);
    }

    std::vector<std::optional<SearchResult>> results(starts.size());
    parallel_for(starts.size(), [&](std::size_t i) {
        SearchSpec s = base;
        s.start = starts[i];
        results[i] = minimize_slack(s);
    });

    const auto family = mandated_family(base.id, base.params);
    json runs = json::array();
    std::string trace = "run,iteration,slack,objective,step_length,min_radial\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = *results[i];
        runs.push_back({{"run", i},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"budget_exhausted", r.budget_exhausted},
                        {"start_slack", r.trace.front().slack},
                        {"terminal_slack", r.terminal_slack},
                        {"off_family_norm", r.off_family_norm},
                        {"terminal_min_radial", r.terminal.min_radial()},
                        {"terminal_body", profile_to_json(r.terminal.profile())}});
        for (const auto& step : r.trace) {
            trace += fmt::format("{},{},{},{},{},{}\n", i, step.iteration, format_double(step.slack),
                                 format_double(step.objective), format_double(step.step_length),
                                 format_double(step.min_radial));
        }
    }
    json doc{{"inequality", to_string(base.id)},
             {"parameters", parameters_to_json(base.params)},
             {"step_rule", to_string(base.step_rule)},
             {"max_iters", base.max_iters},
             {"predicted_family", family ? json(to_string(*family)) : json(nullptr)},
             {"ensemble", spec ? ensemble_to_json(*spec) : json(nullptr)},
             {"runs", std::move(runs)}};

    prepare_dir(out_dir);
    RunOutcome out;
    out.files = {out_dir / "search.json", out_dir / "search_trace.csv"};
    write_text_file(out.files[0], dump_json(doc));
    write_text_file(out.files[1], trace);
    return out;
}

// ---- limit ----

RunOutcome run_limit(const json& config, const fs::path& out_dir, const fs::path& base_dir) {
    check_keys(config, {"s", "t", "alpha", "k", "k_max", "nodes"}, "");
    if (!config.contains("s")) {
        throw ConfigError("/s: missing");
    }
    const auto s = validate_positivity(body_from_config(config.at("s"), base_dir, "/s"));
    const auto t = config.contains("t") ? validate_positivity(body_from_config(config.at("t"), base_dir, "/t")) : s;
    const auto alpha = opt_double(config, "alpha", "");
    if (!alpha) {
        throw ConfigError("/alpha: missing");
    }
    const int n_max = std::max(s.max_order(), t.max_order());
    std::vector<int> ks;
    if (config.contains("k") && config.contains("k_max")) {
        throw ConfigError("give either /k or /k_max, not both");
    }
    if (config.contains("k")) {
        ks = as_list<int>(config.at("k"), "/k", as_int);
    } else {
        const int k_max = opt_int(config, "k_max", "").value_or(std::max(2, n_max + 4));
        if (k_max < 2) {
            throw ConfigError("/k_max: must be >= 2");
        }
        for (int k = 2; k <= k_max; ++k) {
            ks.push_back(k);
        }
    }
    std::vector<LimitPoint> points;
    try {
        points = limit_sequence(s, t, Angle(*alpha), ks, opt_int(config, "nodes", ""));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    std::string csv = "k,value,oracle_value,deviation,oracle_deviation,predicted_deviation\n";
    json rows = json::array();
    std::optional<double> beyond;
    for (const auto& p : points) {
        csv += fmt::format("{},{},{},{},{},{}\n", p.k, format_double(p.value), format_double(p.oracle_value),
                           format_double(p.deviation), format_double(p.oracle_deviation),
                           format_double(p.predicted_deviation));
        rows.push_back({{"k", p.k},
                        {"value", p.value},
                        {"oracle_value", p.oracle_value},
                        {"deviation", p.deviation},
                        {"oracle_deviation", p.oracle_deviation},
                        {"predicted_deviation", p.predicted_deviation}});
        if (p.k > n_max) {
            beyond = std::max(beyond.value_or(0.0), p.deviation);
        }
    }
    const double limit = closed_form::dual_mixed_area_disk(s.profile()) *
                         closed_form::dual_mixed_area_disk(t.profile()) / kPi;
    json doc{{"alpha", *alpha},
             {"n_max", n_max},
             {"limit", limit},
             {"max_deviation_beyond_n_max", optional_json(beyond)},
             {"points", std::move(rows)}};

    prepare_dir(out_dir);
    RunOutcome out;
    out.files = {out_dir / "limit.csv", out_dir / "limit.json"};
    write_text_file(out.files[0], csv);
    write_text_file(out.files[1], dump_json(doc));
    return out;
}

// ---- report ----

SuiteConfig suite_config_from_json(const json& j) {
    check_keys(j, {"ensemble", "k", "lambda_points", "mu_multiples", "alpha_points", "lemma_alphas", "nodes"}, "");
    SuiteConfig c;
    EnsembleSpec defaults;
    defaults.count = 1000;
    defaults.max_order = 32;
    c.ensemble = defaults;
    if (j.contains("ensemble")) {
        // fill unspecified keys from the suite defaults rather than the generic ones
        json merged = ensemble_to_json(defaults);
        merged.erase("hypothesis_filter");
        check_keys(j.at("ensemble"),
                   {"count", "seed", "n_max", "a0_range", "sigma", "decay", "positivity_floor"}, "/ensemble");
        merged.update(j.at("ensemble"));
        c.ensemble = ensemble_from_json(merged);
    }
    if (j.contains("k")) {
        c.k = as_list<int>(j.at("k"), "/k", as_int);
    }
    if (auto v = opt_int(j, "lambda_points", "")) {
        c.lambda_points = *v;
    }
    if (j.contains("mu_multiples")) {
        c.mu_multiples = as_list<double>(j.at("mu_multiples"), "/mu_multiples", as_double);
    }
    if (auto v = opt_int(j, "alpha_points", "")) {
        c.alpha_points = *v;
    }
    if (auto v = opt_int(j, "lemma_alphas", "")) {
        c.lemma_alphas = *v;
    }
    c.nodes = opt_int(j, "nodes", "");
    return c;
}

namespace {

struct SignAcc {
    std::size_t evaluations = 0;
    std::size_t violations = 0;
    std::size_t equalities = 0;
    std::size_t mismatches = 0;
    double min_slack = std::numeric_limits<double>::infinity();

    void add(const SlackReport& r) {
        ++evaluations;
        if (r.verdict == Verdict::violated) {
            ++violations;
        }
        if (r.verdict == Verdict::equality) {
            ++equalities;
        }
        if (r.family_mismatch()) {
            ++mismatches;
        }
        min_slack = std::min(min_slack, r.slack);
    }
};

struct BodyStats {
    std::vector<double> identity;
    std::vector<std::size_t> identity_count;
    std::vector<double> lemma;
    std::vector<std::size_t> lemma_count;
    std::vector<SignAcc> sign;
};

void validate_suite(const SuiteConfig& c) {
    if (c.k.empty()) {
        throw ConfigError("/k: need at least one order");
    }
    for (int k : c.k) {
        if (k < 2) {
            throw ConfigError("/k: orders must be >= 2");
        }
    }
    if (c.lambda_points < 2) {
        throw ConfigError("/lambda_points: must be >= 2");
    }
    if (c.alpha_points < 1) {
        throw ConfigError("/alpha_points: must be >= 1");
    }
    if (c.lemma_alphas < 0) {
        throw ConfigError("/lemma_alphas: must be >= 0");
    }
    for (double m : c.mu_multiples) {
        if (!(m >= 1.0)) {
            throw ConfigError("/mu_multiples: entries must be >= 1 (mu = -m k)");
        }
    }
    if (c.nodes && *c.nodes < 4) {
        throw ConfigError("/nodes: must be >= 4");
    }
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& c) {
    validate_suite(c);
    SuiteResult out;

    // identity rows: three single-body functionals, the distance to the partner, then per-k chords
    for (const char* name : {"area", "oriented_area", "dual_mixed_area_disk", "dual_l2_distance_squared"}) {
        out.identities.push_back({name, std::nullopt, 0, 0.0});
    }
    for (int k : c.k) {
        out.identities.push_back({"chord_self_integral", k, 0, 0.0});
        out.identities.push_back({"chord_mixed_integral", k, 0, 0.0});
    }
    for (int k : c.k) {
        out.lemmas.push_back({"lemma1", k, 0, 0.0});
        out.lemmas.push_back({"lemma2", k, 0, 0.0});
    }
    const InequalityId per_k[] = {InequalityId::T1, InequalityId::stab35, InequalityId::T2,
                                  InequalityId::stab37, InequalityId::C31, InequalityId::T3};
    for (auto id : per_k) {
        for (int k : c.k) {
            out.signs.push_back({id, k, 0, 0, 0, 0, 0.0});
        }
    }
    out.signs.push_back({InequalityId::dual_iso, std::nullopt, 0, 0, 0, 0, 0.0});
    out.signs.push_back({InequalityId::mixed_iso, std::nullopt, 0, 0, 0, 0, 0.0});

    EnsembleSpec plain = c.ensemble;
    plain.hypothesis_filter.reset();
    const auto bodies = generate_ensemble(plain);
    // the first theorem and its stability bound need bodies without harmonics at n/k even
    std::vector<std::vector<StarBody>> filtered;
    for (int k : c.k) {
        EnsembleSpec f = plain;
        f.hypothesis_filter = HypothesisFilter{InequalityId::T1, k};
        filtered.push_back(generate_ensemble(f));
    }

    std::vector<double> alphas;
    for (int j = 0; j < c.alpha_points; ++j) {
        alphas.push_back((2 * j + 1) * kPi / c.alpha_points);
    }
    VerifyOptions opts;
    opts.cross_check = false;  // the identity rows carry the oracle comparison
    opts.nodes = c.nodes;

    const std::size_t n = bodies.size();
    const std::size_t nk = c.k.size();
    std::vector<BodyStats> stats(n);
    parallel_for(n, [&](std::size_t i) {
        auto& st = stats[i];
        st.identity.assign(out.identities.size(), 0.0);
        st.identity_count.assign(out.identities.size(), 0);
        st.lemma.assign(out.lemmas.size(), 0.0);
        st.lemma_count.assign(out.lemmas.size(), 0);
        st.sign.assign(out.signs.size(), {});

        const auto& s = bodies[i];
        const auto& t = bodies[(i + 1) % n];
        const auto& ps = s.profile();
        const auto& pt = t.profile();
        const auto spec = c.nodes ? QuadratureSpec{*c.nodes, kTwoPi} : QuadratureSpec::for_profiles(ps, pt);
        auto note = [&](std::size_t row, double closed, double oracle) {
            st.identity[row] = std::max(st.identity[row], relative(closed, oracle));
            ++st.identity_count[row];
        };
        note(0, closed_form::area(ps), quadrature::area(ps, spec));
        note(1, closed_form::oriented_area(ps), quadrature::oriented_area(ps, spec));
        note(2, closed_form::dual_mixed_area_disk(ps), quadrature::dual_mixed_area_disk(ps, spec));
        note(3, closed_form::dual_l2_distance_squared(ps, pt), quadrature::dual_l2_distance_squared(ps, pt, spec));

        auto rng = stream(plain.seed, i, 0x6c656d6dU);
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        std::vector<double> lemma_alphas(static_cast<std::size_t>(c.lemma_alphas));
        for (auto& a : lemma_alphas) {
            a = angle(rng);
        }

        for (std::size_t ki = 0; ki < nk; ++ki) {
            const int k = c.k[ki];
            const double a_id = alphas[(i + ki) % alphas.size()];
            note(4 + 2 * ki, closed_form::chord_self_integral(ps, k), quadrature::chord_self_integral(ps, k, spec));
            note(5 + 2 * ki, closed_form::chord_mixed_integral(ps, pt, k, a_id),
                 quadrature::chord_mixed_integral(ps, pt, k, a_id, spec));

            const std::size_t l1 = 2 * ki;
            st.lemma[l1] = lemma_identity_residual(s, k, Lemma::lemma1, std::nullopt, nullptr, c.nodes);
            st.lemma_count[l1] = 1;
            for (double a : lemma_alphas) {
                st.lemma[l1 + 1] = std::max(st.lemma[l1 + 1],
                                            lemma_identity_residual(s, k, Lemma::lemma2, Angle(a), &t, c.nodes));
                ++st.lemma_count[l1 + 1];
            }

            const auto& sf = filtered[ki][i];
            for (int li = 0; li < c.lambda_points; ++li) {
                const double lambda = li * (k / kPi) / (c.lambda_points - 1);
                st.sign[0 * nk + ki].add(slack_theorem1(sf, k, lambda, opts));
                st.sign[1 * nk + ki].add(stability_margin_35(sf, k, lambda, opts));
            }
            for (double m : c.mu_multiples) {
                st.sign[2 * nk + ki].add(slack_theorem2(s, k, -m * k, opts));
                st.sign[3 * nk + ki].add(stability_margin_37(s, k, -m * k, opts));
            }
            st.sign[4 * nk + ki].add(slack_corollary31(s, k, opts));
            for (double a : alphas) {
                st.sign[5 * nk + ki].add(slack_theorem3(s, t, k, Angle(a), opts));
            }
        }
        st.sign[6 * nk].add(slack_dual_isoperimetric(s, opts));
        st.sign[6 * nk + 1].add(slack_mixed_isoperimetric(s, t, opts));
    });

    for (std::size_t r = 0; r < out.identities.size(); ++r) {
        for (const auto& st : stats) {
            out.identities[r].max_relative_residual = std::max(out.identities[r].max_relative_residual, st.identity[r]);
            out.identities[r].evaluations += st.identity_count[r];
        }
    }
    for (std::size_t r = 0; r < out.lemmas.size(); ++r) {
        for (const auto& st : stats) {
            out.lemmas[r].max_residual = std::max(out.lemmas[r].max_residual, st.lemma[r]);
            out.lemmas[r].evaluations += st.lemma_count[r];
        }
    }
    for (std::size_t r = 0; r < out.signs.size(); ++r) {
        auto& row = out.signs[r];
        double min_slack = std::numeric_limits<double>::infinity();
        for (const auto& st : stats) {
            const auto& acc = st.sign[r];
            row.evaluations += acc.evaluations;
            row.violations += acc.violations;
            row.equalities += acc.equalities;
            row.family_mismatches += acc.mismatches;
            min_slack = std::min(min_slack, acc.min_slack);
        }
        row.min_slack = min_slack;
    }
    return out;
}

RunOutcome run_report(const json& config, const fs::path& out_dir, const fs::path&) {
    const auto suite = suite_config_from_json(config);
    const auto result = run_suite(suite);

    std::string csv = "suite,name,k,evaluations,max_residual,violations,equalities,family_mismatches,min_slack\n";
    json identities = json::array();
    json lemmas = json::array();
    json signs = json::array();
    double max_identity = 0.0;
    double max_lemma = 0.0;
    std::size_t violations = 0;
    for (const auto& r : result.identities) {
        csv += fmt::format("identity,{},{},{},{},,,,\n", r.functional, cell(r.k), r.evaluations,
                           format_double(r.max_relative_residual));
        identities.push_back({{"functional", r.functional},
                              {"k", r.k ? json(*r.k) : json(nullptr)},
                              {"evaluations", r.evaluations},
                              {"max_relative_residual", r.max_relative_residual}});
        max_identity = std::max(max_identity, r.max_relative_residual);
    }
    for (const auto& r : result.lemmas) {
        csv += fmt::format("lemma,{},{},{},{},,,,\n", r.lemma, r.k, r.evaluations, format_double(r.max_residual));
        lemmas.push_back(
            {{"lemma", r.lemma}, {"k", r.k}, {"evaluations", r.evaluations}, {"max_residual", r.max_residual}});
        max_lemma = std::max(max_lemma, r.max_residual);
    }
    for (const auto& r : result.signs) {
        csv += fmt::format("sign,{},{},{},,{},{},{},{}\n", to_string(r.id), cell(r.k), r.evaluations, r.violations,
                           r.equalities, r.family_mismatches, format_double(r.min_slack));
        signs.push_back({{"inequality", to_string(r.id)},
                         {"k", r.k ? json(*r.k) : json(nullptr)},
                         {"evaluations", r.evaluations},
                         {"violations", r.violations},
                         {"equalities", r.equalities},
                         {"family_mismatches", r.family_mismatches},
                         {"min_slack", r.min_slack}});
        violations += r.violations;
    }
    json doc{{"ensemble", ensemble_to_json(suite.ensemble)},
             {"k", suite.k},
             {"lambda_points", suite.lambda_points},
             {"mu_multiples", suite.mu_multiples},
             {"alpha_points", suite.alpha_points},
             {"lemma_alphas", suite.lemma_alphas},
             {"nodes", suite.nodes ? json(*suite.nodes) : json(nullptr)},
             {"max_identity_residual", max_identity},
             {"max_lemma_residual", max_lemma},
             {"violations", violations},
             {"identities", std::move(identities)},
             {"lemmas", std::move(lemmas)},
             {"signs", std::move(signs)}};

    prepare_dir(out_dir);
    RunOutcome out;
    out.violations = violations;
    out.files = {out_dir / "report.json", out_dir / "report.csv"};
    write_text_file(out.files[0], dump_json(doc));
    write_text_file(out.files[1], csv);
    return out;
}

}  // namespace dcl
