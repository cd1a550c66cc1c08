// dcl command-line tool. Talks to the library only through the C interface.

#include "dcl/dcl.h"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct BodyDeleter {
    void operator()(dcl_body* b) const { dcl_body_free(b); }
};
using Body = std::unique_ptr<dcl_body, BodyDeleter>;

int exit_code(dcl_status status) {
    switch (status) {
        case DCL_OK: return 0;
        case DCL_VIOLATION: return 1;
        case DCL_ERR_PARSE:
        case DCL_ERR_ARGUMENT: return 2;
        case DCL_ERR_POSITIVITY: return 3;
        case DCL_ERR_HYPOTHESIS: return 4;
        case DCL_ERR_IO: return 5;
        case DCL_ERR_INTERNAL: break;
    }
    return 70;
}

int report_error(dcl_status status) {
    std::cerr << "dcl: " << dcl_status_name(status) << ": " << dcl_last_error() << "\n";
    return exit_code(status);
}

struct Failure {
    dcl_status status;
};

Body load(const std::string& path) {
    dcl_body* raw = nullptr;
    const auto st = dcl_body_load(path.c_str(), &raw);
    if (st != DCL_OK) {
        throw Failure{st};
    }
    return Body(raw);
}

// shortest text that reads back to the same double
std::string num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

struct EvalArgs {
    std::string body;
    std::string functionals = "area";
    std::string partner;
    int k = 2;
    double alpha = 0.0;
    int nodes = 0;
};

int cmd_eval(const EvalArgs& a) {
    const auto s = load(a.body);
    Body t;
    if (!a.partner.empty()) {
        t = load(a.partner);
    }
    const auto names = split(a.functionals);
    if (names.empty()) {
        std::cerr << "dcl: --functional needs at least one name\n";
        return 2;
    }
    for (const auto& name : names) {
        double closed = 0.0;
        double quad = 0.0;
        const auto st = dcl_functional(s.get(), t.get(), name.c_str(), a.k, a.alpha, a.nodes, &closed, &quad);
        if (st != DCL_OK) {
            return report_error(st);
        }
        std::cout << name << " = " << num(closed) << " (closed) / " << num(quad) << " (quadrature), residual "
                  << num(std::abs(closed - quad)) << "\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string body;
    std::string partner;
    std::string inequality;
    std::optional<int> k;
    std::optional<double> lambda;
    std::optional<double> mu;
    std::optional<double> alpha;
    int nodes = 0;
    double tol = 1e-9;
    bool allow_out_of_range = false;
    bool project = false;
    bool no_cross_check = false;
};

int cmd_verify(const VerifyArgs& a) {
    const auto s = load(a.body);
    Body t;
    if (!a.partner.empty()) {
        t = load(a.partner);
    }
    dcl_verify_options opts;
    dcl_verify_options_init(&opts);
    opts.inequality = a.inequality.c_str();
    if (a.k) {
        opts.has_k = 1;
        opts.k = *a.k;
    }
    if (a.lambda) {
        opts.has_lambda = 1;
        opts.lambda = *a.lambda;
    }
    if (a.mu) {
        opts.has_mu = 1;
        opts.mu = *a.mu;
    }
    if (a.alpha) {
        opts.has_alpha = 1;
        opts.alpha = *a.alpha;
    }
    opts.nodes = a.nodes;
    opts.tol = a.tol;
    opts.allow_out_of_range = a.allow_out_of_range;
    opts.project = a.project;
    opts.cross_check = !a.no_cross_check;
    char* json = nullptr;
    const auto st = dcl_verify(s.get(), t.get(), &opts, &json);
    if (st != DCL_OK && st != DCL_VIOLATION) {
        return report_error(st);
    }
    std::cout << json;
    dcl_string_free(json);
    return exit_code(st);
}

int cmd_run(dcl_status (*run)(const char*, const char*), const std::string& config, const std::string& out) {
    const auto st = run(config.c_str(), out.c_str());
    if (st != DCL_OK && st != DCL_VIOLATION) {
        return report_error(st);
    }
    if (st == DCL_VIOLATION) {
        std::cerr << "dcl: violations found, see " << out << "\n";
    }
    return exit_code(st);
}

int cmd_fit(const std::string& samples_path, int order, const std::string& out) {
    std::ifstream in(samples_path, std::ios::binary);
    if (!in) {
        std::cerr << "dcl: cannot open " << samples_path << "\n";
        return 5;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    char* json = nullptr;
    const auto st = dcl_fit_profile_json(buf.str().c_str(), order, &json);
    if (st != DCL_OK) {
        return report_error(st);
    }
    std::string text(json);
    dcl_string_free(json);
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    file << text;
    if (!file) {
        std::cerr << "dcl: cannot write " << out << "\n";
        return 5;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chord-integral inequalities on planar star bodies"};
    app.set_version_flag("--version", std::string(dcl_version()));
    app.require_subcommand(1);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Evaluate functionals by closed form and by quadrature");
    eval->add_option("body", ev.body, "Body JSON file")->required();
    eval->add_option("-f,--functional", ev.functionals,
                     "Comma-separated: area, oriented_area, dual_mixed_area_disk, dual_l2_distance, "
                     "chord_self_integral, chord_mixed_integral")
        ->capture_default_str();
    eval->add_option("--partner", ev.partner, "Second body for two-body functionals");
    eval->add_option("--k", ev.k, "Order for the chord functionals")->capture_default_str();
    eval->add_option("--alpha", ev.alpha, "Shift for chord_mixed_integral (radians)")->capture_default_str();
    eval->add_option("--nodes", ev.nodes, "Quadrature nodes (default 4 N_max + 16)")->check(CLI::NonNegativeNumber);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Evaluate one inequality and print the slack report");
    verify->add_option("body", va.body, "Body JSON file")->required();
    verify->add_option("--ineq", va.inequality, "T1, T2, T3, C31, stab35, stab37, dual_iso, mixed_iso")->required();
    verify->add_option("--partner", va.partner, "Second body (T3, mixed_iso)");
    verify->add_option("--k", va.k, "Order k >= 2");
    verify->add_option("--lambda", va.lambda, "lambda in [0, k/pi]");
    verify->add_option("--mu", va.mu, "mu <= -k");
    verify->add_option("--alpha", va.alpha, "Shift for T3 (radians)");
    verify->add_option("--nodes", va.nodes, "Quadrature nodes for the oracle")->check(CLI::NonNegativeNumber);
    verify->add_option("--tol", va.tol, "Relative tolerance scale")->capture_default_str();
    verify->add_flag("--allow-out-of-range", va.allow_out_of_range, "Evaluate outside the admissible range");
    verify->add_flag("--project", va.project, "Drop harmonics at n/k even before T1 / stab35");
    verify->add_flag("--no-cross-check", va.no_cross_check, "Skip the quadrature oracle");

    std::string config;
    std::string out_dir = ".";
    auto add_run = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("config", config, "Config JSON file")->required();
        sub->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
        return sub;
    };
    auto* sweep = add_run("sweep", "Evaluate an inequality over an ensemble and a parameter grid");
    auto* search = add_run("search", "Descend on the slack from one or more starting bodies");
    auto* limit = add_run("limit", "Normalized mixed chord integral as k grows");
    auto* report = add_run("report", "Identity, lemma and sign suites over an ensemble");

    std::string samples;
    int order = 0;
    std::string fit_out;
    auto* fit = app.add_subcommand("fit", "Least-squares Fourier fit of radial samples");
    fit->add_option("samples", samples, "Samples JSON file")->required();
    fit->add_option("--order", order, "Highest harmonic N")->required()->check(CLI::NonNegativeNumber);
    fit->add_option("-o,--out", fit_out, "Write the body here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval) {
            return cmd_eval(ev);
        }
        if (*verify) {
            return cmd_verify(va);
        }
        if (*sweep) {
            return cmd_run(dcl_run_sweep, config, out_dir);
        }
        if (*search) {
            return cmd_run(dcl_run_search, config, out_dir);
        }
        if (*limit) {
            return cmd_run(dcl_run_limit, config, out_dir);
        }
        if (*report) {
            return cmd_run(dcl_run_report, config, out_dir);
        }
        if (*fit) {
            return cmd_fit(samples, order, fit_out);
        }
    } catch (const Failure& f) {
        return report_error(f.status);
    }
    return 2;
}
