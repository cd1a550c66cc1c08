#include "dcl/dcl.h"

#include "dcl/functionals.hpp"
#include "dcl/inequalities.hpp"
#include "dcl/io.hpp"
#include "dcl/runs.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct dcl_body {
    dcl::StarBody body;
};

namespace {

thread_local std::string last_error;

dcl_status fail(dcl_status status, const char* message) {
    last_error = message;
    return status;
}

template <typename F>
dcl_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const dcl::HypothesisError& e) {
        return fail(DCL_ERR_HYPOTHESIS, e.what());
    } catch (const dcl::PositivityError& e) {
        return fail(DCL_ERR_POSITIVITY, e.what());
    } catch (const dcl::ParseError& e) {
        return fail(DCL_ERR_PARSE, e.what());
    } catch (const dcl::ConfigError& e) {
        return fail(DCL_ERR_PARSE, e.what());
    } catch (const dcl::IoError& e) {
        return fail(DCL_ERR_IO, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(DCL_ERR_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(DCL_ERR_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(DCL_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(DCL_ERR_INTERNAL, "unknown error");
    }
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

dcl_status null_argument(const char* what) {
    return fail(DCL_ERR_ARGUMENT, (std::string("null argument: ") + what).c_str());
}

dcl_status run_with(dcl::RunOutcome (*run)(const nlohmann::json&, const std::filesystem::path&,
                                           const std::filesystem::path&),
                    const char* config_path, const char* out_dir) {
    if (config_path == nullptr || out_dir == nullptr) {
        return null_argument("config_path/out_dir");
    }
    return guarded([&] {
        const std::filesystem::path path(config_path);
        const auto config = dcl::parse_json_text(dcl::read_text_file(path), path.string());
        const auto outcome = run(config, out_dir, path.parent_path());
        return outcome.violations > 0 ? DCL_VIOLATION : DCL_OK;
    });
}

}  // namespace

extern "C" {

const char* dcl_version(void) {
    return DCL_VERSION_STRING;
}

const char* dcl_last_error(void) {
    return last_error.c_str();
}

const char* dcl_status_name(dcl_status status) {
    switch (status) {
        case DCL_OK: return "ok";
        case DCL_VIOLATION: return "violation";
        case DCL_ERR_PARSE: return "parse error";
        case DCL_ERR_POSITIVITY: return "positivity error";
        case DCL_ERR_HYPOTHESIS: return "hypothesis error";
        case DCL_ERR_IO: return "i/o error";
        case DCL_ERR_ARGUMENT: return "argument error";
        case DCL_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

dcl_status dcl_body_from_json(const char* text, dcl_body** out) {
    if (text == nullptr || out == nullptr) {
        return null_argument("text/out");
    }
    *out = nullptr;
    return guarded([&] {
        auto profile = dcl::profile_from_json(dcl::parse_json_text(text));
        *out = new dcl_body{dcl::validate_positivity(profile)};
        return DCL_OK;
    });
}

dcl_status dcl_body_load(const char* path, dcl_body** out) {
    if (path == nullptr || out == nullptr) {
        return null_argument("path/out");
    }
    *out = nullptr;
    return guarded([&] {
        *out = new dcl_body{dcl::validate_positivity(dcl::load_profile(path))};
        return DCL_OK;
    });
}

dcl_status dcl_body_from_coefficients(double a0, const double* a, const double* b, size_t count, dcl_body** out) {
    if (out == nullptr || (count > 0 && (a == nullptr || b == nullptr))) {
        return null_argument("a/b/out");
    }
    *out = nullptr;
    return guarded([&] {
        std::vector<dcl::Harmonic> h(count);
        for (size_t i = 0; i < count; ++i) {
            h[i] = {a[i], b[i]};
        }
        *out = new dcl_body{dcl::validate_positivity(dcl::FourierProfile(a0, std::move(h)))};
        return DCL_OK;
    });
}

void dcl_body_free(dcl_body* body) {
    delete body;
}

dcl_status dcl_body_to_json(const dcl_body* body, char** out) {
    if (body == nullptr || out == nullptr) {
        return null_argument("body/out");
    }
    return guarded([&] {
        *out = duplicate(dcl::dump_json(dcl::profile_to_json(body->body.profile())));
        return DCL_OK;
    });
}

void dcl_string_free(char* s) {
    std::free(s);
}

int dcl_body_max_order(const dcl_body* body) {
    return body ? body->body.max_order() : -1;
}

double dcl_body_min_radial(const dcl_body* body) {
    return body ? body->body.min_radial() : 0.0;
}

dcl_status dcl_eval_radial(const dcl_body* body, double theta, double* out) {
    if (body == nullptr || out == nullptr) {
        return null_argument("body/out");
    }
    return guarded([&] {
        *out = body->body.radial(dcl::Angle(theta).value());
        return DCL_OK;
    });
}

dcl_status dcl_functional(const dcl_body* s, const dcl_body* t, const char* name, int k, double alpha, int nodes,
                          double* closed, double* quadrature) {
    if (s == nullptr || name == nullptr || closed == nullptr || quadrature == nullptr) {
        return null_argument("s/name/closed/quadrature");
    }
    return guarded([&] {
        const std::string which(name);
        const auto& ps = s->body.profile();
        auto partner = [&]() -> const dcl::FourierProfile& {
            if (t == nullptr) {
                throw std::invalid_argument(which + " needs a second body");
            }
            return t->body.profile();
        };
        auto spec_for = [&](const dcl::FourierProfile& q) {
            return nodes > 0 ? dcl::QuadratureSpec{nodes, dcl::kTwoPi} : dcl::QuadratureSpec::for_profiles(ps, q);
        };
        namespace cf = dcl::closed_form;
        namespace qd = dcl::quadrature;
        if (which == "area") {
            *closed = cf::area(ps);
            *quadrature = qd::area(ps, spec_for(ps));
        } else if (which == "oriented_area") {
            *closed = cf::oriented_area(ps);
            *quadrature = qd::oriented_area(ps, spec_for(ps));
        } else if (which == "dual_mixed_area_disk") {
            *closed = cf::dual_mixed_area_disk(ps);
            *quadrature = qd::dual_mixed_area_disk(ps, spec_for(ps));
        } else if (which == "dual_l2_distance") {
            const auto& pt = partner();
            *closed = std::sqrt(cf::dual_l2_distance_squared(ps, pt));
            *quadrature = std::sqrt(qd::dual_l2_distance_squared(ps, pt, spec_for(pt)));
        } else if (which == "chord_self_integral") {
            dcl::require_order(k);
            *closed = cf::chord_self_integral(ps, k);
            *quadrature = qd::chord_self_integral(ps, k, spec_for(ps));
        } else if (which == "chord_mixed_integral") {
            dcl::require_order(k);
            const auto& pt = partner();
            const double a = dcl::Angle(alpha).value();
            *closed = cf::chord_mixed_integral(ps, pt, k, a);
            *quadrature = qd::chord_mixed_integral(ps, pt, k, a, spec_for(pt));
        } else {
            throw std::invalid_argument("unknown functional \"" + which + "\"");
        }
        return DCL_OK;
    });
}

void dcl_verify_options_init(dcl_verify_options* opts) {
    if (opts == nullptr) {
        return;
    }
    *opts = dcl_verify_options{};
    opts->inequality = "T1";
    opts->tol = 1e-9;
    opts->cross_check = 1;
}

dcl_status dcl_verify(const dcl_body* s, const dcl_body* t, const dcl_verify_options* opts, char** report) {
    if (s == nullptr || opts == nullptr || report == nullptr || opts->inequality == nullptr) {
        return null_argument("s/opts/report");
    }
    *report = nullptr;
    return guarded([&] {
        const auto id = dcl::inequality_from_string(opts->inequality);
        if (!id) {
            throw std::invalid_argument(std::string("unknown inequality \"") + opts->inequality + "\"");
        }
        dcl::Parameters p;
        if (opts->has_k) {
            p.k = opts->k;
        }
        if (opts->has_lambda) {
            p.lambda = opts->lambda;
        }
        if (opts->has_mu) {
            p.mu = opts->mu;
        }
        if (opts->has_alpha) {
            p.alpha = opts->alpha;
        }
        if (!(opts->tol > 0.0)) {
            throw std::invalid_argument("tolerance must be positive");
        }
        dcl::VerifyOptions v;
        v.allow_out_of_range = opts->allow_out_of_range != 0;
        v.project = opts->project != 0;
        v.cross_check = opts->cross_check != 0;
        if (opts->nodes > 0) {
            v.nodes = opts->nodes;
        }
        v.tol_scale = opts->tol;
        const auto r = dcl::evaluate_inequality(*id, s->body, t ? &t->body : nullptr, p, v);
        *report = duplicate(dcl::dump_json(dcl::report_to_json(r)));
        return r.verdict == dcl::Verdict::violated && !r.out_of_range ? DCL_VIOLATION : DCL_OK;
    });
}

dcl_status dcl_run_sweep(const char* config_path, const char* out_dir) {
    return run_with(dcl::run_sweep, config_path, out_dir);
}

dcl_status dcl_run_search(const char* config_path, const char* out_dir) {
    return run_with(dcl::run_search, config_path, out_dir);
}

dcl_status dcl_run_limit(const char* config_path, const char* out_dir) {
    return run_with(dcl::run_limit, config_path, out_dir);
}

dcl_status dcl_run_report(const char* config_path, const char* out_dir) {
    return run_with(dcl::run_report, config_path, out_dir);
}

dcl_status dcl_fit_profile_json(const char* samples, int max_order, char** body) {
    if (samples == nullptr || body == nullptr) {
        return null_argument("samples/body");
    }
    *body = nullptr;
    return guarded([&] {
        const auto parsed = dcl::samples_from_json(dcl::parse_json_text(samples));
        const auto profile = dcl::fit_profile(parsed, max_order);
        *body = duplicate(dcl::dump_json(dcl::profile_to_json(profile)));
        return DCL_OK;
    });
}

}  // extern "C"
