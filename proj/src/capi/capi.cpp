#include "pdmerton.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "core/report.hpp"
#include "core/version.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

pdm_status status_from(const pdm::Error& e) {
    using pdm::ErrorCode;
    switch (e.code()) {
        case ErrorCode::ConfigParse:
            return PDM_ERR_CONFIG;
        case ErrorCode::IoFailure:
            return PDM_ERR_IO;
        case ErrorCode::SigmaSingular:
        case ErrorCode::GammaExcluded:
        case ErrorCode::HypothesisIViolated:
        case ErrorCode::HypothesisIIViolated:
        case ErrorCode::NonPositiveParameter:
        case ErrorCode::ValidationFailed:
            return PDM_ERR_VALIDATION;
        case ErrorCode::CheckFailed:
            return PDM_ERR_CHECK;
        case ErrorCode::GridMismatch:
        case ErrorCode::StepIncompatible:
        case ErrorCode::InadmissibleState:
        case ErrorCode::InvalidArgument:
            return PDM_ERR_INVALID;
        default:
            return PDM_ERR_RUNTIME;
    }
}

template <class Fn>
pdm_status guard(Fn&& fn) {
    try {
        return fn();
    } catch (const pdm::Error& e) {
        set_error(std::string(pdm::error_code_name(e.code())) + ": " + e.what());
        return status_from(e);
    } catch (const std::exception& e) {
        set_error(e.what());
        return PDM_ERR_RUNTIME;
    } catch (...) {
        set_error("unknown error");
        return PDM_ERR_RUNTIME;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

struct pdm_scenario {
    pdm::Scenario scenario;
};

extern "C" {

const char* pdm_version(void) { return PDM_VERSION_STRING; }

const char* pdm_last_error(void) { return g_last_error.c_str(); }

void pdm_string_free(char* s) { std::free(s); }

pdm_status pdm_scenario_load(const char* path, pdm_scenario** out) {
    return guard([&]() -> pdm_status {
        if (path == nullptr || out == nullptr) {
            set_error("null argument");
            return PDM_ERR_INVALID;
        }
        auto* h = new pdm_scenario{pdm::load_scenario(path)};
        *out = h;
        return PDM_OK;
    });
}

pdm_status pdm_scenario_load_string(const char* text, const char* format, pdm_scenario** out) {
    return guard([&]() -> pdm_status {
        if (text == nullptr || format == nullptr || out == nullptr) {
            set_error("null argument");
            return PDM_ERR_INVALID;
        }
        const std::string fmt(format);
        pdm::Scenario s;
        if (fmt == "toml")
            s = pdm::scenario_from_toml_text(text);
        else if (fmt == "json")
            s = pdm::scenario_from_json_text(text);
        else {
            set_error("format must be 'toml' or 'json'");
            return PDM_ERR_INVALID;
        }
        *out = new pdm_scenario{std::move(s)};
        return PDM_OK;
    });
}

void pdm_scenario_free(pdm_scenario* s) { delete s; }

pdm_status pdm_scenario_set_seed(pdm_scenario* s, uint64_t seed) {
    if (s == nullptr) return PDM_ERR_INVALID;
    s->scenario.run.seed = seed;
    return PDM_OK;
}

pdm_status pdm_scenario_set_dt(pdm_scenario* s, double dt) {
    if (s == nullptr || !(dt > 0.0)) return PDM_ERR_INVALID;
    s->scenario.run.dt = dt;
    return PDM_OK;
}

pdm_status pdm_scenario_set_horizon(pdm_scenario* s, double T) {
    if (s == nullptr || !(T > 0.0)) return PDM_ERR_INVALID;
    s->scenario.run.T = T;
    return PDM_OK;
}

pdm_status pdm_scenario_set_paths(pdm_scenario* s, uint64_t n_paths) {
    if (s == nullptr || n_paths == 0) return PDM_ERR_INVALID;
    s->scenario.run.n_paths = static_cast<std::size_t>(n_paths);
    return PDM_OK;
}

pdm_status pdm_scenario_set_gamma(pdm_scenario* s, double gamma) {
    if (s == nullptr || !(gamma > 0.0)) return PDM_ERR_INVALID;
    s->scenario.prefs.gamma = gamma;
    return PDM_OK;
}

pdm_status pdm_validate(pdm_scenario* s, char** report_out) {
    return guard([&]() -> pdm_status {
        const pdm::ValidationReport rep = s->scenario.validate();
        std::string text = rep.to_text();
        if (rep.ok()) {
            const pdm::DerivedConstants consts = s->scenario.derive();
            text += pdm::derived_constants_text(s->scenario, consts);
        }
        if (report_out != nullptr) *report_out = dup_string(text);
        if (!rep.ok()) {
            set_error(text);
            return PDM_ERR_VALIDATION;
        }
        return PDM_OK;
    });
}

pdm_status pdm_derived_constants(pdm_scenario* s, pdm_derived* out) {
    return guard([&]() -> pdm_status {
        const pdm::DerivedConstants c = s->scenario.derive();
        out->b = c.b;
        out->beta = c.beta;
        out->beta_inf = c.beta_inf;
        out->beta_bar_inf = c.beta_bar_inf;
        out->g_inf = c.g_inf;
        out->nu = c.nu;
        out->f_inf = c.f_inf;
        out->gamma_star_drift = c.gamma_star_drift;
        out->n = c.kappa.size();
        out->m = c.grid.m;
        return PDM_OK;
    });
}

namespace {
pdm_status copy_vec(pdm_scenario* s, double* buf, size_t buflen,
                    const pdm::Vec& (*pick)(const pdm::DerivedConstants&)) {
    return guard([&]() -> pdm_status {
        const pdm::DerivedConstants c = s->scenario.derive();
        const pdm::Vec& v = pick(c);
        if (buf == nullptr || buflen < v.size()) {
            set_error("buffer too small");
            return PDM_ERR_INVALID;
        }
        std::memcpy(buf, v.data(), v.size() * sizeof(double));
        return PDM_OK;
    });
}
} // namespace

pdm_status pdm_derived_kappa(pdm_scenario* s, double* buf, size_t buflen) {
    return copy_vec(s, buf, buflen,
                    +[](const pdm::DerivedConstants& c) -> const pdm::Vec& { return c.kappa; });
}

pdm_status pdm_derived_gamma_star_vol(pdm_scenario* s, double* buf, size_t buflen) {
    return copy_vec(s, buf, buflen, +[](const pdm::DerivedConstants& c) -> const pdm::Vec& {
        return c.gamma_star_vol;
    });
}

pdm_status pdm_derived_h_inf(pdm_scenario* s, double* buf, size_t buflen) {
    return copy_vec(s, buf, buflen,
                    +[](const pdm::DerivedConstants& c) -> const pdm::Vec& { return c.h_inf; });
}

pdm_status pdm_manifest(pdm_scenario* s, char** json_out) {
    return guard([&]() -> pdm_status {
        const pdm::DerivedConstants c = s->scenario.derive();
        *json_out = dup_string(pdm::manifest_text(pdm::make_manifest(s->scenario, c)));
        return PDM_OK;
    });
}

namespace {
void fill_check(const pdm::MCEstimate& est, double closed, double z, bool pass,
                pdm_check_result* out) {
    out->closed_form = closed;
    out->mc_mean = est.mean;
    out->mc_stderr = est.stderr_;
    out->truncation_bound = est.truncation_bound;
    out->z = z;
    out->pass = pass ? 1 : 0;
    out->n_paths = est.n_paths;
    out->T = est.T;
}
} // namespace

pdm_status pdm_run_value_check(pdm_scenario* s, pdm_check_result* out) {
    return guard([&]() -> pdm_status {
        const pdm::ValueCheckResult r = pdm::run_value_check(s->scenario);
        if (out != nullptr) fill_check(r.estimate, r.value_closed_form, r.z, r.pass, out);
        if (!r.pass) {
            set_error("value check failed: " + pdm::value_check_text(r));
            return PDM_ERR_CHECK;
        }
        return PDM_OK;
    });
}

pdm_status pdm_run_human_capital_check(pdm_scenario* s, pdm_check_result* out) {
    return guard([&]() -> pdm_status {
        const pdm::HumanCapitalCheckResult r = pdm::run_human_capital_check(s->scenario);
        if (out != nullptr) fill_check(r.estimate, r.closed_form, r.z, r.pass, out);
        if (!r.pass) {
            set_error("human capital check failed: " + pdm::human_capital_text(r));
            return PDM_ERR_CHECK;
        }
        return PDM_OK;
    });
}

pdm_status pdm_run_benchmark(pdm_scenario* s, pdm_benchmark_result* out,
                             double* theta_wedge_buf, size_t buflen) {
    return guard([&]() -> pdm_status {
        const pdm::BenchmarkWedges w = pdm::run_benchmark(s->scenario);
        if (out != nullptr) {
            out->gamma_wedge = w.gamma_wedge;
            out->gamma_rel_resid = w.gamma_rel_resid;
            out->theta_rel_resid = w.theta_rel_resid;
        }
        if (theta_wedge_buf != nullptr) {
            if (buflen < w.theta_wedge.size()) {
                set_error("theta buffer too small");
                return PDM_ERR_INVALID;
            }
            std::memcpy(theta_wedge_buf, w.theta_wedge.data(),
                        w.theta_wedge.size() * sizeof(double));
        }
        return PDM_OK;
    });
}

pdm_status pdm_run_income_sim(pdm_scenario* s, const char* csv_path, uint64_t n_paths_cap,
                              int with_increments) {
    return guard([&]() -> pdm_status {
        const pdm::Scenario& sc = s->scenario;
        sc.validate().raise_if_failed();
        std::size_t n = sc.run.n_paths;
        if (n_paths_cap > 0) n = std::min<std::size_t>(n, n_paths_cap);
        std::vector<pdm::IncomePathResult> paths;
        paths.reserve(n);
        for (std::size_t p = 0; p < n; ++p)
            paths.push_back(pdm::simulate_income(sc.income, sc.initial.x0, sc.initial_history(),
                                                 sc.run.T, sc.run.dt,
                                                 pdm::SeedRecord{sc.run.seed, p}));
        pdm::write_income_paths_csv(csv_path, paths, with_increments != 0);
        return PDM_OK;
    });
}

pdm_status pdm_run_policy_sim(pdm_scenario* s, const char* out_dir) {
    return guard([&]() -> pdm_status {
        const pdm::Scenario& sc = s->scenario;
        const pdm::DerivedConstants consts = sc.derive();
        const pdm::PolicyEngine engine(sc.market, sc.prefs, sc.income, consts);
        std::filesystem::create_directories(out_dir);

        const std::size_t csv_cap = 100;
        std::vector<pdm::JointPath> paths(sc.run.n_paths);
        pdm::parallel_for(sc.run.n_paths, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t p = lo; p < hi; ++p) {
                pdm::ClosedLoopOptions opts;
                opts.T = sc.run.T;
                opts.dt = sc.run.dt;
                opts.seed = pdm::SeedRecord{sc.run.seed, p};
                opts.record_stride = sc.run.record_stride;
                paths[p] = engine.simulate_closed_loop(sc.initial.w, sc.initial.x0,
                                                       sc.initial_history(), opts);
            }
        });

        const std::filesystem::path dir(out_dir);
        std::vector<pdm::JointPath> head(paths.begin(),
                                         paths.begin() + std::min(csv_cap, paths.size()));
        pdm::write_joint_paths_csv((dir / "paths.csv").string(), head);
        pdm::write_fan_chart_csv((dir / "fan_chart.csv").string(), paths);
        std::ofstream mf(dir / "manifest.json");
        mf << pdm::manifest_text(pdm::make_manifest(sc, consts));
        return PDM_OK;
    });
}

pdm_status pdm_run_suite(pdm_scenario* s, char** summary_out) {
    return guard([&]() -> pdm_status {
        s->scenario.validate().raise_if_failed();
        const auto results = pdm::run_acceptance_suite(s->scenario);
        if (summary_out != nullptr) *summary_out = dup_string(pdm::suite_text(results));
        if (!pdm::all_passed(results)) {
            set_error("acceptance suite reported failures");
            return PDM_ERR_CHECK;
        }
        return PDM_OK;
    });
}

} // extern "C"
