// Command-line harness for the pdmerton shared library. Exit codes:
//   0 pass, 2 config error, 3 validation failure, 4 check failure.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "pdmerton.h"

namespace {

struct Overrides {
    std::uint64_t seed = 0;
    bool has_seed = false;
    double dt = 0.0;
    double horizon = 0.0;
    std::uint64_t paths = 0;
    double gamma = 0.0;
    std::string out_dir = "pdm_out";
    std::string format = "text";
};

void add_common(CLI::App* cmd, std::string& scenario_path, Overrides& ov) {
    cmd->add_option("scenario", scenario_path, "scenario file (.toml or .json)")
        ->required();
    cmd->add_option("--seed", ov.seed, "RNG seed")->each([&](const std::string&) {
        ov.has_seed = true;
    });
    cmd->add_option("--dt", ov.dt, "time step (years)");
    cmd->add_option("--horizon", ov.horizon, "simulation horizon T (years)");
    cmd->add_option("--paths", ov.paths, "Monte Carlo path count");
    cmd->add_option("--gamma", ov.gamma, "override risk aversion");
    cmd->add_option("--out-dir", ov.out_dir, "output directory");
    cmd->add_option("--format", ov.format, "report format: text|csv|json");
}

int exit_code(pdm_status st) {
    switch (st) {
        case PDM_OK: return 0;
        case PDM_ERR_CONFIG: return 2;
        case PDM_ERR_IO: return 2;
        case PDM_ERR_VALIDATION: return 3;
        case PDM_ERR_CHECK: return 4;
        default: return 1;
    }
}

int fail(pdm_status st) {
    std::fprintf(stderr, "error: %s\n", pdm_last_error());
    return exit_code(st);
}

pdm_scenario* open_scenario(const std::string& path, const Overrides& ov, pdm_status& st) {
    pdm_scenario* s = nullptr;
    st = pdm_scenario_load(path.c_str(), &s);
    if (st != PDM_OK) return nullptr;
    if (ov.has_seed) pdm_scenario_set_seed(s, ov.seed);
    if (ov.dt > 0.0) pdm_scenario_set_dt(s, ov.dt);
    if (ov.horizon > 0.0) pdm_scenario_set_horizon(s, ov.horizon);
    if (ov.paths > 0) pdm_scenario_set_paths(s, ov.paths);
    if (ov.gamma > 0.0) pdm_scenario_set_gamma(s, ov.gamma);
    return s;
}

void print_check(const char* name, const pdm_check_result& r) {
    std::printf("%s\n", name);
    std::printf("  closed form      %.12g\n", r.closed_form);
    std::printf("  mc mean          %.12g\n", r.mc_mean);
    std::printf("  mc stderr        %.12g\n", r.mc_stderr);
    std::printf("  truncation bound %.12g\n", r.truncation_bound);
    std::printf("  z                %.6g\n", r.z);
    std::printf("  paths/T          %llu / %.6g\n",
                static_cast<unsigned long long>(r.n_paths), r.T);
    std::printf("  result           %s\n", r.pass ? "PASS" : "FAIL");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pdmerton: life-cycle portfolio choice with path-dependent labor income"};
    app.require_subcommand(1);

    std::string scenario_path;
    Overrides ov;

    auto* cmd_validate = app.add_subcommand(
        "validate", "check model hypotheses and print derived constants");
    auto* cmd_income = app.add_subcommand("simulate-income", "simulate labor-income paths");
    auto* cmd_hc = app.add_subcommand(
        "human-capital", "closed-form human capital vs Monte Carlo oracle");
    auto* cmd_policy = app.add_subcommand("policy-sim", "closed-loop simulation CSV dump");
    auto* cmd_value = app.add_subcommand(
        "value-check", "closed-form value function vs Monte Carlo objective");
    auto* cmd_bench = app.add_subcommand("benchmark", "policy wedges vs the phi=0 benchmark");
    auto* cmd_suite = app.add_subcommand("suite", "run every acceptance criterion");
    for (CLI::App* c :
         {cmd_validate, cmd_income, cmd_hc, cmd_policy, cmd_value, cmd_bench, cmd_suite})
        add_common(c, scenario_path, ov);

    CLI11_PARSE(app, argc, argv);

    pdm_status st = PDM_OK;
    pdm_scenario* s = open_scenario(scenario_path, ov, st);
    if (s == nullptr) return fail(st);

    int rc = 0;
    if (cmd_validate->parsed()) {
        char* report = nullptr;
        st = pdm_validate(s, &report);
        if (report != nullptr) {
            std::printf("%s", report);
            pdm_string_free(report);
        }
        rc = st == PDM_OK ? 0 : exit_code(st);
    } else if (cmd_income->parsed()) {
        const std::string out = ov.out_dir + "/income_paths.csv";
        st = pdm_run_income_sim(s, out.c_str(), 100, 0);
        if (st != PDM_OK) rc = fail(st);
        else std::printf("wrote %s\n", out.c_str());
    } else if (cmd_hc->parsed()) {
        pdm_check_result r{};
        st = pdm_run_human_capital_check(s, &r);
        print_check("human capital check", r);
        rc = st == PDM_OK ? 0 : exit_code(st);
    } else if (cmd_policy->parsed()) {
        st = pdm_run_policy_sim(s, ov.out_dir.c_str());
        if (st != PDM_OK) rc = fail(st);
        else std::printf("wrote %s/{paths.csv,fan_chart.csv,manifest.json}\n", ov.out_dir.c_str());
    } else if (cmd_value->parsed()) {
        pdm_check_result r{};
        st = pdm_run_value_check(s, &r);
        print_check("value check", r);
        rc = st == PDM_OK ? 0 : exit_code(st);
    } else if (cmd_bench->parsed()) {
        pdm_benchmark_result r{};
        double theta[16] = {0};
        st = pdm_run_benchmark(s, &r, theta, 16);
        if (st != PDM_OK) {
            rc = fail(st);
        } else {
            pdm_derived d{};
            pdm_derived_constants(s, &d);
            std::printf("benchmark against phi = 0\n");
            std::printf("  theta wedge     ");
            for (std::uint64_t i = 0; i < d.n; ++i) std::printf(" %.12g", theta[i]);
            std::printf("\n  gamma wedge      %.12g\n", r.gamma_wedge);
            std::printf("  theta rel resid  %.3g\n", r.theta_rel_resid);
            std::printf("  gamma rel resid  %.3g\n", r.gamma_rel_resid);
        }
    } else if (cmd_suite->parsed()) {
        char* summary = nullptr;
        st = pdm_run_suite(s, &summary);
        if (summary != nullptr) {
            std::printf("%s", summary);
            pdm_string_free(summary);
        }
        if (st != PDM_OK && summary == nullptr) std::fprintf(stderr, "error: %s\n", pdm_last_error());
        rc = st == PDM_OK ? 0 : exit_code(st);
    }

    pdm_scenario_free(s);
    return rc;
}
