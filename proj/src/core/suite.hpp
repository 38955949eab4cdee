#pragma once
#include "objective.hpp"
#include "scenario.hpp"

namespace pdm {

// Result of one verification check; the acceptance suite prints one line per
// criterion and the `suite` subcommand exits nonzero if any fails.
struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// --- individual checks (also behind CLI subcommands) ---

struct ValueCheckResult {
    double gamma = 0.0;
    double value_closed_form = 0.0;
    MCEstimate estimate;
    double z = 0.0;  // max(0, |mean - V| - bound) / stderr
    bool pass = false;
    std::size_t gamma_nonpositive = 0;
    std::size_t income_nonpositive = 0;
    double seconds = 0.0;
};

ValueCheckResult run_value_check(const Scenario& s);

struct HumanCapitalCheckResult {
    double closed_form = 0.0;
    MCEstimate estimate;
    double z = 0.0;
    bool pass = false;
    double seconds = 0.0;
};

// T/dt/n_paths taken from the scenario's run controls.
HumanCapitalCheckResult run_human_capital_check(const Scenario& s);

BenchmarkWedges run_benchmark(const Scenario& s);

// The ten acceptance criteria at their pinned tolerances and run controls.
// The desk scenario supplies the market/income/initial data; criterion-
// specific controls (gamma in {0.5, 2}, dt, horizons, path counts) are fixed
// here, in code.
std::vector<CriterionResult> run_acceptance_suite(const Scenario& desk);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace pdm
