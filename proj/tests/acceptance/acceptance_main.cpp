// Acceptance suite runner: one line per criterion, nonzero exit on failure.
#include <chrono>
#include <cstdio>

#include "core/report.hpp"

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    pdm::Scenario desk;
    try {
        desk = pdm::load_scenario(std::string(PDM_SCENARIO_DIR) + "/desk.toml");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "cannot load desk scenario: %s\n", e.what());
        return 2;
    }

    std::vector<pdm::CriterionResult> results;
    try {
        results = pdm::run_acceptance_suite(desk);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
        return 1;
    }

    std::fputs(pdm::suite_text(results).c_str(), stdout);
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("total runtime: %.1f s\n", total);
    return pdm::all_passed(results) ? 0 : 4;
}
