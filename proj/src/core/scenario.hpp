#pragma once
#include <string>

#include <json.hpp>

#include "params.hpp"

namespace pdm {

// Initial condition: financial wealth plus the income level and its history
// window. The history is either a constant level or explicit m+1 grid values
// (whose last entry must equal x0).
struct InitialState {
    double w = 0.0;
    double x0 = 0.0;
    bool history_constant = true;
    double history_level = 0.0;
    Vec history_values;

    Vec history_grid(const DelayGrid& grid, double x0_value) const;
};

struct RunControls {
    double T = 60.0;
    double dt = 1.0 / 250.0;
    std::size_t n_paths = 20000;
    std::uint64_t seed = 42;
    std::size_t record_stride = 25;
};

// A fully parameterized experiment: the single source of truth every
// subcommand runs from.
struct Scenario {
    MarketParams market;
    Preferences prefs;
    IncomeParams income;
    InitialState initial;
    RunControls run;

    ValidationReport validate(const ValidationOptions& opts = {}) const;
    DerivedConstants derive(const ValidationOptions& opts = {}) const;
    Vec initial_history() const { return initial.history_grid(income.grid(), initial.x0); }
};

Scenario scenario_from_json(const nlohmann::json& j);
Scenario scenario_from_toml_text(const std::string& text);
Scenario scenario_from_json_text(const std::string& text);
// Dispatches on extension: .toml (preferred) or .json.
Scenario load_scenario(const std::string& path);

// Resolved-parameter tree: everything a run depends on, in stable key order.
nlohmann::json scenario_to_json(const Scenario& s);

// Manifest = resolved scenario + derived constants + versions + RNG id.
// Deterministic bytes for identical inputs; wall-clock time never enters.
nlohmann::json make_manifest(const Scenario& s, const DerivedConstants& consts);
std::string manifest_text(const nlohmann::json& manifest);

} // namespace pdm
