#pragma once
#include <string>

#include "policy.hpp"
#include "suite.hpp"

namespace pdm {

// Aligned-text derived-constants report for the validate subcommand.
std::string derived_constants_text(const Scenario& s, const DerivedConstants& consts);
void write_derived_constants_csv(const std::string& path, const DerivedConstants& consts);

std::string value_check_text(const ValueCheckResult& r);
void write_value_check_csv(const std::string& path, const ValueCheckResult& r);
void write_value_check_json(const std::string& path, const ValueCheckResult& r);

std::string human_capital_text(const HumanCapitalCheckResult& r);
void write_human_capital_csv(const std::string& path, const HumanCapitalCheckResult& r);

std::string benchmark_text(const BenchmarkWedges& w);
void write_benchmark_csv(const std::string& path, const BenchmarkWedges& w);

// Long-format income paths: path_id, t, y [, z_1..z_n].
void write_income_paths_csv(const std::string& path,
                            const std::vector<IncomePathResult>& paths, bool with_increments);

// Long-format closed-loop paths: path_id, t, W, y, Gamma, c, B, theta_1..n.
void write_joint_paths_csv(const std::string& path, const std::vector<JointPath>& paths);

// Plot-ready fan chart: per recorded time, {5,25,50,75,95}% quantiles of
// Gamma and of consumption across paths.
void write_fan_chart_csv(const std::string& path, const std::vector<JointPath>& paths);

std::string suite_text(const std::vector<CriterionResult>& results);
void write_suite_csv(const std::string& path, const std::vector<CriterionResult>& results);

} // namespace pdm
