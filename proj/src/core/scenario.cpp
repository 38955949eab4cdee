#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "toml_lite.hpp"
#include "version.hpp"

namespace pdm {

using nlohmann::json;

Vec InitialState::history_grid(const DelayGrid& grid, double x0_value) const {
    Vec out(grid.nodes());
    if (history_constant) {
        for (auto& v : out) v = history_level;
    } else {
        if (history_values.size() != grid.nodes())
            throw Error(ErrorCode::ConfigParse,
                        "initial history must provide m+1 values");
        out = history_values;
        const double scale = std::max(1.0, std::abs(x0_value));
        if (std::abs(out.back() - x0_value) > 1e-12 * scale)
            throw Error(ErrorCode::ConfigParse,
                        "initial history endpoint must equal x0");
    }
    out.back() = x0_value;
    return out;
}

ValidationReport Scenario::validate(const ValidationOptions& opts) const {
    return pdm::validate(market, prefs, income, opts);
}

DerivedConstants Scenario::derive(const ValidationOptions& opts) const {
    return derive_constants(market, prefs, income, opts);
}

namespace {

[[noreturn]] void config_fail(const std::string& msg) {
    throw Error(ErrorCode::ConfigParse, msg);
}

const json& require(const json& j, const char* key, const char* where) {
    auto it = j.find(key);
    if (it == j.end())
        config_fail(std::string("missing '") + key + "' in [" + where + "]");
    return *it;
}

double as_number(const json& j, const std::string& what) {
    if (!j.is_number()) config_fail("'" + what + "' must be a number");
    return j.get<double>();
}

Vec as_vector(const json& j, const std::string& what) {
    if (!j.is_array()) config_fail("'" + what + "' must be an array of numbers");
    Vec out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(as_number(v, what));
    return out;
}

SquareMatrix as_matrix(const json& j, std::size_t n) {
    if (!j.is_array() || j.size() != n)
        config_fail("'sigma' must be an n x n array of rows");
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != n)
            config_fail("'sigma' rows must have n entries");
        for (std::size_t c = 0; c < n; ++c) m(i, c) = as_number(row[c], "sigma");
    }
    return m;
}

Kernel kernel_from_json(const json& j) {
    const std::string type = require(j, "type", "income.kernel").get<std::string>();
    if (type == "zero") return Kernel::zero();
    if (type == "constant")
        return Kernel::constant(as_number(require(j, "value", "income.kernel"), "kernel.value"));
    if (type == "exponential")
        return Kernel::exponential(as_number(require(j, "a", "income.kernel"), "kernel.a"),
                                   as_number(require(j, "lambda", "income.kernel"),
                                             "kernel.lambda"));
    if (type == "sampled")
        return Kernel::sampled(as_vector(require(j, "values", "income.kernel"),
                                         "kernel.values"));
    config_fail("unknown kernel type '" + type + "'");
}

Vec history_values_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open history csv: " + path);
    Vec out;
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            if (cell.empty()) continue;
            out.push_back(std::strtod(cell.c_str(), nullptr));
        }
    }
    return out;
}

} // namespace

Scenario scenario_from_json(const json& j) {
    Scenario s;
    const json& market = require(j, "market", "scenario");
    s.market.r = as_number(require(market, "r", "market"), "market.r");
    s.market.mu = as_vector(require(market, "mu", "market"), "market.mu");
    if (s.market.mu.empty()) config_fail("market.mu must have n >= 1 entries");
    s.market.sigma = as_matrix(require(market, "sigma", "market"), s.market.mu.size());

    const json& prefs = require(j, "preferences", "scenario");
    s.prefs.rho = as_number(require(prefs, "rho", "preferences"), "rho");
    s.prefs.gamma = as_number(require(prefs, "gamma", "preferences"), "gamma");
    s.prefs.k = as_number(require(prefs, "k", "preferences"), "k");
    s.prefs.delta = as_number(require(prefs, "delta", "preferences"), "delta");

    const json& income = require(j, "income", "scenario");
    s.income.mu_y = as_number(require(income, "mu_y", "income"), "mu_y");
    s.income.sigma_y = as_vector(require(income, "sigma_y", "income"), "sigma_y");
    s.income.d = as_number(require(income, "d", "income"), "d");
    const double m_raw = as_number(income.value("m", json(50)), "m");
    if (m_raw < 2 || m_raw != std::floor(m_raw)) config_fail("income.m must be an integer >= 2");
    s.income.m = static_cast<std::size_t>(m_raw);
    s.income.phi = kernel_from_json(require(income, "kernel", "income"));

    const json& initial = require(j, "initial", "scenario");
    s.initial.w = as_number(require(initial, "w", "initial"), "w");
    s.initial.x0 = as_number(require(initial, "x0", "initial"), "x0");
    if (initial.contains("history")) {
        const json& h = initial["history"];
        const std::string type = require(h, "type", "initial.history").get<std::string>();
        if (type == "constant") {
            s.initial.history_constant = true;
            s.initial.history_level =
                as_number(require(h, "value", "initial.history"), "history.value");
        } else if (type == "values") {
            s.initial.history_constant = false;
            s.initial.history_values =
                as_vector(require(h, "values", "initial.history"), "history.values");
        } else if (type == "csv") {
            s.initial.history_constant = false;
            s.initial.history_values =
                history_values_from_csv(require(h, "path", "initial.history").get<std::string>());
        } else {
            config_fail("initial.history.type must be constant|values|csv");
        }
    } else {
        s.initial.history_constant = true;
        s.initial.history_level = s.initial.x0;
    }

    if (j.contains("run")) {
        const json& run = j["run"];
        if (run.contains("T")) s.run.T = as_number(run["T"], "run.T");
        if (run.contains("dt")) s.run.dt = as_number(run["dt"], "run.dt");
        if (run.contains("n_paths")) {
            const double np = as_number(run["n_paths"], "run.n_paths");
            if (np < 1 || np != std::floor(np)) config_fail("run.n_paths must be an integer >= 1");
            s.run.n_paths = static_cast<std::size_t>(np);
        }
        if (run.contains("seed")) s.run.seed = run["seed"].get<std::uint64_t>();
        if (run.contains("record_stride")) {
            const double rs = as_number(run["record_stride"], "run.record_stride");
            if (rs < 1 || rs != std::floor(rs))
                config_fail("run.record_stride must be an integer >= 1");
            s.run.record_stride = static_cast<std::size_t>(rs);
        }
    }

    // Surface malformed explicit histories at load time (size and endpoint);
    // model-level conditions stay with validate().
    if (!s.initial.history_constant && s.income.d > 0.0 && s.income.m >= 2)
        (void)s.initial_history();
    return s;
}

Scenario scenario_from_toml_text(const std::string& text) {
    return scenario_from_json(toml_lite_parse(text));
}

Scenario scenario_from_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) config_fail("malformed JSON scenario");
    return scenario_from_json(j);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    return is_json ? scenario_from_json_text(buf.str()) : scenario_from_toml_text(buf.str());
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["market"]["r"] = s.market.r;
    j["market"]["mu"] = s.market.mu;
    {
        json rows = json::array();
        for (std::size_t i = 0; i < s.market.n(); ++i) {
            json row = json::array();
            for (std::size_t c = 0; c < s.market.n(); ++c) row.push_back(s.market.sigma(i, c));
            rows.push_back(row);
        }
        j["market"]["sigma"] = rows;
    }
    j["preferences"] = {{"rho", s.prefs.rho},
                        {"gamma", s.prefs.gamma},
                        {"k", s.prefs.k},
                        {"delta", s.prefs.delta}};
    j["income"]["mu_y"] = s.income.mu_y;
    j["income"]["sigma_y"] = s.income.sigma_y;
    j["income"]["d"] = s.income.d;
    j["income"]["m"] = s.income.m;
    switch (s.income.phi.type) {
        case Kernel::Type::Zero:
            j["income"]["kernel"] = {{"type", "zero"}};
            break;
        case Kernel::Type::Constant:
            j["income"]["kernel"] = {{"type", "constant"}, {"value", s.income.phi.value}};
            break;
        case Kernel::Type::Exponential:
            j["income"]["kernel"] = {{"type", "exponential"},
                                     {"a", s.income.phi.a},
                                     {"lambda", s.income.phi.lambda}};
            break;
        case Kernel::Type::Sampled:
            j["income"]["kernel"] = {{"type", "sampled"}, {"values", s.income.phi.samples}};
            break;
    }
    j["initial"]["w"] = s.initial.w;
    j["initial"]["x0"] = s.initial.x0;
    if (s.initial.history_constant) {
        j["initial"]["history"] = {{"type", "constant"}, {"value", s.initial.history_level}};
    } else {
        j["initial"]["history"] = {{"type", "values"}, {"values", s.initial.history_values}};
    }
    j["run"] = {{"T", s.run.T},
                {"dt", s.run.dt},
                {"n_paths", s.run.n_paths},
                {"seed", s.run.seed},
                {"record_stride", s.run.record_stride}};
    return j;
}

json make_manifest(const Scenario& s, const DerivedConstants& consts) {
    json j;
    j["scenario"] = scenario_to_json(s);
    json d;
    d["kappa"] = consts.kappa;
    d["b"] = consts.b;
    d["beta"] = consts.beta;
    d["beta_inf"] = consts.beta_inf;
    d["beta_bar_inf"] = consts.beta_bar_inf;
    d["g_inf"] = consts.g_inf;
    d["h_inf"] = consts.h_inf;
    d["nu"] = consts.nu;
    d["f_inf"] = consts.f_inf;
    d["gamma_star_drift"] = consts.gamma_star_drift;
    d["gamma_star_vol"] = consts.gamma_star_vol;
    j["derived"] = d;
    j["rng"] = "philox4x32-10";
    j["version"] = PDM_VERSION_STRING;
    return j;
}

std::string manifest_text(const json& manifest) { return manifest.dump(2) + "\n"; }

} // namespace pdm
