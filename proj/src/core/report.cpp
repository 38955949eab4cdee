#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "csv.hpp"

namespace pdm {

namespace {

void line(std::ostringstream& os, const std::string& name, double v) {
    os << "  " << std::left << std::setw(18) << name << CsvWriter::format(v) << "\n";
}

void line_vec(std::ostringstream& os, const std::string& name, const Vec& v) {
    os << "  " << std::left << std::setw(18) << name;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << CsvWriter::format(v[i]);
    os << "\n";
}

double quantile(Vec sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return (1.0 - frac) * sorted[lo] + frac * sorted[hi];
}

} // namespace

std::string derived_constants_text(const Scenario& s, const DerivedConstants& consts) {
    std::ostringstream os;
    os << "derived constants\n";
    line_vec(os, "kappa", consts.kappa);
    line(os, "b", consts.b);
    line(os, "beta", consts.beta);
    line(os, "beta_inf", consts.beta_inf);
    line(os, "beta_bar_inf", consts.beta_bar_inf);
    line(os, "g_inf", consts.g_inf);
    line(os, "h_inf(0)", consts.h_inf.back());
    line(os, "nu", consts.nu);
    line(os, "f_inf", consts.f_inf);
    line(os, "gamma_star_drift", consts.gamma_star_drift);
    line_vec(os, "gamma_star_vol", consts.gamma_star_vol);
    const IncomeState st(0.0, s.initial.x0, s.initial_history(), consts.grid.ds());
    const double hc = human_capital(st, consts);
    line(os, "human_capital", hc);
    line(os, "Gamma(0)", s.initial.w + hc);
    return os.str();
}

void write_derived_constants_csv(const std::string& path, const DerivedConstants& consts) {
    CsvWriter csv(path);
    csv.header({"name", "index", "value"});
    auto scalar = [&](const std::string& name, double v) {
        csv.field(name).field(std::uint64_t{0}).field(v);
        csv.end_row();
    };
    for (std::size_t i = 0; i < consts.kappa.size(); ++i) {
        csv.field(std::string("kappa")).field(static_cast<std::uint64_t>(i)).field(consts.kappa[i]);
        csv.end_row();
    }
    scalar("b", consts.b);
    scalar("beta", consts.beta);
    scalar("beta_inf", consts.beta_inf);
    scalar("beta_bar_inf", consts.beta_bar_inf);
    scalar("g_inf", consts.g_inf);
    scalar("nu", consts.nu);
    scalar("f_inf", consts.f_inf);
    scalar("gamma_star_drift", consts.gamma_star_drift);
    for (std::size_t i = 0; i < consts.gamma_star_vol.size(); ++i) {
        csv.field(std::string("gamma_star_vol")).field(static_cast<std::uint64_t>(i))
            .field(consts.gamma_star_vol[i]);
        csv.end_row();
    }
    for (std::size_t i = 0; i < consts.h_inf.size(); ++i) {
        csv.field(std::string("h_inf")).field(static_cast<std::uint64_t>(i)).field(consts.h_inf[i]);
        csv.end_row();
    }
}

std::string value_check_text(const ValueCheckResult& r) {
    std::ostringstream os;
    os << "value check (gamma = " << r.gamma << ")\n";
    line(os, "V closed form", r.value_closed_form);
    line(os, "MC mean", r.estimate.mean);
    line(os, "MC stderr", r.estimate.stderr_);
    line(os, "truncation bound", r.estimate.truncation_bound);
    line(os, "z", r.z);
    os << "  " << std::left << std::setw(18) << "paths"
       << r.estimate.n_paths << "\n";
    os << "  " << std::left << std::setw(18) << "result" << (r.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

void write_value_check_csv(const std::string& path, const ValueCheckResult& r) {
    CsvWriter csv(path);
    csv.header({"gamma", "V", "mc_mean", "mc_stderr", "truncation_bound", "z", "n_paths",
                "T", "pass"});
    csv.field(r.gamma)
        .field(r.value_closed_form)
        .field(r.estimate.mean)
        .field(r.estimate.stderr_)
        .field(r.estimate.truncation_bound)
        .field(r.z)
        .field(static_cast<std::uint64_t>(r.estimate.n_paths))
        .field(r.estimate.T)
        .field(std::string(r.pass ? "PASS" : "FAIL"));
    csv.end_row();
}

std::string human_capital_text(const HumanCapitalCheckResult& r) {
    std::ostringstream os;
    os << "human capital check\n";
    line(os, "closed form", r.closed_form);
    line(os, "MC mean", r.estimate.mean);
    line(os, "MC stderr", r.estimate.stderr_);
    line(os, "truncation bound", r.estimate.truncation_bound);
    line(os, "z", r.z);
    os << "  " << std::left << std::setw(18) << "result" << (r.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string benchmark_text(const BenchmarkWedges& w) {
    std::ostringstream os;
    os << "benchmark against phi = 0\n";
    line_vec(os, "theta wedge", w.theta_wedge);
    line_vec(os, "theta direct", w.theta_direct);
    line(os, "theta rel resid", w.theta_rel_resid);
    line(os, "gamma wedge", w.gamma_wedge);
    line(os, "gamma direct", w.gamma_direct);
    line(os, "gamma rel resid", w.gamma_rel_resid);
    return os.str();
}

void write_income_paths_csv(const std::string& path,
                            const std::vector<IncomePathResult>& paths, bool with_increments) {
    CsvWriter csv(path);
    std::vector<std::string> cols = {"path_id", "t", "y"};
    const std::size_t dim = paths.empty() ? 0 : paths.front().brownian.dim;
    if (with_increments)
        for (std::size_t i = 0; i < dim; ++i) cols.push_back("dz_" + std::to_string(i + 1));
    csv.header(cols);
    for (std::size_t p = 0; p < paths.size(); ++p) {
        const auto& pr = paths[p];
        for (std::size_t k = 0; k < pr.times.size(); ++k) {
            csv.field(static_cast<std::uint64_t>(p)).field(pr.times[k]).field(pr.y[k]);
            if (with_increments) {
                for (std::size_t i = 0; i < dim; ++i)
                    csv.field(k == 0 ? 0.0 : pr.brownian.at(k - 1, i));
            }
            csv.end_row();
        }
    }
}

void write_joint_paths_csv(const std::string& path, const std::vector<JointPath>& paths) {
    CsvWriter csv(path);
    std::vector<std::string> cols = {"path_id", "t", "W", "y", "Gamma", "c", "B"};
    const std::size_t dim = paths.empty() ? 0 : paths.front().dim;
    for (std::size_t i = 0; i < dim; ++i) cols.push_back("theta_" + std::to_string(i + 1));
    csv.header(cols);
    for (std::size_t p = 0; p < paths.size(); ++p) {
        const auto& jp = paths[p];
        for (std::size_t k = 0; k < jp.times.size(); ++k) {
            csv.field(static_cast<std::uint64_t>(p))
                .field(jp.times[k])
                .field(jp.w[k])
                .field(jp.y[k])
                .field(jp.gamma[k])
                .field(jp.c[k])
                .field(jp.bequest[k]);
            for (std::size_t i = 0; i < dim; ++i) csv.field(jp.theta[k * dim + i]);
            csv.end_row();
        }
    }
}

void write_fan_chart_csv(const std::string& path, const std::vector<JointPath>& paths) {
    CsvWriter csv(path);
    csv.header({"t", "gamma_q05", "gamma_q25", "gamma_q50", "gamma_q75", "gamma_q95",
                "c_q05", "c_q25", "c_q50", "c_q75", "c_q95"});
    if (paths.empty()) return;
    const std::size_t ticks = paths.front().times.size();
    const double qs[5] = {0.05, 0.25, 0.50, 0.75, 0.95};
    for (std::size_t k = 0; k < ticks; ++k) {
        Vec g, cons;
        g.reserve(paths.size());
        cons.reserve(paths.size());
        for (const auto& jp : paths) {
            if (k < jp.times.size()) {
                g.push_back(jp.gamma[k]);
                cons.push_back(jp.c[k]);
            }
        }
        std::sort(g.begin(), g.end());
        std::sort(cons.begin(), cons.end());
        csv.field(paths.front().times[k]);
        for (double q : qs) csv.field(quantile(g, q));
        for (double q : qs) csv.field(quantile(cons, q));
        csv.end_row();
    }
}

std::string suite_text(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name;
        if (!r.detail.empty()) os << ": " << r.detail;
        os << "\n";
    }
    os << (all_passed(results) ? "suite: all criteria passed\n" : "suite: FAILURES present\n");
    return os.str();
}

void write_suite_csv(const std::string& path, const std::vector<CriterionResult>& results) {
    CsvWriter csv(path);
    csv.header({"id", "name", "pass", "seconds", "detail"});
    auto sanitize = [](std::string s) {
        for (auto& ch : s)
            if (ch == ',' || ch == '\n') ch = ';';
        return s;
    };
    for (const auto& r : results) {
        csv.field(r.id)
            .field(sanitize(r.name))
            .field(std::string(r.pass ? "PASS" : "FAIL"))
            .field(r.seconds)
            .field(sanitize(r.detail));
        csv.end_row();
    }
}

} // namespace pdm
