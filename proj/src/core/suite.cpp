#include "suite.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace pdm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

IncomeState make_initial_state(const Scenario& s) {
    Vec hist = s.initial_history();
    return IncomeState(0.0, s.initial.x0, std::move(hist), s.income.grid().ds());
}

double initial_gamma(const Scenario& s, const DerivedConstants& consts) {
    return s.initial.w + human_capital(make_initial_state(s), consts);
}

// Uniform in [0,1) addressed by (seed, stream, index); test-state generator.
double uniform_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    auto w = Philox4x32::block(seed, index, stream);
    std::uint64_t u = (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

constexpr double kClosedFormRelTol = 1e-12;

ValueCheckResult value_check_impl(const Scenario& s, std::uint64_t stream_base) {
    const auto t0 = Clock::now();
    ValueCheckResult res;
    res.gamma = s.prefs.gamma;
    const DerivedConstants consts = s.derive();
    ObjectiveOptions opts;
    opts.T = s.run.T;
    opts.dt = s.run.dt;
    opts.n_paths = s.run.n_paths;
    opts.seed = SeedRecord{s.run.seed, stream_base};
    const ObjectiveRun run = estimate_J(s.market, s.prefs, s.income, consts, s.initial.w,
                                        s.initial.x0, s.initial_history(), opts);
    res.value_closed_form = run.value_closed_form;
    res.estimate = run.estimate;
    res.gamma_nonpositive = run.gamma_nonpositive;
    res.income_nonpositive = run.income_nonpositive;
    const double gap = std::abs(res.estimate.mean - res.value_closed_form);
    res.pass = gap <= 3.0 * res.estimate.stderr_ + res.estimate.truncation_bound;
    res.z = res.estimate.stderr_ > 0.0
                ? std::max(0.0, gap - res.estimate.truncation_bound) / res.estimate.stderr_
                : (gap > res.estimate.truncation_bound ? 1e300 : 0.0);
    res.seconds = elapsed(t0);
    return res;
}

} // namespace

ValueCheckResult run_value_check(const Scenario& s) { return value_check_impl(s, 0); }

HumanCapitalCheckResult run_human_capital_check(const Scenario& s) {
    const auto t0 = Clock::now();
    HumanCapitalCheckResult res;
    const DerivedConstants consts = s.derive();
    res.closed_form = human_capital(make_initial_state(s), consts);
    res.estimate =
        human_capital_mc_oracle(s.market, s.prefs, s.income, consts, s.initial.x0,
                                s.initial_history(), s.run.T, s.run.n_paths, s.run.dt,
                                SeedRecord{s.run.seed, 0x48430000ULL});
    const double gap = std::abs(res.estimate.mean - res.closed_form);
    res.pass = gap <= 3.0 * res.estimate.stderr_ + res.estimate.truncation_bound;
    res.z = res.estimate.stderr_ > 0.0
                ? std::max(0.0, gap - res.estimate.truncation_bound) / res.estimate.stderr_
                : (gap > res.estimate.truncation_bound ? 1e300 : 0.0);
    res.seconds = elapsed(t0);
    return res;
}

BenchmarkWedges run_benchmark(const Scenario& s) {
    const DerivedConstants consts_phi = s.derive();
    Scenario zero = s;
    zero.income.phi = Kernel::zero();
    const DerivedConstants consts_zero = zero.derive();
    return benchmark_wedges(s.market, s.prefs, s.income, consts_phi, consts_zero, s.initial.w,
                            make_initial_state(s));
}

namespace {

// ---- criterion 1 (+7, +8 counters): value-function verification ----------

struct C1Outcome {
    CriterionResult crit;
    std::size_t gamma_nonpositive = 0;
    std::size_t income_nonpositive = 0;
    std::size_t n_paths = 0;
};

C1Outcome criterion_value_check(const Scenario& desk, double gamma, std::uint64_t stream_base,
                                const char* id) {
    Scenario s = desk;
    s.prefs.gamma = gamma;
    s.run.T = 60.0;
    s.run.dt = 1.0 / 250.0;
    s.run.n_paths = 20000;
    const ValueCheckResult r = value_check_impl(s, stream_base);
    C1Outcome out;
    out.gamma_nonpositive = r.gamma_nonpositive;
    out.income_nonpositive = r.income_nonpositive;
    out.n_paths = s.run.n_paths;
    out.crit.id = id;
    out.crit.name = "value function vs MC objective, gamma=" + fmt(gamma, 3);
    const double tol = 3.0 * r.estimate.stderr_ + r.estimate.truncation_bound;
    out.crit.pass = r.pass && r.seconds <= 90.0;
    out.crit.detail = "V=" + fmt(r.value_closed_form) + " mc=" + fmt(r.estimate.mean) +
                      " stderr=" + fmt(r.estimate.stderr_) +
                      " bound=" + fmt(r.estimate.truncation_bound) +
                      " |gap|=" + fmt(std::abs(r.estimate.mean - r.value_closed_form)) +
                      " tol=" + fmt(tol) + " runtime=" + fmt(r.seconds, 3) + "s";
    out.crit.seconds = r.seconds;
    return out;
}

// ---- criterion 2: human-capital representation ----------------------------

CriterionResult criterion_human_capital(const Scenario& desk) {
    const auto t0 = Clock::now();
    Scenario s = desk;
    s.run.T = 350.0;
    s.run.dt = 1.0 / 100.0;
    s.run.n_paths = 10000;
    const HumanCapitalCheckResult r = run_human_capital_check(s);

    // phi == 0 must reduce to y/beta by construction of the constants.
    Scenario zero = desk;
    zero.income.phi = Kernel::zero();
    const DerivedConstants cz = zero.derive();
    const double hc_zero = human_capital(make_initial_state(zero), cz);
    const double direct = zero.initial.x0 / cz.beta;
    const bool zero_ok = std::abs(hc_zero - direct) <= 1e-14 * std::abs(direct);

    CriterionResult c;
    c.id = "C2";
    c.name = "human capital closed form vs state-price MC oracle";
    c.pass = r.pass && zero_ok;
    c.detail = "closed=" + fmt(r.closed_form) + " mc=" + fmt(r.estimate.mean) +
               " stderr=" + fmt(r.estimate.stderr_) +
               " bound=" + fmt(r.estimate.truncation_bound) +
               " | phi=0 reduction |hc-y/beta|=" + fmt(std::abs(hc_zero - direct));
    c.seconds = elapsed(t0);
    return c;
}

// ---- criterion 3: Gamma* stochastic exponential ----------------------------

CriterionResult criterion_gamma_star(const Scenario& desk) {
    const auto t0 = Clock::now();
    CriterionResult c;
    c.id = "C3";
    c.name = "Gamma* stochastic exponential: strong convergence + mean";
    c.pass = true;
    std::ostringstream detail;

    const double gammas[2] = {0.5, 2.0};
    for (double gamma : gammas) {
        Scenario s = desk;
        s.prefs.gamma = gamma;
        const DerivedConstants consts = s.derive();
        const PolicyEngine engine(s.market, s.prefs, s.income, consts);
        const Vec x1 = s.initial_history();

        // Strong-convergence comparison on shared increments.
        const double T = 2.0;
        const double dt0 = 1.0 / 250.0;
        const int levels = 4;
        const std::size_t n_paths = 256;
        const std::size_t fine_factor = 1u << (levels - 1);
        const auto fine_steps =
            static_cast<std::size_t>(std::llround(T / dt0)) * fine_factor;

        Vec err(levels, 0.0);
        std::vector<Vec> errs(levels, Vec(n_paths, 0.0));
        parallel_for(n_paths, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t p = lo; p < hi; ++p) {
                const BrownianPath fine = BrownianPath::generate(
                    SeedRecord{desk.run.seed, 0xC3000000ULL + p}, s.market.n(), fine_steps,
                    dt0 / static_cast<double>(fine_factor));
                for (int l = 0; l < levels; ++l) {
                    const std::size_t factor = fine_factor >> l;
                    const BrownianPath level = fine.coarsen(factor);
                    const Vec exact = gamma_star_exact(
                        consts, s.initial.w + human_capital(make_initial_state(s), consts),
                        level);
                    const std::size_t stride = std::size_t{1} << l;
                    double max_err = 0.0;
                    engine.run_closed_loop(
                        s.initial.w, s.initial.x0, x1, T, PathIncrements{level}, 1.0, 1e-12,
                        [&](std::size_t k, double, double, double, double g,
                            const PolicyDecision&) {
                            if (k % stride == 0)
                                max_err = std::max(max_err, std::abs(g - exact[k]));
                        });
                    errs[l][p] = max_err;
                }
            }
        });
        for (int l = 0; l < levels; ++l)
            err[l] = pairwise_sum(errs[l]) / static_cast<double>(n_paths);

        detail << "gamma=" << fmt(gamma, 3) << " err=[";
        for (int l = 0; l < levels; ++l) detail << (l ? "," : "") << fmt(err[l], 4);
        detail << "] ratios=[";
        for (int l = 0; l + 1 < levels; ++l) {
            const double ratio = err[l] / err[l + 1];
            detail << (l ? "," : "") << fmt(ratio, 3);
            if (!(ratio >= 1.3)) c.pass = false;
        }
        detail << "] ";

        // Mean property at T=5 with the exact sampler (one exact step).
        const double Tm = 5.0;
        const std::size_t n_mean = 100000;
        const double gamma0 = s.initial.w + human_capital(make_initial_state(s), consts);
        Vec terminal(n_mean, 0.0);
        parallel_for(n_mean, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t p = lo; p < hi; ++p) {
                const BrownianPath one = BrownianPath::generate(
                    SeedRecord{desk.run.seed, 0xC3500000ULL + p}, s.market.n(), 1, Tm);
                terminal[p] = gamma_star_exact(consts, gamma0, one).back();
            }
        });
        const MCEstimate est = estimate_from_samples(terminal, Tm, 0.0);
        const double target = gamma0 * std::exp(consts.gamma_star_drift * Tm);
        const bool mean_ok = std::abs(est.mean - target) <= 3.0 * est.stderr_;
        if (!mean_ok) c.pass = false;
        detail << "mean=" << fmt(est.mean) << " target=" << fmt(target)
               << " stderr=" << fmt(est.stderr_) << "; ";
    }
    c.detail = detail.str();
    c.seconds = elapsed(t0);
    return c;
}

// ---- criterion 4: h_inf ODE residual ---------------------------------------

CriterionResult criterion_h_ode(const Scenario& desk) {
    const auto t0 = Clock::now();
    CriterionResult c;
    c.id = "C4";
    c.name = "h_inf solves h' = g_inf phi - (r+delta) h, O(d/m) residual";
    c.pass = true;
    std::ostringstream detail;

    const double rd = desk.market.r + desk.prefs.delta;
    Vec residuals;
    double boundary_gap = 0.0;
    bool left_exact = true;
    for (std::size_t m : {50u, 100u, 200u, 400u}) {
        IncomeParams income = desk.income;
        income.m = m;
        const DerivedConstants cs = derive_constants(desk.market, desk.prefs, income);
        const DelayGrid grid = income.grid();
        const Vec phi = income.phi.on_grid(grid);
        double res = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double fd = (cs.h_inf[j + 1] - cs.h_inf[j]) / grid.ds();
            const double rhs = cs.g_inf * phi[j] - rd * cs.h_inf[j];
            res = std::max(res, std::abs(fd - rhs));
        }
        residuals.push_back(res);
        if (cs.h_inf.front() != 0.0) left_exact = false;
        boundary_gap = std::max(
            boundary_gap, std::abs(cs.h_inf.back() - (cs.beta * cs.g_inf - 1.0)));
    }
    detail << "residuals=[";
    for (std::size_t i = 0; i < residuals.size(); ++i)
        detail << (i ? "," : "") << fmt(residuals[i], 4);
    detail << "] ratios=[";
    for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
        const double ratio = residuals[i] / residuals[i + 1];
        detail << (i ? "," : "") << fmt(ratio, 3);
        if (!(ratio >= 1.5)) c.pass = false;
    }
    detail << "] h(-d)=0 " << (left_exact ? "exact" : "VIOLATED")
           << " |h(0)-(beta g-1)|=" << fmt(boundary_gap, 3);
    if (!left_exact || !(boundary_gap <= 1e-10)) c.pass = false;
    c.detail = detail.str();
    c.seconds = elapsed(t0);
    return c;
}

// ---- criterion 5: benchmark wedges -----------------------------------------

CriterionResult criterion_wedges(const Scenario& desk) {
    const auto t0 = Clock::now();
    CriterionResult c;
    c.id = "C5";
    c.name = "benchmark wedges equal direct feedback differences";
    const BenchmarkWedges w = run_benchmark(desk);

    Scenario zero = desk;
    zero.income.phi = Kernel::zero();
    const BenchmarkWedges wz = run_benchmark(zero);
    double zero_mag = std::abs(wz.gamma_wedge);
    for (double v : wz.theta_wedge) zero_mag = std::max(zero_mag, std::abs(v));
    for (double v : wz.theta_direct) zero_mag = std::max(zero_mag, std::abs(v));
    zero_mag = std::max(zero_mag, std::abs(wz.gamma_direct));

    c.pass = w.theta_rel_resid <= kClosedFormRelTol && w.gamma_rel_resid <= kClosedFormRelTol &&
             zero_mag == 0.0;
    c.detail = "theta_resid=" + fmt(w.theta_rel_resid, 3) +
               " gamma_resid=" + fmt(w.gamma_rel_resid, 3) +
               " phi=0 wedge magnitude=" + fmt(zero_mag, 3) +
               " (theta_wedge[0]=" + fmt(w.theta_wedge[0]) +
               ", gamma_wedge=" + fmt(w.gamma_wedge) + ")";
    c.seconds = elapsed(t0);
    return c;
}

// ---- criterion 6: homogeneity ----------------------------------------------

CriterionResult criterion_homogeneity(const Scenario& desk) {
    const auto t0 = Clock::now();
    CriterionResult c;
    c.id = "C6";
    c.name = "V and feedback are (1-gamma)- and 1-homogeneous";
    c.pass = true;
    double worst = 0.0;

    const DelayGrid grid = desk.income.grid();
    for (double gamma : {0.5, 2.0}) {
        Scenario s = desk;
        s.prefs.gamma = gamma;
        const DerivedConstants consts = s.derive();
        const PolicyEngine engine(s.market, s.prefs, s.income, consts);
        for (std::uint64_t i = 0; i < 100; ++i) {
            const double x0 = 0.1 + 2.0 * uniform_at(desk.run.seed, 0xC600 + i, 0);
            Vec hist(grid.nodes());
            for (std::size_t j = 0; j < grid.nodes(); ++j)
                hist[j] = 0.05 + 2.0 * uniform_at(desk.run.seed, 0xC600 + i, 1 + j);
            hist.back() = x0;
            const IncomeState st(0.0, x0, hist, grid.ds());
            const double hc = human_capital(st, consts);
            const double w = 0.1 + (uniform_at(desk.run.seed, 0xC600 + i, 200) - 0.4) * hc;

            Vec hist2(hist.size());
            for (std::size_t j = 0; j < hist.size(); ++j) hist2[j] = 2.0 * hist[j];
            const IncomeState st2(0.0, 2.0 * x0, hist2, grid.ds());

            const double v1 = value_function(w, st, consts, s.prefs).value;
            const double v2 = value_function(2.0 * w, st2, consts, s.prefs).value;
            const double v_scaled = std::pow(2.0, 1.0 - gamma) * v1;
            worst = std::max(worst, std::abs(v2 - v_scaled) /
                                        std::max({1e-300, std::abs(v2), std::abs(v_scaled)}));

            const PolicyDecision d1 = engine.feedback(w, st);
            const PolicyDecision d2 = engine.feedback(2.0 * w, st2);
            auto rel = [&](double a, double b) {
                return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
            };
            worst = std::max(worst, rel(d2.c, 2.0 * d1.c));
            worst = std::max(worst, rel(d2.B, 2.0 * d1.B));
            for (std::size_t q = 0; q < d1.theta.size(); ++q)
                worst = std::max(worst, rel(d2.theta[q], 2.0 * d1.theta[q]));
        }
    }
    c.pass = worst <= kClosedFormRelTol;
    c.detail = "max relative deviation over 100 states x {V, c, B, theta} x gammas = " +
               fmt(worst, 3);
    c.seconds = elapsed(t0);
    return c;
}

// ---- criterion 7: admissibility and boundary behavior ----------------------

CriterionResult criterion_boundary(const Scenario& desk, std::size_t crossings,
                                   std::size_t paths_counted) {
    const auto t0 = Clock::now();
    CriterionResult c;
    c.id = "C7";
    c.name = "Gamma stays positive; boundary start stays on the boundary";
    std::ostringstream detail;
    detail << "interior runs: " << crossings << " Gamma<=0 steps across " << paths_counted
           << " paths; ";
    bool ok = crossings == 0;

    // Boundary start: w = -human capital. The only admissible continuation is
    // c = B = 0 with the pure hedging allocation; Gamma must stay at zero up
    // to discretization noise.
    struct Variant {
        const char* label;
        bool zero_sigma_y;
        double tol_scale;
    };
    const Variant variants[2] = {{"sigma_y=desk", false, 1e-3}, {"sigma_y=0", true, 1e-5}};
    for (const auto& variant : variants) {
        Scenario s = desk;
        if (variant.zero_sigma_y) {
            for (auto& v : s.income.sigma_y) v = 0.0;
            s.income.mu_y = -0.01;  // keeps beta (and the scale of g_inf) at desk level
        }
        const DerivedConstants consts = s.derive();
        const PolicyEngine engine(s.market, s.prefs, s.income, consts);
        const double hc0 = human_capital(make_initial_state(s), consts);
        const double w_boundary = -hc0;
        const double scale = std::max({1.0, std::abs(w_boundary), hc0});
        const std::size_t n_paths = variant.zero_sigma_y ? 1 : 4;
        double max_abs = 0.0;
        bool controls_ok = true;
        for (std::size_t p = 0; p < n_paths; ++p) {
            ClosedLoopOptions opts;
            opts.T = 10.0;
            opts.dt = 1.0 / 250.0;
            opts.seed = SeedRecord{desk.run.seed, 0xC7000000ULL + p};
            opts.record_stride = 1;
            const JointPath jp =
                engine.simulate_closed_loop(w_boundary, s.initial.x0, s.initial_history(), opts);
            if (!jp.counters.boundary_run) controls_ok = false;
            max_abs = std::max(max_abs, jp.counters.max_abs_gamma);
            for (std::size_t k = 0; k < jp.times.size(); ++k) {
                if (jp.c[k] != 0.0 || jp.bequest[k] != 0.0) controls_ok = false;
                // theta must be the pure hedging allocation for the recorded y.
                PolicyDecision hedge;
                engine.decide(0.0, jp.y[k], 1.0, 1.0, hedge);
                for (std::size_t q = 0; q < jp.dim; ++q) {
                    const double got = jp.theta[k * jp.dim + q];
                    if (std::abs(got - hedge.theta[q]) >
                        1e-14 * std::max(1.0, std::abs(hedge.theta[q])))
                        controls_ok = false;
                }
            }
        }
        const bool drift_ok = max_abs <= variant.tol_scale * scale;
        detail << variant.label << ": max|Gamma|=" << fmt(max_abs, 4) << " tol="
               << fmt(variant.tol_scale * scale, 4) << " controls "
               << (controls_ok ? "ok" : "VIOLATED") << "; ";
        ok = ok && drift_ok && controls_ok;
    }
    c.pass = ok;
    c.detail = detail.str();
    c.seconds = elapsed(t0);
    return c;
}

// ---- criterion 9: suboptimality of perturbed consumption -------------------

CriterionResult criterion_suboptimality(const Scenario& desk) {
    const auto t0 = Clock::now();
    CriterionResult c;
    c.id = "C9";
    c.name = "+-20% consumption perturbation is strictly suboptimal";
    c.pass = true;
    std::ostringstream detail;
    std::uint64_t streams = 0xC9000000ULL;
    for (double gamma : {0.5, 2.0}) {
        Scenario s = desk;
        s.prefs.gamma = gamma;
        const DerivedConstants consts = s.derive();
        for (double mult : {0.8, 1.2}) {
            ObjectiveOptions opts;
            opts.T = 150.0;
            opts.dt = 1.0 / 100.0;
            opts.n_paths = 6000;
            opts.seed = SeedRecord{desk.run.seed, streams};
            streams += 1ULL << 32;
            opts.consumption_multiplier = mult;
            const ObjectiveRun run = estimate_J(s.market, s.prefs, s.income, consts,
                                                s.initial.w, s.initial.x0,
                                                s.initial_history(), opts);
            const double margin =
                run.value_closed_form - 3.0 * run.estimate.stderr_ - run.estimate.mean;
            const bool below = run.estimate.mean < run.value_closed_form - 3.0 * run.estimate.stderr_;
            if (!below) c.pass = false;
            detail << "gamma=" << fmt(gamma, 2) << " mult=" << fmt(mult, 2)
                   << " J=" << fmt(run.estimate.mean) << " V=" << fmt(run.value_closed_form)
                   << " margin=" << fmt(margin, 4) << "; ";
        }
    }
    c.detail = detail.str();
    c.seconds = elapsed(t0);
    return c;
}

// ---- criterion 10: hypothesis gate -----------------------------------------

CriterionResult criterion_rejections(const Scenario& desk) {
    const auto t0 = Clock::now();
    CriterionResult c;
    c.id = "C10";
    c.name = "violating scenarios rejected with named errors";

    Scenario gamma_one = desk;
    gamma_one.prefs.gamma = 1.0;
    const ValidationReport r1 = gamma_one.validate();
    bool gamma_flagged = false;
    for (const auto& issue : r1.issues)
        if (issue.code == ErrorCode::GammaExcluded) gamma_flagged = true;

    // beta = r + delta - mu_y = 0 while beta_bar_inf ~ 0.097 > 0.
    Scenario hyp1;
    hyp1.market.r = 0.02;
    hyp1.market.mu = {0.02};
    hyp1.market.sigma = SquareMatrix(1, Vec{0.2});
    hyp1.prefs = {0.03, 0.5, 1.0, 0.01};
    hyp1.income.mu_y = 0.03;
    hyp1.income.sigma_y = {0.0};
    hyp1.income.d = 2.0;
    hyp1.income.m = 50;
    hyp1.income.phi = Kernel::constant(0.05);
    hyp1.initial = {1.0, 1.0, true, 1.0, {}};
    const ValidationReport r2 = hyp1.validate();
    bool hyp_flagged = false;
    for (const auto& issue : r2.issues)
        if (issue.code == ErrorCode::HypothesisIViolated) hyp_flagged = true;

    c.pass = gamma_flagged && hyp_flagged && !r1.ok() && !r2.ok();
    c.detail = std::string("gamma=1 -> GammaExcluded ") + (gamma_flagged ? "ok" : "MISSING") +
               "; beta=0, constant phi=0.05, d=2 -> HypothesisI_Violated " +
               (hyp_flagged ? "ok" : "MISSING") + " (beta=" + fmt(r2.beta, 4) +
               ", beta_bar_inf=" + fmt(r2.beta_bar_inf, 6) + ")";
    c.seconds = elapsed(t0);
    return c;
}

} // namespace

std::vector<CriterionResult> run_acceptance_suite(const Scenario& desk) {
    std::vector<CriterionResult> out;

    const C1Outcome c1a = criterion_value_check(desk, 0.5, 0x0100000000ULL, "C1a");
    const C1Outcome c1b = criterion_value_check(desk, 2.0, 0x0200000000ULL, "C1b");
    out.push_back(c1a.crit);
    out.push_back(c1b.crit);
    out.push_back(criterion_human_capital(desk));
    out.push_back(criterion_gamma_star(desk));
    out.push_back(criterion_h_ode(desk));
    out.push_back(criterion_wedges(desk));
    out.push_back(criterion_homogeneity(desk));
    out.push_back(criterion_boundary(desk, c1a.gamma_nonpositive + c1b.gamma_nonpositive,
                                     c1a.n_paths + c1b.n_paths));

    {
        CriterionResult c8;
        c8.id = "C8";
        c8.name = "income positivity: zero sign crossings across all paths";
        const std::size_t crossings = c1a.income_nonpositive + c1b.income_nonpositive;
        c8.pass = crossings == 0;
        c8.detail = fmt(static_cast<double>(crossings), 0) + " y<=0 steps across " +
                    fmt(static_cast<double>(c1a.n_paths + c1b.n_paths), 0) + " paths";
        out.push_back(c8);
    }

    out.push_back(criterion_suboptimality(desk));
    out.push_back(criterion_rejections(desk));
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace pdm
