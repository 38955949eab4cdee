#pragma once
#include "income.hpp"
#include "valuation.hpp"

namespace pdm {

// One evaluation of the optimal feedback map: consumption rate, bequest
// target and the risky allocation vector.
struct PolicyDecision {
    double c = 0.0;
    double B = 0.0;
    Vec theta;
};

// Counters and endpoints collected along one closed-loop path.
struct RunCounters {
    std::size_t gamma_nonpositive = 0;   // steps with Gamma <= 0 (interior runs)
    std::size_t income_nonpositive = 0;  // steps with y <= 0
    double min_gamma = 0.0;
    double max_abs_gamma = 0.0;  // relevant for boundary-start runs
    bool boundary_run = false;
    double final_w = 0.0;
    double final_gamma = 0.0;
};

// Time-indexed trajectory of the closed-loop system under the feedback
// policy. theta is step-major (n entries per recorded step). Snapshots of the
// full income state, when requested, support the Gamma = W + human-capital
// self-consistency audit.
struct JointPath {
    Vec times;
    Vec w;
    Vec y;
    Vec gamma;
    Vec c;
    Vec bequest;
    Vec theta;
    std::size_t dim = 0;
    RunCounters counters;
    std::vector<IncomeState> snapshots;
    Vec snapshot_times;
    Vec snapshot_w;
    Vec snapshot_gamma;
};

struct ClosedLoopOptions {
    double T = 1.0;
    double dt = 1.0 / 250.0;
    SeedRecord seed;
    double consumption_multiplier = 1.0;  // c = mult * Gamma / f_inf (perturbation hook)
    double tol_factor = 1e-12;
    std::size_t record_stride = 1;
    std::size_t snapshot_stride = 0;  // 0 = no snapshots
};

// Evaluates the feedback map and drives the closed-loop wealth equation
//   dW = [(r+delta) W + theta'(mu - r 1) + y - c - delta B] dt + theta' sigma dZ
// coupled to the income SDDE on shared increments. Immutable after
// construction; safe to share across path workers.
class PolicyEngine {
public:
    PolicyEngine(const MarketParams& market, const Preferences& prefs,
                 const IncomeParams& income, const DerivedConstants& consts);

    // The feedback map at an arbitrary admissible state. Throws
    // InadmissibleState when Gamma < -tol.
    PolicyDecision feedback(double w, const IncomeState& state,
                            double tol_factor = 1e-12) const;

    // Core rule on (Gamma, y); boundary band |Gamma| <= tol gets c = B = 0 and
    // the pure hedging allocation. Does not throw: callers decide how to
    // treat Gamma < -tol (the public op above rejects, the simulator counts).
    void decide(double gamma_value, double y, double tol, double c_mult,
                PolicyDecision& out) const;

    JointPath simulate_closed_loop(double w, double x0, const Vec& x1_coarse,
                                   const ClosedLoopOptions& opts) const;

    // Walks one closed-loop path, calling
    //   visit(step, t, W, y, Gamma, decision)
    // at every step k = 0..steps (the last call sees the final state; no step
    // follows it). Increments must provide fill(step, out). Throws
    // InadmissibleState if Gamma(0) < -tol.
    template <class Increments, class Visitor>
    RunCounters run_closed_loop(double w, double x0, const Vec& x1_coarse, double T,
                                const Increments& increments, double c_mult,
                                double tol_factor, Visitor&& visit) const;

    const DerivedConstants& constants() const { return consts_; }
    const MarketParams& market() const { return market_; }
    double gamma_tolerance(double w, double hc, double tol_factor) const {
        return tol_factor * std::max({1.0, std::abs(w), std::abs(hc)});
    }

private:
    MarketParams market_;
    Preferences prefs_;
    IncomeParams income_;
    DerivedConstants consts_;
    Vec merton_dir_;  // (sigma^T)^{-1} kappa
    Vec hedge_dir_;   // (sigma^T)^{-1} sigma_y
    Vec excess_;      // mu - r 1
};

// Exact stochastic-exponential path of total wealth under the optimal
// policy: log-space update with drift gamma_star_drift and volatility
// kappa/gamma, evaluated on the given increments.
Vec gamma_star_exact(const DerivedConstants& consts, double gamma0,
                     const BrownianPath& brownian);

// Closed-form policy and total-wealth wedges against the no-delay benchmark
// (same scenario with kernel == 0), cross-checked against direct differences
// of two feedback evaluations.
struct BenchmarkWedges {
    Vec theta_wedge;          // closed form
    Vec theta_direct;         // feedback(phi) - feedback(0)
    double gamma_wedge = 0.0; // closed form
    double gamma_direct = 0.0;
    double theta_rel_resid = 0.0;
    double gamma_rel_resid = 0.0;
};

BenchmarkWedges benchmark_wedges(const MarketParams& market, const Preferences& prefs,
                                 const IncomeParams& income, const DerivedConstants& consts_phi,
                                 const DerivedConstants& consts_zero, double w,
                                 const IncomeState& state);

template <class Increments, class Visitor>
RunCounters PolicyEngine::run_closed_loop(double w, double x0, const Vec& x1_coarse, double T,
                                          const Increments& increments, double c_mult,
                                          double tol_factor, Visitor&& visit) const {
    const double dt = increments.dt();
    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    const std::size_t n = market_.n();
    const double r_delta = market_.r + prefs_.delta;

    IncomeSimulator sim(income_, x0, x1_coarse, dt);
    double W = w;
    PolicyDecision dec;
    dec.theta.assign(n, 0.0);
    Vec dz(n), theta_sigma(n);
    RunCounters counters;

    const double hc0 = consts_.g_inf * sim.y() + sim.window_inner(consts_.h_inf);
    const double tol0 = gamma_tolerance(w, hc0, tol_factor);
    const double gamma0 = W + hc0;
    if (gamma0 < -tol0)
        throw Error(ErrorCode::InadmissibleState,
                    "Gamma(0) < 0: initial state violates the borrowing constraint");
    counters.boundary_run = std::abs(gamma0) <= tol0;
    counters.min_gamma = gamma0;
    counters.max_abs_gamma = std::abs(gamma0);

    for (std::size_t k = 0;; ++k) {
        const double y = sim.y();
        double h_inner = 0.0, conv = 0.0;
        sim.window_inner_pair(consts_.h_inf, sim.phi_grid(), h_inner, conv);
        const double hc = consts_.g_inf * y + h_inner;
        const double gamma_value = W + hc;

        if (k > 0) {
            counters.min_gamma = std::min(counters.min_gamma, gamma_value);
            counters.max_abs_gamma = std::max(counters.max_abs_gamma, std::abs(gamma_value));
            if (!counters.boundary_run && gamma_value <= 0.0) ++counters.gamma_nonpositive;
        }

        if (counters.boundary_run) {
            // From the boundary the only admissible continuation is the
            // boundary strategy; apply it for the whole path.
            decide(0.0, y, 1.0, c_mult, dec);
        } else {
            const double tol = gamma_tolerance(W, hc, tol_factor);
            decide(gamma_value, y, tol, c_mult, dec);
        }

        visit(k, static_cast<double>(k) * dt, W, y, gamma_value, dec);
        if (k == steps) break;

        increments.fill(k, dz.data());
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += dec.theta[i] * market_.sigma(i, j);
            theta_sigma[j] = s;
        }
        double theta_excess = 0.0, diffusion = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            theta_excess += dec.theta[i] * excess_[i];
            diffusion += theta_sigma[i] * dz[i];
        }
        W += (r_delta * W + theta_excess + y - dec.c - prefs_.delta * dec.B) * dt + diffusion;
        sim.step_with_drift(dz.data(), conv);
    }

    counters.income_nonpositive = sim.nonpositive_count();
    counters.final_w = W;
    counters.final_gamma = W + consts_.g_inf * sim.y() + sim.window_inner(consts_.h_inf);
    return counters;
}

} // namespace pdm
