#include "policy.hpp"

#include <cmath>

namespace pdm {

PolicyEngine::PolicyEngine(const MarketParams& market, const Preferences& prefs,
                           const IncomeParams& income, const DerivedConstants& consts)
    : market_(market), prefs_(prefs), income_(income), consts_(consts) {
    LuFactorization lu(market.sigma);
    merton_dir_ = lu.solve_transpose(consts_.kappa);
    hedge_dir_ = lu.solve_transpose(income.sigma_y);
    excess_.resize(market.n());
    for (std::size_t i = 0; i < market.n(); ++i) excess_[i] = market.mu[i] - market.r;
}

void PolicyEngine::decide(double gamma_value, double y, double tol, double c_mult,
                          PolicyDecision& out) const {
    const std::size_t n = market_.n();
    out.theta.resize(n);
    if (gamma_value > tol) {
        const double base = gamma_value / consts_.f_inf;
        out.c = c_mult * base;
        out.B = consts_.k_neg_b * base;
        const double scale = gamma_value / prefs_.gamma;
        const double hedge = consts_.g_inf * y;
        for (std::size_t i = 0; i < n; ++i)
            out.theta[i] = scale * merton_dir_[i] - hedge * hedge_dir_[i];
    } else {
        // Boundary (and the counted mid-path excursions below it): zero
        // consumption and bequest, pure hedging allocation.
        out.c = 0.0;
        out.B = 0.0;
        const double hedge = consts_.g_inf * y;
        for (std::size_t i = 0; i < n; ++i) out.theta[i] = -hedge * hedge_dir_[i];
    }
}

PolicyDecision PolicyEngine::feedback(double w, const IncomeState& state,
                                      double tol_factor) const {
    const GammaTotal g = gamma_total(w, state, consts_, tol_factor);
    if (g.region == RegionClass::Inadmissible)
        throw Error(ErrorCode::InadmissibleState, "feedback: Gamma < 0");
    PolicyDecision dec;
    decide(g.value, state.y, g.tol, 1.0, dec);
    return dec;
}

JointPath PolicyEngine::simulate_closed_loop(double w, double x0, const Vec& x1_coarse,
                                             const ClosedLoopOptions& opts) const {
    JointPath path;
    path.dim = market_.n();
    const auto steps = static_cast<std::size_t>(std::llround(opts.T / opts.dt));
    const std::size_t stride = std::max<std::size_t>(1, opts.record_stride);
    path.times.reserve(steps / stride + 2);

    BrownianIncrements inc(opts.seed.seed, opts.seed.stream, market_.n(), opts.dt);

    // Snapshot audit requires re-walking the income state; run a shadow
    // simulator fed by the same increments.
    IncomeSimulator shadow(income_, x0, x1_coarse, opts.dt);
    Vec dz(market_.n());
    std::size_t shadow_step = 0;

    path.counters = run_closed_loop(
        w, x0, x1_coarse, opts.T, inc, opts.consumption_multiplier, opts.tol_factor,
        [&](std::size_t k, double t, double W, double y, double gamma_value,
            const PolicyDecision& dec) {
            if (k % stride == 0 || k == steps) {
                path.times.push_back(t);
                path.w.push_back(W);
                path.y.push_back(y);
                path.gamma.push_back(gamma_value);
                path.c.push_back(dec.c);
                path.bequest.push_back(dec.B);
                for (double th : dec.theta) path.theta.push_back(th);
            }
            if (opts.snapshot_stride > 0 && (k % opts.snapshot_stride == 0 || k == steps)) {
                while (shadow_step < k) {
                    inc.fill(shadow_step, dz.data());
                    shadow.step(dz.data());
                    ++shadow_step;
                }
                path.snapshots.push_back(shadow.state());
                path.snapshot_times.push_back(t);
                path.snapshot_w.push_back(W);
                path.snapshot_gamma.push_back(gamma_value);
            }
        });
    return path;
}

Vec gamma_star_exact(const DerivedConstants& consts, double gamma0,
                     const BrownianPath& brownian) {
    if (gamma0 < 0.0)
        throw Error(ErrorCode::InadmissibleState, "gamma_star_exact: Gamma(0) must be >= 0");
    if (brownian.dim != consts.gamma_star_vol.size())
        throw Error(ErrorCode::GridMismatch, "Brownian dimension mismatch");
    double vol_sq = dot(consts.gamma_star_vol, consts.gamma_star_vol);
    const double drift = (consts.gamma_star_drift - 0.5 * vol_sq) * brownian.dt;
    Vec out;
    out.reserve(brownian.steps + 1);
    out.push_back(gamma0);
    double log_factor = 0.0;
    for (std::size_t k = 0; k < brownian.steps; ++k) {
        double vz = 0.0;
        for (std::size_t i = 0; i < brownian.dim; ++i)
            vz += consts.gamma_star_vol[i] * brownian.at(k, i);
        log_factor += drift + vz;
        out.push_back(gamma0 * std::exp(log_factor));
    }
    return out;
}

BenchmarkWedges benchmark_wedges(const MarketParams& market, const Preferences& prefs,
                                 const IncomeParams& income, const DerivedConstants& consts_phi,
                                 const DerivedConstants& consts_zero, double w,
                                 const IncomeState& state) {
    BenchmarkWedges out;
    const std::size_t n = market.n();
    const double y = state.y;
    const double g_gap = consts_phi.g_inf - consts_zero.g_inf;  // 1/(beta-beta_inf) - 1/beta
    const double past = trapezoid_inner(consts_phi.grid, consts_phi.h_inf, state.history);

    out.gamma_wedge = y * g_gap + past;

    // theta wedge = (sigma^T)^{-1} [ g_gap * y * (kappa/gamma - sigma_y)
    //                                + <h_inf, x1> * kappa/gamma ]
    Vec rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double kg = consts_phi.gamma_star_vol[i];  // kappa_i / gamma
        rhs[i] = g_gap * y * (kg - income.sigma_y[i]) + past * kg;
    }
    LuFactorization lu(market.sigma);
    out.theta_wedge = lu.solve_transpose(rhs);

    // Direct route: two feedback evaluations.
    PolicyEngine eng_phi(market, prefs, income, consts_phi);
    IncomeParams income_zero = income;
    income_zero.phi = Kernel::zero();
    PolicyEngine eng_zero(market, prefs, income_zero, consts_zero);
    const PolicyDecision dec_phi = eng_phi.feedback(w, state);
    const PolicyDecision dec_zero = eng_zero.feedback(w, state);
    out.theta_direct.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.theta_direct[i] = dec_phi.theta[i] - dec_zero.theta[i];

    const double gamma_phi = gamma_total(w, state, consts_phi).value;
    const double gamma_zero = gamma_total(w, state, consts_zero).value;
    out.gamma_direct = gamma_phi - gamma_zero;

    double theta_scale = 1.0, theta_diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        theta_scale = std::max(theta_scale, std::abs(out.theta_wedge[i]));
        theta_diff = std::max(theta_diff, std::abs(out.theta_wedge[i] - out.theta_direct[i]));
    }
    out.theta_rel_resid = theta_diff / theta_scale;
    out.gamma_rel_resid = std::abs(out.gamma_wedge - out.gamma_direct) /
                          std::max(1.0, std::abs(out.gamma_wedge));
    return out;
}

} // namespace pdm
