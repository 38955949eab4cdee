#include "valuation.hpp"

#include <cmath>

namespace pdm {

StatePriceDensityPath state_price_density(double r, double delta, const Vec& kappa,
                                          const BrownianPath& brownian) {
    if (kappa.size() != brownian.dim)
        throw Error(ErrorCode::GridMismatch, "kappa dimension must match Brownian path");
    double ksq = dot(kappa, kappa);
    const double drift = -(r + delta + 0.5 * ksq) * brownian.dt;
    StatePriceDensityPath out;
    out.dt = brownian.dt;
    out.values.reserve(brownian.steps + 1);
    double log_xi = 0.0;
    out.values.push_back(1.0);
    for (std::size_t k = 0; k < brownian.steps; ++k) {
        double kz = 0.0;
        for (std::size_t i = 0; i < brownian.dim; ++i) kz += kappa[i] * brownian.at(k, i);
        log_xi += drift - kz;
        out.values.push_back(std::exp(log_xi));
    }
    return out;
}

double human_capital(const IncomeState& state, const DerivedConstants& consts) {
    if (state.history.size() != consts.h_inf.size())
        throw Error(ErrorCode::GridMismatch, "income history and h_inf grids differ");
    return consts.g_inf * state.y + trapezoid_inner(consts.grid, consts.h_inf, state.history);
}

GammaTotal gamma_total(double w, const IncomeState& state, const DerivedConstants& consts,
                       double tol_factor) {
    const double hc = human_capital(state, consts);
    GammaTotal g;
    g.value = w + hc;
    g.tol = tol_factor * std::max({1.0, std::abs(w), std::abs(hc)});
    if (g.value > g.tol)
        g.region = RegionClass::Interior;
    else if (g.value < -g.tol)
        g.region = RegionClass::Inadmissible;
    else
        g.region = RegionClass::Boundary;
    return g;
}

Vec expectation_ode_path(const IncomeParams& income, const DerivedConstants& consts, double r,
                         double delta, double x0, const Vec& x1_coarse, double T, double dt) {
    const DelayGrid grid = income.grid();
    if (x1_coarse.size() != grid.nodes())
        throw Error(ErrorCode::GridMismatch, "initial history must have m+1 values");
    const double rd = r + delta;

    // The expectation process solves an SDDE with zero volatility, drift
    // coefficient -beta and kernel psi(s) = phi(s) e^{(r+delta)s}.
    IncomeParams mparams;
    mparams.mu_y = -consts.beta;
    mparams.sigma_y = Vec{};
    mparams.d = income.d;
    mparams.m = income.m;
    Vec psi(grid.nodes());
    for (std::size_t j = 0; j < grid.nodes(); ++j)
        psi[j] = consts.phi_grid[j] * std::exp(rd * grid.node(j));
    mparams.phi = Kernel::sampled(std::move(psi));

    Vec m_hist(grid.nodes());
    for (std::size_t j = 0; j < grid.nodes(); ++j)
        m_hist[j] = x1_coarse[j] * std::exp(-rd * grid.node(j));
    m_hist[grid.m] = x0;

    IncomeSimulator sim(mparams, x0, m_hist, dt);
    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    Vec path;
    path.reserve(steps + 1);
    path.push_back(x0);
    for (std::size_t k = 0; k < steps; ++k) {
        sim.step(nullptr);
        path.push_back(sim.y());
    }
    return path;
}

namespace {

// Positive root of lambda = beta - beta_bar_inf * e^{lambda d}; exists and is
// unique on (0, beta - beta_bar_inf] whenever beta > beta_bar_inf >= 0.
double halanay_rate(double beta, double beta_bar_inf, double d) {
    if (!(beta > beta_bar_inf))
        throw Error(ErrorCode::HypothesisIViolated,
                    "tail bound needs beta > beta_bar_inf");
    if (beta_bar_inf <= 0.0) return beta;
    double lo = 0.0, hi = beta - beta_bar_inf;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = beta - beta_bar_inf * std::exp(mid * d) - mid;
        (f > 0.0 ? lo : hi) = mid;
    }
    return lo;
}

} // namespace

TailBound income_value_tail_bound(const IncomeParams& income, const DerivedConstants& consts,
                                  double r, double delta, double x0, const Vec& x1_coarse,
                                  double T, double dt) {
    TailBound tb;
    tb.lambda_star = halanay_rate(consts.beta, consts.beta_bar_inf, income.d);
    const Vec m_path = expectation_ode_path(income, consts, r, delta, x0, x1_coarse, T, dt);
    const auto steps = m_path.size() - 1;
    const auto window = std::min<std::size_t>(
        steps, static_cast<std::size_t>(std::llround(income.d / dt)));
    double sup = 0.0;
    for (std::size_t k = steps - window; k <= steps; ++k)
        sup = std::max(sup, std::abs(m_path[k]));
    tb.window_sup = sup;
    tb.bound = sup / tb.lambda_star;
    return tb;
}

MCEstimate human_capital_mc_oracle(const MarketParams& market, const Preferences& prefs,
                                   const IncomeParams& income, const DerivedConstants& consts,
                                   double x0, const Vec& x1_coarse, double T,
                                   std::size_t n_paths, double dt, SeedRecord seed) {
    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    const std::size_t n = market.n();
    const double xi_drift = -(market.r + prefs.delta + 0.5 * consts.kappa_sq) * dt;

    Vec samples(n_paths, 0.0);
    parallel_for(n_paths, [&](std::size_t lo, std::size_t hi) {
        Vec dz(n);
        for (std::size_t p = lo; p < hi; ++p) {
            BrownianIncrements inc(seed.seed, seed.stream + p, n, dt);
            IncomeSimulator sim(income, x0, x1_coarse, dt);
            double log_xi = 0.0;
            double acc = 0.0;
            double f_prev = x0;  // xi(0) * y(0)
            for (std::size_t k = 0; k < steps; ++k) {
                inc.fill(k, dz.data());
                double kz = 0.0;
                for (std::size_t i = 0; i < n; ++i) kz += consts.kappa[i] * dz[i];
                log_xi += xi_drift - kz;
                sim.step(dz.data());
                const double f = std::exp(log_xi) * sim.y();
                acc += 0.5 * (f_prev + f) * dt;
                f_prev = f;
            }
            samples[p] = acc;
        }
    });

    const TailBound tb =
        income_value_tail_bound(income, consts, market.r, prefs.delta, x0, x1_coarse, T, dt);
    return estimate_from_samples(samples, T, tb.bound);
}

} // namespace pdm
