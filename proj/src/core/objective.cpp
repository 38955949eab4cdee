#include "objective.hpp"

#include <atomic>
#include <cmath>

namespace pdm {

namespace {

// The estimator evaluates this once per step per path; sqrt/reciprocal forms
// for the common exponents keep the verification runs inside their time
// budget without touching the semantics.
inline double power(double x, double e) {
    if (e == 0.5) return std::sqrt(x);
    if (e == -1.0) return 1.0 / x;
    if (e == -0.5) return 1.0 / std::sqrt(x);
    if (e == 2.0) return x * x;
    return std::pow(x, e);
}

} // namespace

Utility utility_rate(double c, double B, const Preferences& prefs) {
    if (c < 0.0 || B < 0.0)
        throw Error(ErrorCode::InvalidArgument, "utility_rate: controls must be nonnegative");
    const double gamma = prefs.gamma;
    const double one_minus = 1.0 - gamma;
    if (gamma > 1.0 && (c == 0.0 || B == 0.0)) return Utility::minus_infinity();
    const double uc = power(c, one_minus) / one_minus;
    const double ub = prefs.delta * power(prefs.k * B, one_minus) / one_minus;
    return Utility::finite(uc + ub);
}

Utility value_of_gamma(double gamma_value, const DerivedConstants& consts,
                       const Preferences& prefs) {
    const double gamma = prefs.gamma;
    if (gamma_value <= 0.0) {
        if (gamma_value < 0.0)
            throw Error(ErrorCode::InadmissibleState, "value function: Gamma < 0");
        return gamma < 1.0 ? Utility::finite(0.0) : Utility::minus_infinity();
    }
    const double v = std::pow(consts.f_inf, gamma) * std::pow(gamma_value, 1.0 - gamma) /
                     (1.0 - gamma);
    return Utility::finite(v);
}

Utility value_function(double w, const IncomeState& state, const DerivedConstants& consts,
                       const Preferences& prefs, double tol_factor) {
    const GammaTotal g = gamma_total(w, state, consts, tol_factor);
    if (g.region == RegionClass::Inadmissible)
        throw Error(ErrorCode::InadmissibleState, "value function: Gamma < 0");
    if (g.region == RegionClass::Boundary)
        return prefs.gamma < 1.0 ? Utility::finite(0.0) : Utility::minus_infinity();
    return value_of_gamma(g.value, consts, prefs);
}

double truncation_bound(const DerivedConstants& consts, const Preferences& prefs,
                        double gamma0, double T) {
    const Utility v = value_of_gamma(gamma0, consts, prefs);
    if (v.neg_inf)
        throw Error(ErrorCode::InadmissibleState,
                    "truncation bound undefined at the boundary for gamma > 1");
    return std::abs(v.value) * std::exp(-T / consts.nu);
}

ObjectiveRun estimate_J(const MarketParams& market, const Preferences& prefs,
                        const IncomeParams& income, const DerivedConstants& consts, double w,
                        double x0, const Vec& x1_coarse, const ObjectiveOptions& opts) {
    const PolicyEngine engine(market, prefs, income, consts);
    const auto steps = static_cast<std::size_t>(std::llround(opts.T / opts.dt));
    const double decay = std::exp(-(prefs.rho + prefs.delta) * opts.dt);

    ObjectiveRun run;
    double gamma0 = 0.0;
    {
        IncomeSimulator probe(income, x0, x1_coarse, opts.dt);
        const double hc = consts.g_inf * probe.y() + probe.window_inner(consts.h_inf);
        gamma0 = w + hc;
        if (!(gamma0 > 0.0))
            throw Error(ErrorCode::InadmissibleState, "estimate_J requires Gamma(0) > 0");
        run.value_closed_form = value_of_gamma(gamma0, consts, prefs).value;
    }

    Vec samples(opts.n_paths, 0.0);
    std::vector<RunCounters> counters(opts.n_paths);
    std::atomic<std::size_t> sentinel_count{0};

    parallel_for(opts.n_paths, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
            BrownianIncrements inc(opts.seed.seed, opts.seed.stream + p, market.n(), opts.dt);
            double acc = 0.0;
            double disc = 1.0;
            bool hit_sentinel = false;
            counters[p] = engine.run_closed_loop(
                w, x0, x1_coarse, opts.T, inc, opts.consumption_multiplier, 1e-12,
                [&](std::size_t k, double, double, double, double, const PolicyDecision& dec) {
                    if (k == steps) return;  // left-Riemann: no weight on the endpoint
                    const Utility u = utility_rate(dec.c, dec.B, prefs);
                    if (u.neg_inf) {
                        hit_sentinel = true;
                        return;
                    }
                    acc += disc * u.value * opts.dt;
                    disc *= decay;
                });
            if (hit_sentinel) ++sentinel_count;
            samples[p] = acc;
        }
    });

    if (sentinel_count.load() > 0)
        throw Error(ErrorCode::SentinelEncountered,
                    "objective hit a -infinity utility; the policy consumed zero under gamma > 1");

    run.estimate = estimate_from_samples(samples, opts.T,
                                         truncation_bound(consts, prefs, gamma0, opts.T));
    for (const auto& c : counters) {
        run.gamma_nonpositive += c.gamma_nonpositive;
        run.income_nonpositive += c.income_nonpositive;
    }
    run.min_gamma = counters.empty() ? 0.0 : counters.front().min_gamma;
    for (const auto& c : counters) run.min_gamma = std::min(run.min_gamma, c.min_gamma);
    return run;
}

} // namespace pdm
