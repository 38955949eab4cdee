#pragma once
#include "policy.hpp"

namespace pdm {

// Extended-real utility value: -infinity is an explicit tag, never a NaN, so
// the integrator can propagate and report it instead of averaging garbage.
struct Utility {
    double value = 0.0;
    bool neg_inf = false;

    static Utility finite(double v) { return {v, false}; }
    static Utility minus_infinity() { return {0.0, true}; }
};

// Instantaneous utility c^{1-gamma}/(1-gamma) + delta (kB)^{1-gamma}/(1-gamma).
// For gamma > 1 a zero control is the power-utility pole: returns the
// -infinity sentinel.
Utility utility_rate(double c, double B, const Preferences& prefs);

// Closed-form value function V = f_inf^gamma Gamma^{1-gamma} / (1-gamma); at
// the boundary V = 0 for gamma in (0,1) and -infinity for gamma > 1.
Utility value_function(double w, const IncomeState& state, const DerivedConstants& consts,
                       const Preferences& prefs, double tol_factor = 1e-12);
Utility value_of_gamma(double gamma_value, const DerivedConstants& consts,
                       const Preferences& prefs);

// Tail of the objective beyond horizon T under the optimal policy. Since
// E[Gamma*(s)^{1-gamma}] = Gamma0^{1-gamma} e^{(1-gamma)(r+delta+kappa'kappa/(2gamma)-1/nu)s},
// the discounted utility stream integrates to V (1 - e^{-T/nu}); the missing
// tail is exactly |V| e^{-T/nu}, monotone decreasing in T.
double truncation_bound(const DerivedConstants& consts, const Preferences& prefs,
                        double gamma0, double T);

struct ObjectiveOptions {
    double T = 60.0;
    double dt = 1.0 / 250.0;
    std::size_t n_paths = 20000;
    SeedRecord seed;
    double consumption_multiplier = 1.0;
};

struct ObjectiveRun {
    MCEstimate estimate;
    std::size_t gamma_nonpositive = 0;
    std::size_t income_nonpositive = 0;
    double min_gamma = 0.0;
    double value_closed_form = 0.0;  // V at the initial state
};

// Monte Carlo estimate of the objective under the feedback policy:
// left-Riemann integral of e^{-(rho+delta)s} u(c(s), B(s)) along closed-loop
// paths up to T. Controls come from the feedback map, so no sentinel occurs
// for Gamma(0) > 0; hitting one raises SentinelEncountered.
ObjectiveRun estimate_J(const MarketParams& market, const Preferences& prefs,
                        const IncomeParams& income, const DerivedConstants& consts, double w,
                        double x0, const Vec& x1_coarse, const ObjectiveOptions& opts);

} // namespace pdm
