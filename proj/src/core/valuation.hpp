#pragma once
#include "income.hpp"
#include "mc.hpp"
#include "params.hpp"

namespace pdm {

// Pre-death state-price density along a Brownian path; xi(0) = 1 and xi > 0
// by the exact log-space update.
struct StatePriceDensityPath {
    Vec values;
    double dt = 0.0;
};

StatePriceDensityPath state_price_density(double r, double delta, const Vec& kappa,
                                          const BrownianPath& brownian);

// Market value of human capital on the discrete state:
//   g_inf * y + <h_inf, history>   (trapezoid inner product on [-d, 0]).
double human_capital(const IncomeState& state, const DerivedConstants& consts);

enum class RegionClass { Interior, Boundary, Inadmissible };

struct GammaTotal {
    double value = 0.0;
    RegionClass region = RegionClass::Interior;
    double tol = 0.0;  // the scaled boundary tolerance that classified it
};

// Total wealth Gamma(w, x) = w + human capital, classified against a
// tolerance that scales with max(1, |w|, |human capital|).
GammaTotal gamma_total(double w, const IncomeState& state, const DerivedConstants& consts,
                       double tol_factor = 1e-12);

// Truncation-bias bound for E[int_T^inf xi(u) y(u) du].
//
// M(u) := E[xi(u) y(u)] satisfies the deterministic delay ODE
//   M'(u) = -beta M(u) + int_{-d}^0 phi(s) e^{(r+delta)s} M(u+s) ds,
// with history M(v) = x1(v) e^{-(r+delta)v}. Under beta > beta_bar_inf the
// Halanay inequality gives |M(u)| <= S(T) e^{-lambda*(u-T)} for u >= T, where
// S(T) = sup over [T-d, T] of |M| and lambda* solves
// lambda = beta - beta_bar_inf e^{lambda d}. The tail is then bounded by
// S(T)/lambda*. Everything here is deterministic quadrature: no use of the
// closed-form representation being verified.
struct TailBound {
    double bound = 0.0;
    double lambda_star = 0.0;
    double window_sup = 0.0;  // S(T)
};

TailBound income_value_tail_bound(const IncomeParams& income, const DerivedConstants& consts,
                                  double r, double delta, double x0, const Vec& x1_coarse,
                                  double T, double dt);

// Integrates the expectation ODE above and returns M on [0, T] (used by the
// tail bound and by its brute-force validity test).
Vec expectation_ode_path(const IncomeParams& income, const DerivedConstants& consts, double r,
                         double delta, double x0, const Vec& x1_coarse, double T, double dt);

// Monte Carlo estimate of E[int_0^T xi(u) y(u) du] on coupled (y, xi) paths
// sharing increments; the truncation bound above covers the discarded tail.
MCEstimate human_capital_mc_oracle(const MarketParams& market, const Preferences& prefs,
                                   const IncomeParams& income, const DerivedConstants& consts,
                                   double x0, const Vec& x1_coarse, double T,
                                   std::size_t n_paths, double dt, SeedRecord seed);

} // namespace pdm
