#include <doctest.h>

#include <cmath>

#include "core/objective.hpp"

using namespace pdm;

namespace {

struct Setup {
    MarketParams market;
    Preferences prefs;
    IncomeParams income;
    DerivedConstants consts;
};

Setup make_setup(double gamma = 0.5, double mu = 0.06, double sigma_y = 0.1,
                 double phi_bar = 0.01, double mu_y = 0.01) {
    Setup s;
    s.market.r = 0.02;
    s.market.mu = {mu};
    s.market.sigma = SquareMatrix(1, Vec{0.2});
    s.prefs = {0.03, gamma, 1.0, 0.01};
    s.income.mu_y = mu_y;
    s.income.sigma_y = {sigma_y};
    s.income.d = 2.0;
    s.income.m = 50;
    s.income.phi = phi_bar == 0.0 ? Kernel::zero() : Kernel::constant(phi_bar);
    s.consts = derive_constants(s.market, s.prefs, s.income);
    return s;
}

IncomeState unit_state(const Setup& s, double x0 = 1.0) {
    return IncomeState(0.0, x0, Vec(s.income.m + 1, x0), s.income.grid().ds());
}

double initial_gamma(const Setup& s, double w) {
    return w + human_capital(unit_state(s), s.consts);
}

} // namespace

TEST_CASE("utility rate") {
    Preferences p{0.03, 0.5, 1.0, 0.0};
    // gamma = 0.5, delta = 0: u(4, anything) = 4^{0.5}/0.5 = 4.
    CHECK(utility_rate(4.0, 1.0, p).value == doctest::Approx(4.0).epsilon(1e-15));
    // c = B = 0 with gamma in (0,1): zero utility.
    const Utility z = utility_rate(0.0, 0.0, p);
    CHECK_FALSE(z.neg_inf);
    CHECK(z.value == 0.0);
    // gamma = 2: power pole at zero consumption -> explicit sentinel.
    Preferences p2{0.03, 2.0, 1.0, 0.01};
    CHECK(utility_rate(0.0, 1.0, p2).neg_inf);
    CHECK(utility_rate(1.0, 0.0, p2).neg_inf);
    CHECK_FALSE(utility_rate(1.0, 1.0, p2).neg_inf);
    CHECK_THROWS_AS(utility_rate(-1.0, 0.0, p), Error);
}

TEST_CASE("value function: boundary cases and homogeneity") {
    for (double gamma : {0.5, 2.0}) {
        Setup s = make_setup(gamma);
        const IncomeState st = unit_state(s);
        const double hc = human_capital(st, s.consts);

        const Utility at_boundary = value_function(-hc, st, s.consts, s.prefs);
        if (gamma < 1.0) {
            CHECK_FALSE(at_boundary.neg_inf);
            CHECK(at_boundary.value == 0.0);
        } else {
            CHECK(at_boundary.neg_inf);
        }

        CHECK_THROWS_AS(value_function(-hc - 1.0, st, s.consts, s.prefs), Error);

        // V(2w, 2x) = 2^{1-gamma} V(w, x).
        Vec hist2(st.history.size());
        for (std::size_t j = 0; j < hist2.size(); ++j) hist2[j] = 2.0 * st.history[j];
        const IncomeState st2(0.0, 2.0, hist2, st.ds);
        const double v1 = value_function(1.0, st, s.consts, s.prefs).value;
        const double v2 = value_function(2.0, st2, s.consts, s.prefs).value;
        CHECK(v2 == doctest::Approx(std::pow(2.0, 1.0 - gamma) * v1).epsilon(1e-12));
    }
}

TEST_CASE("truncation bound") {
    Setup s = make_setup();
    const double gamma0 = initial_gamma(s, 1.0);
    const double v = std::abs(value_of_gamma(gamma0, s.consts, s.prefs).value);

    // T = 0: the bound is the whole objective.
    CHECK(truncation_bound(s.consts, s.prefs, gamma0, 0.0) == doctest::Approx(v).epsilon(1e-14));
    // (1/nu) T = ln 1000: bound = |V|/1000.
    const double T1000 = s.consts.nu * std::log(1000.0);
    CHECK(truncation_bound(s.consts, s.prefs, gamma0, T1000) ==
          doctest::Approx(v / 1000.0).epsilon(1e-12));
    // Doubling T squares the relative factor.
    const double b1 = truncation_bound(s.consts, s.prefs, gamma0, 30.0) / v;
    const double b2 = truncation_bound(s.consts, s.prefs, gamma0, 60.0) / v;
    CHECK(b2 == doctest::Approx(b1 * b1).epsilon(1e-12));
    // Monotone decreasing in T.
    CHECK(truncation_bound(s.consts, s.prefs, gamma0, 40.0) <
          truncation_bound(s.consts, s.prefs, gamma0, 20.0));
}

TEST_CASE("estimate_J: fully deterministic scenario equals V(1 - e^{-T/nu})") {
    // mu = r (kappa = 0), sigma_y = 0, phi = 0: the closed loop is an ODE and
    // every path returns the same value, so stderr = 0 and the only gap is
    // the O(dt) quadrature/EM bias.
    for (double gamma : {0.5, 2.0}) {
        Setup s = make_setup(gamma, 0.02, 0.0, 0.0);
        ObjectiveOptions opts;
        opts.T = 30.0;
        opts.dt = 0.004;
        opts.n_paths = 4;
        opts.seed = {51, 0};
        const ObjectiveRun run = estimate_J(s.market, s.prefs, s.income, s.consts, 1.0, 1.0,
                                            Vec(51, 1.0), opts);
        CHECK(run.estimate.stderr_ == 0.0);
        const double expected =
            run.value_closed_form * (-std::expm1(-opts.T / s.consts.nu));
        CHECK(run.estimate.mean ==
              doctest::Approx(expected).epsilon(5e-4));
        // and the bound matches the exact remaining tail
        CHECK(run.estimate.truncation_bound ==
              doctest::Approx(std::abs(run.value_closed_form) *
                              std::exp(-opts.T / s.consts.nu)).epsilon(1e-12));
    }
}

TEST_CASE("estimate_J: stderr shrinks like 1/sqrt(n)") {
    Setup s = make_setup();
    ObjectiveOptions opts;
    opts.T = 5.0;
    opts.dt = 0.01;
    opts.n_paths = 2000;
    opts.seed = {53, 0};
    const ObjectiveRun a = estimate_J(s.market, s.prefs, s.income, s.consts, 1.0, 1.0,
                                      Vec(51, 1.0), opts);
    opts.n_paths = 4000;
    const ObjectiveRun b = estimate_J(s.market, s.prefs, s.income, s.consts, 1.0, 1.0,
                                      Vec(51, 1.0), opts);
    const double ratio = b.estimate.stderr_ / a.estimate.stderr_;
    CHECK(ratio > 0.6);
    CHECK(ratio < 0.82);
}

TEST_CASE("estimate_J: perturbed consumption matches its own closed form") {
    // With c = m Gamma/f_inf (B unchanged), Gamma stays a stochastic
    // exponential with drift r+delta+kappa'kappa/gamma - (m+delta k^{-b})/f_inf,
    // so J_m(T) = (m^{1-gamma}+delta k^{-b}) f^{gamma-1} Gamma0^{1-gamma}
    //             / ((1-gamma) lambda_m) * (1-e^{-lambda_m T}),
    // lambda_m = gamma/nu + (1-gamma)(m+delta k^{-b})/f_inf. This exercises
    // the whole closed-loop + objective pipeline against an analytic value.
    for (double gamma : {0.5, 2.0}) {
        Setup s = make_setup(gamma);
        const double gamma0 = initial_gamma(s, 1.0);
        const double v = value_of_gamma(gamma0, s.consts, s.prefs).value;
        for (double mult : {0.8, 1.2}) {
            const double dkb = s.consts.delta_bequest_weight;
            const double lambda_m =
                gamma / s.consts.nu + (1.0 - gamma) * (mult + dkb) / s.consts.f_inf;
            REQUIRE(lambda_m > 0.0);
            const double j_inf = (std::pow(mult, 1.0 - gamma) + dkb) *
                                 std::pow(s.consts.f_inf, gamma - 1.0) *
                                 std::pow(gamma0, 1.0 - gamma) / (1.0 - gamma) / lambda_m;
            CHECK(j_inf < v);  // strict suboptimality, analytically

            ObjectiveOptions opts;
            opts.T = 100.0;
            opts.dt = 0.02;
            opts.n_paths = 2000;
            opts.seed = {59, static_cast<std::uint64_t>(gamma * 100 + mult * 10)};
            opts.consumption_multiplier = mult;
            const ObjectiveRun run = estimate_J(s.market, s.prefs, s.income, s.consts, 1.0,
                                                1.0, Vec(51, 1.0), opts);
            const double expected = j_inf * (-std::expm1(-lambda_m * opts.T));
            const double discretization_allowance = 2e-3 * std::abs(j_inf);
            CHECK(std::abs(run.estimate.mean - expected) <=
                  3.0 * run.estimate.stderr_ + discretization_allowance);
        }
    }
}

TEST_CASE("estimate_J: sentinel and admissibility errors") {
    Setup s2 = make_setup(2.0);
    ObjectiveOptions opts;
    opts.T = 1.0;
    opts.dt = 0.004;
    opts.n_paths = 2;
    opts.seed = {61, 0};

    // Zero-consumption policy under gamma > 1 must be reported, not averaged.
    opts.consumption_multiplier = 0.0;
    CHECK_THROWS_AS(
        estimate_J(s2.market, s2.prefs, s2.income, s2.consts, 1.0, 1.0, Vec(51, 1.0), opts),
        Error);

    // Gamma(0) > 0 is a strict precondition.
    opts.consumption_multiplier = 1.0;
    const double hc = human_capital(unit_state(s2), s2.consts);
    CHECK_THROWS_AS(
        estimate_J(s2.market, s2.prefs, s2.income, s2.consts, -hc, 1.0, Vec(51, 1.0), opts),
        Error);
}
