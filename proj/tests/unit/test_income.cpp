#include <doctest.h>

#include <cmath>

#include "core/income.hpp"
#include "core/mc.hpp"

using namespace pdm;

namespace {

IncomeParams desk_income(double mu_y = 0.01, double sigma_y = 0.1, double phi_bar = 0.01) {
    IncomeParams p;
    p.mu_y = mu_y;
    p.sigma_y = {sigma_y};
    p.d = 2.0;
    p.m = 50;
    p.phi = phi_bar == 0.0 ? Kernel::zero() : Kernel::constant(phi_bar);
    return p;
}

} // namespace

TEST_CASE("convolve: trapezoid values") {
    Vec zeros(51, 0.0), ones(51, 1.0);
    CHECK(convolve(ones, zeros, 0.04) == 0.0);

    // Constant history c and kernel phi_bar: c * phi_bar * d (trapezoid exact).
    Vec hist(51, 3.0), kern(51, 0.05);
    CHECK(convolve(hist, kern, 0.04) == doctest::Approx(3.0 * 0.05 * 2.0).epsilon(1e-12));

    // history e^{s} on [-1,0], kernel 1, m=100: integral = 1 - 1/e.
    Vec es(101), one101(101, 1.0);
    for (std::size_t j = 0; j <= 100; ++j) es[j] = std::exp(-1.0 + 0.01 * static_cast<double>(j));
    CHECK(std::abs(convolve(es, one101, 0.01) - (1.0 - std::exp(-1.0))) < 1e-4);

    CHECK_THROWS_AS(convolve(hist, one101, 0.01), Error);
}

TEST_CASE("step compatibility: dt must divide ds") {
    IncomeParams p = desk_income();
    CHECK_THROWS_AS(IncomeSimulator(p, 1.0, Vec(51, 1.0), 0.03), Error);
    CHECK_NOTHROW(IncomeSimulator(p, 1.0, Vec(51, 1.0), 0.04));      // p = 1
    CHECK_NOTHROW(IncomeSimulator(p, 1.0, Vec(51, 1.0), 1.0 / 250)); // p = 10
}

TEST_CASE("deterministic exponential growth when phi = 0, sigma_y = 0") {
    IncomeParams p;
    p.mu_y = 0.01;
    p.sigma_y = {0.0};
    p.d = 1.0;
    p.m = 2;
    p.phi = Kernel::zero();
    const double dt = 1e-3;
    IncomeSimulator sim(p, 1.0, Vec(3, 1.0), dt);
    const double no_noise = 0.0;
    for (int k = 0; k < 1000; ++k) sim.step(&no_noise);
    CHECK(std::abs(sim.y() - std::exp(0.01)) < 1e-4 * std::exp(0.01));
}

TEST_CASE("history buffer consistency: right endpoint is the live value") {
    IncomeParams p = desk_income();
    IncomeSimulator sim(p, 1.0, Vec(51, 1.0), 1.0 / 250);
    BrownianIncrements inc(7, 0, 1, 1.0 / 250);
    Vec dz(1);
    for (std::uint64_t k = 0; k < 777; ++k) {
        inc.fill(k, dz.data());
        sim.step(dz.data());
    }
    const IncomeState st = sim.state();
    CHECK(st.history.back() == sim.y());
    CHECK(st.history.size() == 51);
    CHECK(st.ds == doctest::Approx(0.04));
}

TEST_CASE("simulate_income: determinism, T=0, positivity bookkeeping") {
    IncomeParams p = desk_income();
    const Vec x1(51, 1.0);

    const IncomePathResult a = simulate_income(p, 1.0, x1, 2.0, 1.0 / 250, {11, 5});
    const IncomePathResult b = simulate_income(p, 1.0, x1, 2.0, 1.0 / 250, {11, 5});
    CHECK(a.y == b.y);  // bitwise identical

    const IncomePathResult t0 = simulate_income(p, 1.0, x1, 0.0, 1.0 / 250, {11, 5});
    CHECK(t0.y.size() == 1);
    CHECK(t0.y[0] == 1.0);

    // x0 > 0, x1 >= 0, phi >= 0: positive paths at desk scale.
    std::size_t crossings = 0;
    for (std::uint64_t path = 0; path < 200; ++path) {
        const IncomePathResult r = simulate_income(p, 1.0, x1, 5.0, 1.0 / 250, {11, path});
        crossings += r.nonpositive_count;
        CHECK(r.min_y > 0.0);
    }
    CHECK(crossings == 0);
}

TEST_CASE("phi = 0 moments match the GBM formulas") {
    IncomeParams p = desk_income(0.01, 0.25, 0.0);
    const Vec x1(51, 1.0);
    const double T = 1.0, dt = 1.0 / 250;
    const std::size_t n = 100000;

    Vec terminal(n, 0.0);
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t path = lo; path < hi; ++path)
            terminal[path] = simulate_income(p, 1.0, x1, T, dt, {202, path}).y.back();
    });
    const double mean = pairwise_sum(terminal) / static_cast<double>(n);

    Vec sq(n), fourth(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = terminal[i] - mean;
        sq[i] = d * d;
        fourth[i] = d * d * d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    const double m4 = pairwise_sum(fourth) / static_cast<double>(n);

    const double mean_exact = std::exp(p.mu_y * T);
    const double var_exact =
        std::exp(2.0 * p.mu_y * T) * std::expm1(0.25 * 0.25 * T);
    const double se_mean = std::sqrt(var / static_cast<double>(n));
    const double se_var = std::sqrt((m4 - var * var) / static_cast<double>(n));

    CHECK(std::abs(mean - mean_exact) < 3.0 * se_mean);
    CHECK(std::abs(var - var_exact) < 3.0 * se_var);
}

TEST_CASE("pure-delay dynamics against an independent fine-step oracle") {
    // mu_y = 0, sigma_y = 0, constant phi = 0.1, history = 1, d = 1:
    // y'(t) = 0.1 * int_{t-1}^t y. Oracle: explicit Euler at dt = 1e-5 with a
    // running trapezoid of the window integral.
    const double phi_bar = 0.1, d = 1.0, T = 1.0;
    const double dt_ref = 1e-5;
    const auto n_hist = static_cast<std::size_t>(std::llround(d / dt_ref));
    const auto n_steps = static_cast<std::size_t>(std::llround(T / dt_ref));
    Vec y(n_hist + n_steps + 1, 1.0);
    double window = d;  // integral of the constant initial history
    for (std::size_t k = 0; k < n_steps; ++k) {
        const std::size_t cur = n_hist + k;
        const double dydt = phi_bar * window;
        y[cur + 1] = y[cur] + dydt * dt_ref;
        window += 0.5 * dt_ref * (y[cur] + y[cur + 1]) -
                  0.5 * dt_ref * (y[cur + 1 - n_hist] + y[cur - n_hist]);
    }
    const double reference = y.back();

    IncomeParams p;
    p.mu_y = 0.0;
    p.sigma_y = {0.0};
    p.d = d;
    p.m = 50;
    p.phi = Kernel::constant(phi_bar);
    IncomeSimulator sim(p, 1.0, Vec(51, 1.0), 1e-3);
    const double no_noise = 0.0;
    for (int k = 0; k < 1000; ++k) sim.step(&no_noise);
    CHECK(std::abs(sim.y() - reference) < 1e-3);
}

TEST_CASE("variation-of-constants oracle") {
    SUBCASE("phi = 0 reduces to the exact GBM exponential") {
        IncomeParams p = desk_income(0.02, 0.3, 0.0);
        const Vec x1(51, 1.0);
        const BrownianPath bp = BrownianPath::generate({33, 1}, 1, 500, 1.0 / 250);
        const Vec oracle = variation_of_constants_oracle(p, 1.0, x1, bp);
        double z = 0.0;
        for (std::size_t k = 0; k < bp.steps; ++k) {
            z += bp.at(k, 0);
            const double t = static_cast<double>(k + 1) / 250.0;
            const double exact = std::exp((0.02 - 0.5 * 0.09) * t + 0.3 * z);
            CHECK(oracle[k + 1] == doctest::Approx(exact).epsilon(1e-12));
        }
    }

    SUBCASE("zero initial data stays zero") {
        IncomeParams p = desk_income();
        const BrownianPath bp = BrownianPath::generate({33, 2}, 1, 100, 1.0 / 250);
        const Vec oracle = variation_of_constants_oracle(p, 0.0, Vec(51, 0.0), bp);
        for (double v : oracle) CHECK(v == 0.0);
    }

    SUBCASE("euler path and oracle converge to each other as dt halves") {
        IncomeParams p = desk_income();
        const Vec x1(51, 1.0);
        const double T = 1.0;
        const std::size_t n_paths = 64;
        const int levels = 4;
        Vec err(levels, 0.0);
        for (std::uint64_t path = 0; path < n_paths; ++path) {
            const BrownianPath fine =
                BrownianPath::generate({404, path}, 1, 2000 * 8, 1.0 / 2000);
            for (int l = 0; l < levels; ++l) {
                const BrownianPath level = fine.coarsen(std::size_t{8} >> l);
                IncomeSimulator sim(p, 1.0, x1, level.dt);
                const Vec oracle = variation_of_constants_oracle(p, 1.0, x1, level);
                double worst = 0.0;
                for (std::size_t k = 0; k < level.steps; ++k) {
                    sim.step(level.step_ptr(k));
                    worst = std::max(worst, std::abs(sim.y() - oracle[k + 1]));
                }
                err[l] += worst / static_cast<double>(n_paths);
            }
        }
        for (int l = 0; l + 1 < levels; ++l) CHECK(err[l] / err[l + 1] >= 1.3);
    }
}
