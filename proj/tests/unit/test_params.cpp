#include <doctest.h>

#include <cmath>

#include "core/params.hpp"
#include "core/rng.hpp"

using namespace pdm;

namespace {

MarketParams market1(double r, double mu, double sigma) {
    MarketParams m;
    m.r = r;
    m.mu = {mu};
    m.sigma = SquareMatrix(1, Vec{sigma});
    return m;
}

IncomeParams income_const(double mu_y, Vec sigma_y, double d, std::size_t m, double phi_bar) {
    IncomeParams p;
    p.mu_y = mu_y;
    p.sigma_y = std::move(sigma_y);
    p.d = d;
    p.m = m;
    p.phi = phi_bar == 0.0 ? Kernel::zero() : Kernel::constant(phi_bar);
    return p;
}

} // namespace

TEST_CASE("kappa: identity, zero-excess and triangular cases") {
    MarketParams m = market1(0.02, 0.06, 1.0);
    CHECK(compute_kappa(m)[0] == doctest::Approx(0.04).epsilon(1e-15));

    m.mu = {0.02};
    CHECK(compute_kappa(m)[0] == 0.0);

    MarketParams m2;
    m2.r = 0.0;
    m2.mu = {0.04, 0.06};
    m2.sigma = SquareMatrix(2);
    m2.sigma(0, 0) = 0.2;
    m2.sigma(1, 1) = 0.3;
    Vec k = compute_kappa(m2);
    CHECK(k[0] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(k[1] == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("kappa round-trips through mu = sigma kappa + r 1") {
    // Random diagonally-dominant sigma and random kappa; residual and
    // round-trip both at 1e-12.
    NormalStream rng(99, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
        MarketParams m;
        m.r = 0.02;
        m.sigma = SquareMatrix(n);
        Vec kappa(n);
        std::uint64_t idx = 1000 * static_cast<std::uint64_t>(trial);
        for (std::size_t i = 0; i < n; ++i) {
            kappa[i] = 0.3 * rng.pair(idx++)[0];
            for (std::size_t j = 0; j < n; ++j) m.sigma(i, j) = 0.05 * rng.pair(idx++)[0];
            m.sigma(i, i) += 1.0;
        }
        m.mu.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = m.r;
            for (std::size_t j = 0; j < n; ++j) acc += m.sigma(i, j) * kappa[j];
            m.mu[i] = acc;
        }
        const Vec back = compute_kappa(m);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(back[i] - kappa[i]) <= 1e-12 * std::max(1.0, std::abs(kappa[i])));
        // residual ||sigma kappa - (mu - r 1)||
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += m.sigma(i, j) * back[j];
            CHECK(std::abs(acc - (m.mu[i] - m.r)) <= 1e-12 * std::max(1.0, std::abs(acc)));
        }
    }
}

TEST_CASE("beta_infinity: zero, constant and absolute-value kernels") {
    IncomeParams zero = income_const(0.01, {0.0}, 2.0, 50, 0.0);
    auto [b0, bb0] = compute_beta_infinity(zero, 0.02, 0.01);
    CHECK(b0 == 0.0);
    CHECK(bb0 == 0.0);

    // Constant kernel, r+delta = 0.05, d = 2: beta_inf = (0.05/0.05)(1-e^{-0.1}).
    IncomeParams c = income_const(0.01, {0.0}, 2.0, 50, 0.05);
    auto [b1, bb1] = compute_beta_infinity(c, 0.04, 0.01);
    const double expected = -std::expm1(-0.1);
    CHECK(b1 == doctest::Approx(expected).epsilon(1e-14));
    CHECK(bb1 == b1);  // phi >= 0: equality exactly

    // Sign-changing sampled kernel: beta_bar_inf strictly larger.
    DelayGrid g(2.0, 50);
    Vec vals(g.nodes());
    for (std::size_t j = 0; j < g.nodes(); ++j) vals[j] = (j % 2 == 0) ? 0.02 : -0.02;
    IncomeParams s = income_const(0.01, {0.0}, 2.0, 50, 0.0);
    s.phi = Kernel::sampled(vals);
    auto [b2, bb2] = compute_beta_infinity(s, 0.02, 0.01);
    CHECK(bb2 > b2);
    CHECK(bb2 >= std::abs(b2));

    // Nonnegative sampled kernel: exact equality (same floating sums).
    for (auto& v : vals) v = std::abs(v);
    s.phi = Kernel::sampled(vals);
    auto [b3, bb3] = compute_beta_infinity(s, 0.02, 0.01);
    CHECK(b3 == bb3);
}

TEST_CASE("sampled kernel quadrature approaches the analytic integral") {
    const double phi_bar = 0.03, r = 0.02, delta = 0.01, d = 2.0;
    const double analytic = phi_bar * (-std::expm1(-(r + delta) * d)) / (r + delta);
    IncomeParams s = income_const(0.0, {0.0}, d, 200, 0.0);
    s.phi = Kernel::sampled(Vec(201, phi_bar));
    auto [b, bb] = compute_beta_infinity(s, r, delta);
    CHECK(b == doctest::Approx(analytic).epsilon(1e-6));
    CHECK(bb == b);
}

TEST_CASE("g_inf and h_inf: boundary values and closed forms") {
    const double r = 0.02, delta = 0.01;

    SUBCASE("zero kernel: g = 1/beta, h = 0") {
        IncomeParams z = income_const(0.01, {0.0}, 2.0, 50, 0.0);
        const double beta = 0.02;
        auto [g, h] = compute_g_h_infinity(z, r, delta, beta, 0.0);
        CHECK(g == doctest::Approx(1.0 / beta).epsilon(1e-15));
        for (double v : h) CHECK(v == 0.0);
    }

    SUBCASE("constant kernel: pointwise convolution values") {
        IncomeParams c = income_const(0.01, {0.0}, 2.0, 50, 0.01);
        auto [bi, bbi] = compute_beta_infinity(c, r, delta);
        const double beta = 0.04;
        auto [g, h] = compute_g_h_infinity(c, r, delta, beta, bi);
        CHECK(h.front() == 0.0);
        // h(0) = beta g - 1 for named kernels.
        CHECK(std::abs(h.back() - (beta * g - 1.0)) <= 1e-12);
        const DelayGrid grid = c.grid();
        for (std::size_t j = 0; j < grid.nodes(); ++j) {
            const double s = grid.node(j);
            const double ref =
                g * 0.01 * (-std::expm1(-(r + delta) * (s + 2.0))) / (r + delta);
            CHECK(h[j] == doctest::Approx(ref).epsilon(1e-13));
        }
    }

    SUBCASE("exponential kernel satisfies the ODE") {
        IncomeParams e = income_const(0.01, {0.0}, 2.0, 400, 0.0);
        e.phi = Kernel::exponential(0.02, 0.5);
        auto [bi, bbi] = compute_beta_infinity(e, r, delta);
        const double beta = 0.06;
        auto [g, h] = compute_g_h_infinity(e, r, delta, beta, bi);
        CHECK(h.front() == 0.0);
        CHECK(std::abs(h.back() - (beta * g - 1.0)) <= 1e-12);
        const DelayGrid grid = e.grid();
        // Midpoint finite differences against g phi - (r+delta) h.
        for (std::size_t j = 100; j < 110; ++j) {
            const double fd = (h[j + 1] - h[j - 1]) / (2.0 * grid.ds());
            const double rhs = g * e.phi.eval(grid.node(j)) - (r + delta) * h[j];
            CHECK(fd == doctest::Approx(rhs).epsilon(1e-4));
        }
    }

    SUBCASE("sampled kernel: h(0) = g beta_inf exactly by construction") {
        DelayGrid grid(2.0, 64);
        Vec vals(grid.nodes());
        for (std::size_t j = 0; j < grid.nodes(); ++j)
            vals[j] = 0.01 * std::sin(3.0 * grid.node(j)) + 0.005;
        IncomeParams s = income_const(0.01, {0.0}, 2.0, 64, 0.0);
        s.phi = Kernel::sampled(vals);
        auto [bi, bbi] = compute_beta_infinity(s, r, delta);
        const double beta = 0.05;
        auto [g, h] = compute_g_h_infinity(s, r, delta, beta, bi);
        CHECK(h.front() == 0.0);
        CHECK(std::abs(h.back() - (beta * g - 1.0)) <= 1e-12);
    }

    SUBCASE("h ODE residual shrinks at rate O(d/m)") {
        Vec residuals;
        for (std::size_t m : {50u, 100u, 200u, 400u}) {
            IncomeParams c = income_const(0.01, {0.0}, 2.0, m, 0.01);
            auto [bi, bbi] = compute_beta_infinity(c, r, delta);
            auto [g, h] = compute_g_h_infinity(c, r, delta, 0.04, bi);
            const DelayGrid grid = c.grid();
            double worst = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double fd = (h[j + 1] - h[j]) / grid.ds();
                const double rhs = g * 0.01 - (r + delta) * h[j];
                worst = std::max(worst, std::abs(fd - rhs));
            }
            residuals.push_back(worst);
        }
        for (std::size_t i = 0; i + 1 < residuals.size(); ++i)
            CHECK(residuals[i] / residuals[i + 1] > 1.5);
    }
}

TEST_CASE("nu and f_inf") {
    // rho=0.03, delta=0.01, r=0.02, kappa'kappa=0.04, gamma=0.5 => nu = 100.
    Preferences p{0.03, 0.5, 1.0, 0.01};
    NuF nf = compute_nu_f(p, Vec{0.2}, 0.02);
    CHECK(nf.nu == doctest::Approx(100.0).epsilon(1e-12));
    // b = 1 - 1/gamma = -1, k = 1 => f = (1 + delta) nu.
    CHECK(nf.f_inf == doctest::Approx(1.01 * 100.0).epsilon(1e-12));
    CHECK(nf.gamma_star_vol[0] == doctest::Approx(0.4).epsilon(1e-15));
    // drift identity: r + delta + kappa'kappa/gamma - 1/nu.
    CHECK(nf.gamma_star_drift == doctest::Approx(0.02 + 0.01 + 0.08 - 0.01).epsilon(1e-12));

    // delta = 0: bequest term vanishes, f = nu.
    Preferences p0{0.03, 0.5, 1.0, 0.0};
    NuF nf0 = compute_nu_f(p0, Vec{0.0}, 0.02);
    CHECK(nf0.f_inf == doctest::Approx(nf0.nu).epsilon(1e-15));

    CHECK_THROWS_AS(compute_nu_f(Preferences{0.001, 0.5, 1.0, 0.001}, Vec{0.6}, 0.06), Error);
}

TEST_CASE("validate: gate conditions and named violations") {
    MarketParams m = market1(0.02, 0.02, 1.0);
    Preferences p{0.03, 0.5, 1.0, 0.01};
    IncomeParams inc = income_const(0.01, {0.0}, 2.0, 50, 0.0);

    SUBCASE("identity/zero baseline is valid") {
        const ValidationReport rep = validate(m, p, inc);
        CHECK(rep.ok());
        CHECK(rep.beta == doctest::Approx(0.02).epsilon(1e-15));
    }

    SUBCASE("gamma = 1 excluded") {
        Preferences p1 = p;
        p1.gamma = 1.0;
        const ValidationReport rep = validate(m, p1, inc);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues.front().code == ErrorCode::GammaExcluded);
    }

    SUBCASE("hypothesis I: beta = 0 against a constant kernel") {
        // r=0.02, delta=0.01, mu_y=0.03, sigma_y=0, kappa=0, phi=0.05, d=2:
        // beta = 0, beta_bar_inf = 0.05 (1-e^{-0.06})/0.03 ~ 0.0970588.
        IncomeParams bad = income_const(0.03, {0.0}, 2.0, 50, 0.05);
        const ValidationReport rep = validate(m, p, bad);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues.front().code == ErrorCode::HypothesisIViolated);
        CHECK(rep.beta == doctest::Approx(0.0).epsilon(1e-15));
        const double hand = 0.05 * (-std::expm1(-0.06)) / 0.03;
        CHECK(rep.beta_bar_inf == doctest::Approx(hand).epsilon(1e-14));
    }

    SUBCASE("hypothesis II: explosive value function rejected") {
        MarketParams hot = market1(0.06, 0.06 + 0.2 * 0.6, 0.2);  // kappa = 0.6
        Preferences pg{0.001, 0.5, 1.0, 0.001};
        IncomeParams ok = income_const(0.0, {0.0}, 2.0, 50, 0.0);
        const ValidationReport rep = validate(hot, pg, ok);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues.front().code == ErrorCode::HypothesisIIViolated);
    }

    SUBCASE("nonpositive parameters named") {
        Preferences bad{-0.1, 0.5, 1.0, 0.01};
        const ValidationReport rep = validate(m, bad, inc);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues.front().code == ErrorCode::NonPositiveParameter);
    }

    SUBCASE("singular sigma named") {
        MarketParams bad = m;
        bad.sigma = SquareMatrix(1, Vec{0.0});
        const ValidationReport rep = validate(bad, p, inc);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues.front().code == ErrorCode::SigmaSingular);
    }
}

TEST_CASE("derived constants: invariants and purity") {
    MarketParams m = market1(0.02, 0.06, 0.2);
    Preferences p{0.03, 0.5, 1.0, 0.01};
    IncomeParams inc = income_const(0.01, {0.1}, 2.0, 50, 0.01);

    const DerivedConstants a = derive_constants(m, p, inc);
    const DerivedConstants b = derive_constants(m, p, inc);

    CHECK(a.kappa[0] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(a.beta == doctest::Approx(0.04).epsilon(1e-14));
    CHECK(a.beta - a.beta_bar_inf > 0.0);
    CHECK(a.g_inf > 0.0);
    CHECK(a.nu == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(a.f_inf == doctest::Approx(101.0).epsilon(1e-12));
    CHECK(a.gamma_star_vol[0] == a.kappa[0] / p.gamma);
    // Two routes to the drift: via 1/nu and via f_inf^{-1}(1 + delta k^{-b}).
    const double via_f = m.r + p.delta + a.kappa_sq / p.gamma -
                         (1.0 + a.delta_bequest_weight) / a.f_inf;
    CHECK(a.gamma_star_drift == doctest::Approx(via_f).epsilon(1e-13));

    // Purity: identical inputs give byte-identical outputs.
    CHECK(a.h_inf == b.h_inf);
    CHECK(a.kappa == b.kappa);
    CHECK(a.g_inf == b.g_inf);
}
