#include <doctest.h>

#include <cmath>

#include "core/grid.hpp"
#include "core/income.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"

using namespace pdm;

TEST_CASE("LU solves small systems") {
    // Triangular 2x2 by hand: diag(0.2,0.3) x = (0.04,0.06) => x = (0.2,0.2).
    SquareMatrix d(2);
    d(0, 0) = 0.2;
    d(1, 1) = 0.3;
    LuFactorization lu(d);
    Vec x = lu.solve({0.04, 0.06});
    CHECK(x[0] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(0.2).epsilon(1e-14));

    // A = [[1,2],[3,4]], A^T x = (1,1) => x = (-0.5, 0.5).
    SquareMatrix a(2, Vec{1, 2, 3, 4});
    LuFactorization lua(a);
    Vec xt = lua.solve_transpose({1.0, 1.0});
    CHECK(xt[0] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(xt[1] == doctest::Approx(0.5).epsilon(1e-14));

    CHECK(LuFactorization(SquareMatrix::identity(3)).condition() == doctest::Approx(1.0));
    CHECK_THROWS_AS(LuFactorization(SquareMatrix(2)), Error);
}

TEST_CASE("trapezoid rule on the delay grid") {
    DelayGrid g(1.0, 100);
    Vec ones(g.nodes(), 1.0);
    // Exact for constants.
    CHECK(trapezoid_integral(g, ones) == doctest::Approx(1.0).epsilon(1e-14));

    Vec es(g.nodes());
    for (std::size_t j = 0; j < g.nodes(); ++j) es[j] = std::exp(g.node(j));
    const double exact = 1.0 - std::exp(-1.0);
    CHECK(std::abs(trapezoid_integral(g, es) - exact) < 1e-4);

    CHECK_THROWS_AS(trapezoid_inner(g, ones, Vec(3, 1.0)), Error);
}

TEST_CASE("discounted window mass handles the q -> 0 limit") {
    CHECK(discounted_window_mass(0.0, 2.0) == doctest::Approx(2.0));
    CHECK(discounted_window_mass(0.05, 2.0) ==
          doctest::Approx(-std::expm1(-0.1) / 0.05).epsilon(1e-15));
}

TEST_CASE("philox normals are addressable and reproducible") {
    NormalStream s(42, 7);
    auto p1 = s.pair(1234);
    auto p2 = s.pair(1234);
    CHECK(p1[0] == p2[0]);
    CHECK(p1[1] == p2[1]);
    CHECK(NormalStream(42, 8).pair(1234)[0] != p1[0]);
    CHECK(NormalStream(43, 7).pair(1234)[0] != p1[0]);

    // Moments over 1e5 draws: mean within 3/sqrt(N), variance within 3*sqrt(2/N).
    const std::size_t n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n / 2; ++i) {
        auto z = s.pair(i);
        sum += z[0] + z[1];
        sumsq += z[0] * z[0] + z[1] * z[1];
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sumsq / static_cast<double>(n) - mean * mean;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("brownian path generation and coarsening") {
    BrownianPath p = BrownianPath::generate({7, 3}, 2, 8, 0.25);
    BrownianPath q = BrownianPath::generate({7, 3}, 2, 8, 0.25);
    CHECK(p.increments == q.increments);  // bitwise reproducible

    BrownianPath c = p.coarsen(4);
    CHECK(c.steps == 2);
    CHECK(c.dt == doctest::Approx(1.0));
    double s = 0.0;
    for (std::size_t k = 0; k < 4; ++k) s += p.at(k, 1);
    CHECK(c.at(0, 1) == doctest::Approx(s).epsilon(1e-15));

    CHECK_THROWS_AS(p.coarsen(3), Error);
}
