#pragma once
#include <cmath>
#include <cstddef>

#include "types.hpp"

namespace pdm {

// Uniform grid of m+1 nodes on [-d, 0]; node 0 sits at s=-d, node m at s=0.
// Every L2(-d,0) inner product in the library uses trapezoid weights on this
// grid, so phi, h_inf and the income history never need interpolation against
// each other.
struct DelayGrid {
    double d = 0.0;
    std::size_t m = 0;

    DelayGrid() = default;
    DelayGrid(double d_, std::size_t m_) : d(d_), m(m_) {
        if (!(d > 0.0)) throw Error(ErrorCode::NonPositiveParameter, "delay d must be > 0");
        if (m < 2) throw Error(ErrorCode::InvalidArgument, "grid resolution m must be >= 2");
    }

    double ds() const { return d / static_cast<double>(m); }
    std::size_t nodes() const { return m + 1; }
    double node(std::size_t j) const { return -d + static_cast<double>(j) * ds(); }

    double weight(std::size_t j) const {
        double w = ds();
        return (j == 0 || j == m) ? 0.5 * w : w;
    }
};

// Trapezoid-rule inner product of two grid functions on [-d, 0].
inline double trapezoid_inner(const DelayGrid& g, const Vec& a, const Vec& b) {
    if (a.size() != g.nodes() || b.size() != g.nodes())
        throw Error(ErrorCode::GridMismatch, "trapezoid_inner: grid size mismatch");
    double s = 0.5 * (a[0] * b[0] + a[g.m] * b[g.m]);
    for (std::size_t j = 1; j < g.m; ++j) s += a[j] * b[j];
    return s * g.ds();
}

// Trapezoid-rule integral of one grid function on [-d, 0].
inline double trapezoid_integral(const DelayGrid& g, const Vec& a) {
    if (a.size() != g.nodes())
        throw Error(ErrorCode::GridMismatch, "trapezoid_integral: grid size mismatch");
    double s = 0.5 * (a[0] + a[g.m]);
    for (std::size_t j = 1; j < g.m; ++j) s += a[j];
    return s * g.ds();
}

// (1 - e^{-q d}) / q with the q -> 0 limit handled.
inline double discounted_window_mass(double q, double d) {
    if (std::abs(q * d) < 1e-12) return d * (1.0 - 0.5 * q * d);
    return -std::expm1(-q * d) / q;
}

} // namespace pdm
