#pragma once
#include <array>
#include <cmath>
#include <cstdint>

#include "types.hpp"

namespace pdm {

// Philox4x32-10 counter-based generator (Salmon et al.). Chosen because every
// draw is addressed by (seed, stream, counter): path j produces the same
// numbers no matter how paths are partitioned across threads, which the
// Monte Carlo reducers rely on. Header-only so the per-step draw inlines into
// the simulation loops.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint64_t counter_lo,
                                              std::uint64_t counter_hi) {
        constexpr std::uint32_t kM0 = 0xD2511F53u;
        constexpr std::uint32_t kM1 = 0xCD9E8D57u;
        constexpr std::uint32_t kW0 = 0x9E3779B9u;
        constexpr std::uint32_t kW1 = 0xBB67AE85u;
        std::uint32_t c0 = static_cast<std::uint32_t>(counter_lo);
        std::uint32_t c1 = static_cast<std::uint32_t>(counter_lo >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(counter_hi);
        std::uint32_t c3 = static_cast<std::uint32_t>(counter_hi >> 32);
        std::uint32_t k0 = static_cast<std::uint32_t>(key);
        std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
        for (int r = 0; r < 10; ++r) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c2;
            const std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1 ^ k0;
            const std::uint32_t n1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3 ^ k1;
            const std::uint32_t n3 = static_cast<std::uint32_t>(p0);
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += kW0;
            k1 += kW1;
        }
        return {c0, c1, c2, c3};
    }
};

namespace detail {
// 64-bit word to a uniform in (0, 1]; the upper endpoint is harmless to
// Box-Muller (log(1) = 0) and the lower bound 2^-53 caps |z| around 8.5.
inline double to_unit(std::uint64_t x) {
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}
} // namespace detail

// Stream of standard normals addressed by a 64-bit draw index. Each index
// yields a pair via Box-Muller on two 64-bit uniforms from one Philox block;
// component selects within the pair. No state, no rejection: consumption
// order cannot change the numbers.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    std::array<double, 2> pair(std::uint64_t index) const {
        const auto w = Philox4x32::block(seed_ ^ 0x5DEECE66DULL, index, stream_);
        const std::uint64_t u0 = (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
        const std::uint64_t u1 = (static_cast<std::uint64_t>(w[2]) << 32) | w[3];
        const double r = std::sqrt(-2.0 * std::log(detail::to_unit(u0)));
        const double theta = 6.283185307179586476925286766559 * detail::to_unit(u1);
        return {r * std::cos(theta), r * std::sin(theta)};
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
};

// Gaussian increment generator for an n-dimensional Brownian motion observed
// at a fixed step dt: increment(k, i) = sqrt(dt) * z(k, i) where z(k, i) is
// the i-th component of the k-th step's standard normal vector.
class BrownianIncrements {
public:
    BrownianIncrements(std::uint64_t seed, std::uint64_t stream, std::size_t dim, double dt)
        : normals_(seed, stream), dim_(dim), dt_(dt), sqrt_dt_(std::sqrt(dt)) {
        if (dim_ == 0)
            throw Error(ErrorCode::InvalidArgument, "Brownian dimension must be >= 1");
        if (!(dt > 0.0)) throw Error(ErrorCode::NonPositiveParameter, "dt must be > 0");
    }

    double operator()(std::uint64_t step, std::size_t component) const {
        const std::uint64_t pairs_per_step = (dim_ + 1) / 2;
        const std::uint64_t idx = step * pairs_per_step + component / 2;
        return sqrt_dt_ * normals_.pair(idx)[component % 2];
    }

    // Fills out[0..dim) with the step's increments.
    void fill(std::uint64_t step, double* out) const {
        const std::uint64_t pairs_per_step = (dim_ + 1) / 2;
        for (std::size_t q = 0; 2 * q < dim_; ++q) {
            const auto z = normals_.pair(step * pairs_per_step + q);
            out[2 * q] = sqrt_dt_ * z[0];
            if (2 * q + 1 < dim_) out[2 * q + 1] = sqrt_dt_ * z[1];
        }
    }

    std::size_t dim() const { return dim_; }
    double dt() const { return dt_; }

private:
    NormalStream normals_;
    std::size_t dim_;
    double dt_;
    double sqrt_dt_;
};

// Seed record identifying a Brownian path: generator id is fixed
// ("philox4x32-10"), so (seed, stream) pins the draws.
struct SeedRecord {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

} // namespace pdm
