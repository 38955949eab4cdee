#pragma once
#include <cstdint>

#include "params.hpp"
#include "rng.hpp"

namespace pdm {

// Materialized n-dimensional Brownian increments. Values are exactly
// reproducible from the seed record; coarsen() sums consecutive increments so
// refinement studies share one underlying path.
struct BrownianPath {
    double dt = 0.0;
    std::size_t dim = 0;
    std::size_t steps = 0;
    Vec increments;  // steps * dim, step-major
    SeedRecord seed;

    double at(std::size_t step, std::size_t comp) const {
        return increments[step * dim + comp];
    }
    const double* step_ptr(std::size_t step) const { return &increments[step * dim]; }

    static BrownianPath generate(SeedRecord seed, std::size_t dim, std::size_t steps,
                                 double dt);
    BrownianPath coarsen(std::size_t factor) const;
};

// Adapter giving a materialized path the same fill/dt interface as the
// counter-based generator, so simulators can run off either.
struct PathIncrements {
    const BrownianPath& path;
    double dt() const { return path.dt; }
    void fill(std::size_t step, double* out) const {
        for (std::size_t i = 0; i < path.dim; ++i) out[i] = path.at(step, i);
    }
};

// Income state on the shared m-grid: current level plus the history window
// [t-d, t]. history[m] equals y by construction.
struct IncomeState {
    double t = 0.0;
    double y = 0.0;
    Vec history;  // m+1 values
    double ds = 0.0;

    IncomeState() = default;
    IncomeState(double t, double y, Vec history, double ds);
};

// Trapezoid-rule value of the delay drift integral over [-d, 0].
double convolve(const Vec& history, const Vec& kernel, double ds);

// Euler-Maruyama stepper for the labor-income SDDE
//   dy = [mu_y y + int_{-d}^0 phi(s) y(t+s) ds] dt + y sigma_y' dZ.
// The history is kept in a ring buffer at simulation resolution dt and
// down-sampled to the m-grid inside the convolution; dt must divide
// ds = d/m. Nonpositive excursions are counted, never clipped.
class IncomeSimulator {
public:
    IncomeSimulator(const IncomeParams& income, double x0, const Vec& x1_coarse, double dt);

    void step(const double* dZ);  // dZ: n Brownian increments for this step
    // Same update with the delay drift already computed (lets callers that
    // need another window inner product fuse the two ring walks).
    void step_with_drift(const double* dZ, double delay_drift_value);

    // Replace the newest buffer entry (used by integrators that share the
    // window mechanics but compute y themselves).
    void overwrite_current(double y_value);

    double y() const { return y_; }
    double t() const { return static_cast<double>(step_count_) * dt_; }
    double dt() const { return dt_; }

    // Trapezoid inner product of an m-grid function against the current
    // history window (node m sees the live value y).
    double window_inner(const Vec& grid_fn) const;
    // One ring pass, two inner products (typically h_inf and phi).
    void window_inner_pair(const Vec& f, const Vec& g, double& rf, double& rg) const;
    double delay_drift() const { return window_inner(phi_grid_); }
    const Vec& phi_grid() const { return phi_grid_; }

    IncomeState state() const;

    std::size_t nonpositive_count() const { return nonpositive_count_; }
    double min_y() const { return min_y_; }

private:
    double coarse_node_value(std::size_t j) const;

    DelayGrid grid_;
    Vec phi_grid_;
    double mu_y_;
    Vec sigma_y_;
    double dt_;
    std::size_t p_;    // fine steps per coarse slot, ds = p * dt
    std::size_t cap_;  // ring capacity = p*m + 1
    Vec ring_;
    std::size_t head_ = 0;  // index of the oldest entry (t - d)
    double y_;
    std::uint64_t step_count_ = 0;
    std::size_t nonpositive_count_ = 0;
    double min_y_;
};

struct IncomePathResult {
    Vec times;
    Vec y;
    std::size_t nonpositive_count = 0;
    double min_y = 0.0;
    BrownianPath brownian;
};

// Full path y(0..T) plus the driving increments; deterministic given seed.
IncomePathResult simulate_income(const IncomeParams& income, double x0, const Vec& x1_coarse,
                                 double T, double dt, SeedRecord seed);

// Pathwise oracle from the stochastic variation-of-constants representation
//   y(t) = E(t) (x0 + I(t)),  E(t) = exp((mu_y - |sigma_y|^2/2) t + sigma_y' Z(t)),
//   I(t) = int_0^t E^{-1}(u) <phi, y window(u)> du  (left-Riemann),
// evaluated on the same increments as the Euler path it is checked against.
Vec variation_of_constants_oracle(const IncomeParams& income, double x0, const Vec& x1_coarse,
                                  const BrownianPath& brownian);

} // namespace pdm
