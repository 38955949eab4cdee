#include "income.hpp"

#include <cmath>

namespace pdm {

BrownianPath BrownianPath::generate(SeedRecord seed, std::size_t dim, std::size_t steps,
                                    double dt) {
    BrownianPath p;
    p.dt = dt;
    p.dim = dim;
    p.steps = steps;
    p.seed = seed;
    p.increments.resize(steps * dim);
    BrownianIncrements gen(seed.seed, seed.stream, dim, dt);
    for (std::size_t k = 0; k < steps; ++k) gen.fill(k, &p.increments[k * dim]);
    return p;
}

BrownianPath BrownianPath::coarsen(std::size_t factor) const {
    if (factor == 0 || steps % factor != 0)
        throw Error(ErrorCode::InvalidArgument, "coarsen factor must divide step count");
    BrownianPath out;
    out.dt = dt * static_cast<double>(factor);
    out.dim = dim;
    out.steps = steps / factor;
    out.seed = seed;
    out.increments.assign(out.steps * dim, 0.0);
    for (std::size_t k = 0; k < steps; ++k)
        for (std::size_t i = 0; i < dim; ++i)
            out.increments[(k / factor) * dim + i] += increments[k * dim + i];
    return out;
}

IncomeState::IncomeState(double t_, double y_, Vec history_, double ds_)
    : t(t_), y(y_), history(std::move(history_)), ds(ds_) {
    if (history.empty() || history.back() != y)
        throw Error(ErrorCode::GridMismatch, "history[m] must equal the current income level");
    if (!(ds > 0.0)) throw Error(ErrorCode::NonPositiveParameter, "ds must be > 0");
}

double convolve(const Vec& history, const Vec& kernel, double ds) {
    if (history.size() != kernel.size())
        throw Error(ErrorCode::GridMismatch, "convolve: history and kernel sizes differ");
    const std::size_t m = history.size() - 1;
    double s = 0.5 * (history[0] * kernel[0] + history[m] * kernel[m]);
    for (std::size_t j = 1; j < m; ++j) s += history[j] * kernel[j];
    return s * ds;
}

namespace {

std::size_t substeps_per_slot(double ds, double dt) {
    const double ratio = ds / dt;
    const auto p = static_cast<std::size_t>(std::llround(ratio));
    if (p < 1 || std::abs(static_cast<double>(p) * dt - ds) > 1e-9 * ds)
        throw Error(ErrorCode::StepIncompatible,
                    "dt must divide the history grid step ds = d/m");
    return p;
}

} // namespace

IncomeSimulator::IncomeSimulator(const IncomeParams& income, double x0, const Vec& x1_coarse,
                                 double dt)
    : grid_(income.grid()),
      phi_grid_(income.phi.on_grid(grid_)),
      mu_y_(income.mu_y),
      sigma_y_(income.sigma_y),
      dt_(dt),
      p_(substeps_per_slot(grid_.ds(), dt)),
      cap_(p_ * grid_.m + 1),
      ring_(cap_, 0.0),
      y_(x0),
      min_y_(x0) {
    if (x1_coarse.size() != grid_.nodes())
        throw Error(ErrorCode::GridMismatch, "initial history must have m+1 values");
    // Fill the fine buffer by linear interpolation of the coarse history;
    // the right endpoint is the live value x0.
    for (std::size_t f = 0; f < cap_; ++f) {
        const std::size_t j = f / p_;
        const std::size_t rem = f - j * p_;
        if (rem == 0) {
            ring_[f] = (j == grid_.m) ? x0 : x1_coarse[j];
        } else {
            const double frac = static_cast<double>(rem) / static_cast<double>(p_);
            const double right = (j + 1 == grid_.m) ? x1_coarse[grid_.m] : x1_coarse[j + 1];
            ring_[f] = (1.0 - frac) * x1_coarse[j] + frac * right;
        }
    }
    ring_[cap_ - 1] = x0;
    head_ = 0;
}

double IncomeSimulator::coarse_node_value(std::size_t j) const {
    std::size_t idx = head_ + j * p_;
    if (idx >= cap_) idx -= cap_;
    return ring_[idx];
}

double IncomeSimulator::window_inner(const Vec& grid_fn) const {
    if (grid_fn.size() != grid_.nodes())
        throw Error(ErrorCode::GridMismatch, "window_inner: grid size mismatch");
    const std::size_t m = grid_.m;
    std::size_t idx = head_;
    double s = 0.5 * grid_fn[0] * ring_[idx];
    for (std::size_t j = 1; j < m; ++j) {
        idx += p_;
        if (idx >= cap_) idx -= cap_;
        s += grid_fn[j] * ring_[idx];
    }
    s += 0.5 * grid_fn[m] * y_;
    return s * grid_.ds();
}

void IncomeSimulator::window_inner_pair(const Vec& f, const Vec& g, double& rf,
                                        double& rg) const {
    if (f.size() != grid_.nodes() || g.size() != grid_.nodes())
        throw Error(ErrorCode::GridMismatch, "window_inner_pair: grid size mismatch");
    const std::size_t m = grid_.m;
    std::size_t idx = head_;
    double sf = 0.5 * f[0] * ring_[idx];
    double sg = 0.5 * g[0] * ring_[idx];
    for (std::size_t j = 1; j < m; ++j) {
        idx += p_;
        if (idx >= cap_) idx -= cap_;
        const double v = ring_[idx];
        sf += f[j] * v;
        sg += g[j] * v;
    }
    sf += 0.5 * f[m] * y_;
    sg += 0.5 * g[m] * y_;
    rf = sf * grid_.ds();
    rg = sg * grid_.ds();
}

void IncomeSimulator::step(const double* dZ) { step_with_drift(dZ, delay_drift()); }

void IncomeSimulator::step_with_drift(const double* dZ, double delay_drift_value) {
    double diffusion = 0.0;
    for (std::size_t i = 0; i < sigma_y_.size(); ++i) diffusion += sigma_y_[i] * dZ[i];
    const double drift = mu_y_ * y_ + delay_drift_value;
    const double y_new = y_ + drift * dt_ + y_ * diffusion;

    // Advance the ring by one fine slot: the oldest entry falls out of the
    // [t-d, t] window and the new value becomes the right endpoint.
    ring_[head_] = y_new;
    ++head_;
    if (head_ == cap_) head_ = 0;

    y_ = y_new;
    ++step_count_;
    if (y_new < min_y_) min_y_ = y_new;
    if (y_new <= 0.0) ++nonpositive_count_;
}

void IncomeSimulator::overwrite_current(double y_value) {
    std::size_t last = head_ == 0 ? cap_ - 1 : head_ - 1;
    ring_[last] = y_value;
    y_ = y_value;
}

IncomeState IncomeSimulator::state() const {
    Vec hist(grid_.nodes());
    for (std::size_t j = 0; j <= grid_.m; ++j) hist[j] = coarse_node_value(j);
    hist[grid_.m] = y_;
    return IncomeState(t(), y_, std::move(hist), grid_.ds());
}

IncomePathResult simulate_income(const IncomeParams& income, double x0, const Vec& x1_coarse,
                                 double T, double dt, SeedRecord seed) {
    if (T < 0.0) throw Error(ErrorCode::NonPositiveParameter, "horizon T must be >= 0");
    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    IncomePathResult out;
    out.brownian = BrownianPath::generate(seed, income.sigma_y.size(), steps, dt);
    IncomeSimulator sim(income, x0, x1_coarse, dt);
    out.times.reserve(steps + 1);
    out.y.reserve(steps + 1);
    out.times.push_back(0.0);
    out.y.push_back(x0);
    for (std::size_t k = 0; k < steps; ++k) {
        sim.step(out.brownian.step_ptr(k));
        out.times.push_back(sim.t());
        out.y.push_back(sim.y());
    }
    out.nonpositive_count = sim.nonpositive_count();
    out.min_y = sim.min_y();
    return out;
}

Vec variation_of_constants_oracle(const IncomeParams& income, double x0, const Vec& x1_coarse,
                                  const BrownianPath& brownian) {
    if (brownian.dim != income.sigma_y.size())
        throw Error(ErrorCode::GridMismatch, "Brownian dimension must match sigma_y");
    const double dt = brownian.dt;
    // The oracle integrates its own history window so the two discretizations
    // share nothing but the increments.
    IncomeSimulator window(income, x0, x1_coarse, dt);

    double sig_sq = 0.0;
    for (double s : income.sigma_y) sig_sq += s * s;

    Vec y_path;
    y_path.reserve(brownian.steps + 1);
    y_path.push_back(x0);

    double log_E = 0.0;
    double I = 0.0;
    for (std::size_t k = 0; k < brownian.steps; ++k) {
        const double conv = window.delay_drift();
        I += std::exp(-log_E) * conv * dt;  // left-Riemann in u

        double dZs = 0.0;
        for (std::size_t i = 0; i < brownian.dim; ++i)
            dZs += income.sigma_y[i] * brownian.at(k, i);
        log_E += (income.mu_y - 0.5 * sig_sq) * dt + dZs;

        const double y_new = std::exp(log_E) * (x0 + I);
        y_path.push_back(y_new);

        // Feed the oracle's own value back into its window; reuse the
        // simulator's ring mechanics by overwriting the EM update.
        window.step(brownian.step_ptr(k));
        window.overwrite_current(y_new);
    }
    return y_path;
}

} // namespace pdm
