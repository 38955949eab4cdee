#pragma once
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>

#include "types.hpp"

namespace pdm {

// Mean, standard error, path count and the documented truncation-bias bound
// of a Monte Carlo functional truncated at horizon T.
struct MCEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n_paths = 0;
    double truncation_bound = 0.0;
    double T = 0.0;
};

// Pairwise summation: deterministic and accurate regardless of how the
// per-path work was partitioned across threads. Full binary splitting keeps
// sums of identical values exact for power-of-two counts (degenerate Monte
// Carlo runs really do report stderr 0).
inline double pairwise_sum(const double* a, std::size_t n) {
    if (n == 0) return 0.0;
    if (n == 1) return a[0];
    if (n == 2) return a[0] + a[1];
    const std::size_t half = n / 2;
    return pairwise_sum(a, half) + pairwise_sum(a + half, n - half);
}

inline double pairwise_sum(const Vec& a) { return pairwise_sum(a.data(), a.size()); }

inline MCEstimate estimate_from_samples(const Vec& samples, double T,
                                        double truncation_bound) {
    MCEstimate e;
    e.n_paths = samples.size();
    e.T = T;
    e.truncation_bound = truncation_bound;
    if (samples.empty()) return e;
    e.mean = pairwise_sum(samples) / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        Vec sq(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const double d = samples[i] - e.mean;
            sq[i] = d * d;
        }
        const double var =
            pairwise_sum(sq) / static_cast<double>(samples.size() - 1);
        e.stderr_ = std::sqrt(var / static_cast<double>(samples.size()));
    }
    return e;
}

std::size_t worker_count();

// Static partition of [0, n) across workers. Each job writes only its own
// per-index slots, so results do not depend on the worker count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    const std::size_t workers = std::min(worker_count(), n == 0 ? std::size_t{1} : n);
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace pdm
