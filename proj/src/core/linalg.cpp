#include "linalg.hpp"

#include <cmath>
#include <numeric>

namespace pdm {

SquareMatrix::SquareMatrix(std::size_t n, const Vec& row_major) : n_(n), a_(row_major) {
    if (a_.size() != n * n)
        throw Error(ErrorCode::InvalidArgument, "matrix data size does not match dimension");
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

namespace {
double norm1(const SquareMatrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}
} // namespace

LuFactorization::LuFactorization(const SquareMatrix& a)
    : n_(a.size()), lu_(a), piv_(a.size()), norm1_a_(norm1(a)) {
    std::iota(piv_.begin(), piv_.end(), std::size_t{0});
    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n_; ++i)
            if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
        if (lu_(p, k) == 0.0 || !std::isfinite(lu_(p, k)))
            throw Error(ErrorCode::SigmaSingular, "matrix is singular (zero pivot)");
        if (p != k) {
            for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(p, j), lu_(k, j));
            std::swap(piv_[p], piv_[k]);
        }
        for (std::size_t i = k + 1; i < n_; ++i) {
            lu_(i, k) /= lu_(k, k);
            for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= lu_(i, k) * lu_(k, j);
        }
    }
}

Vec LuFactorization::solve(const Vec& rhs) const {
    if (rhs.size() != n_)
        throw Error(ErrorCode::GridMismatch, "rhs size does not match matrix dimension");
    Vec x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = rhs[piv_[i]];
    for (std::size_t i = 1; i < n_; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (std::size_t ii = n_; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n_; ++j) x[ii] -= lu_(ii, j) * x[j];
        x[ii] /= lu_(ii, ii);
    }
    return x;
}

Vec LuFactorization::solve_transpose(const Vec& rhs) const {
    if (rhs.size() != n_)
        throw Error(ErrorCode::GridMismatch, "rhs size does not match matrix dimension");
    // A^T x = b  <=>  U^T L^T P x = b; solve U^T z = b, L^T y = z, x = P^T y.
    Vec z(rhs);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < i; ++j) z[i] -= lu_(j, i) * z[j];
        z[i] /= lu_(i, i);
    }
    for (std::size_t ii = n_; ii-- > 0;)
        for (std::size_t j = ii + 1; j < n_; ++j) z[ii] -= lu_(j, ii) * z[j];
    Vec x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[piv_[i]] = z[i];
    return x;
}

double LuFactorization::condition() const {
    double inv_norm = 0.0;
    Vec e(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        e[j] = 1.0;
        Vec col = solve(e);
        e[j] = 0.0;
        double s = 0.0;
        for (double v : col) s += std::abs(v);
        inv_norm = std::max(inv_norm, s);
    }
    return norm1_a_ * inv_norm;
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::GridMismatch, "dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace pdm
