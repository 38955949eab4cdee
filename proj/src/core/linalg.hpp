#pragma once
#include <cstddef>

#include "types.hpp"

namespace pdm {

// Dense n-by-n matrix, row major. n is the number of risky assets and is
// small (1..4 in practice), so a plain LU with partial pivoting is all we
// need.
class SquareMatrix {
public:
    SquareMatrix() : n_(0) {}
    SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}
    explicit SquareMatrix(std::size_t n, const Vec& row_major);

    static SquareMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const Vec& data() const { return a_; }

private:
    std::size_t n_;
    Vec a_;
};

// LU factorization with partial pivoting. Throws Error(SigmaSingular) when a
// pivot is exactly zero; near-singularity is reported through condition().
class LuFactorization {
public:
    explicit LuFactorization(const SquareMatrix& a);

    Vec solve(const Vec& rhs) const;            // A x = b
    Vec solve_transpose(const Vec& rhs) const;  // A^T x = b

    // 1-norm condition number estimate ||A||_1 * ||A^{-1}||_1 (exact inverse
    // norm via n solves; n is tiny).
    double condition() const;

private:
    std::size_t n_;
    SquareMatrix lu_;
    std::vector<std::size_t> piv_;
    double norm1_a_;
};

double dot(const Vec& a, const Vec& b);

} // namespace pdm
