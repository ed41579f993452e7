#pragma once

#include <cstdint>

#include "codediter/kernel/types.hpp"
#include "codediter/random.hpp"

namespace codediter {

struct LeastSquaresProblem {
    DenseMatrix A;  ///< n x dim
    Vector y;       ///< length n
    Vector x_star;  ///< minimizer of ||A x - y||^2 / (2n)

    std::int64_t samples() const { return A.rows(); }
    std::int64_t dim() const { return A.cols(); }
    double objective(const Vector& x) const;
    Vector gradient(const Vector& x) const;
    /// Largest eigenvalue of A^T A / n, the gradient's Lipschitz constant.
    double lipschitz() const;
};

/// Solves the normal equations for x_star.
LeastSquaresProblem make_least_squares(DenseMatrix A, Vector y);

/// Standard Gaussian A (n x dim) and y.
LeastSquaresProblem build_least_squares(std::int64_t n, std::int64_t dim, Rng& rng);

}  // namespace codediter
