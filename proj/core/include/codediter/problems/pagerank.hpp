#pragma once

#include <optional>

#include "codediter/algorithms/power.hpp"
#include "codediter/kernel/sparse_matrix.hpp"

namespace codediter {

/// Zero-out-degree columns: keep them zero, or replace with the uniform 1/N column.
enum class DanglingMode { Keep, Uniform };

/// Scales each nonzero column to sum 1. Throws ConfigError on negative entries.
SparseMatrix normalize_columns(const SparseMatrix& A_raw, DanglingMode mode = DanglingMode::Keep);

struct PageRankProblem {
    SparseMatrix A;  ///< column-normalized
    double c = 0.15;
    Vector r_pref;
    LinearSystem system;  ///< B = (1 - c) A, y = c r_pref, x0 uniform
};

PageRankProblem build_pagerank(const SparseMatrix& A_raw, double c = 0.15, std::optional<Vector> r_pref = {},
                               DanglingMode mode = DanglingMode::Keep);

/// Noiseless iteration x <- Bx + y from x0 until ||x_{t+1} - x_t|| < tol.
Vector power_fixed_point(const SparseMatrix& B, const Vector& y, const Vector& x0, double tol = 1e-13,
                         std::int64_t max_iterations = 100000);

}  // namespace codediter
