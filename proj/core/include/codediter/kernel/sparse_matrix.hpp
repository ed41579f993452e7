#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "codediter/kernel/types.hpp"

namespace codediter {

struct Triplet {
    std::int64_t row;
    std::int64_t col;
    double value;
};

/// Compressed-row sparse matrix.
///
/// Invariants (checked by validate()): row_offsets has n_rows + 1 monotone entries
/// starting at 0, every column index lies in [0, n_cols), and column indices within
/// a row are strictly increasing (sorted, no duplicates).
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::int64_t n_rows, std::int64_t n_cols);
    SparseMatrix(std::int64_t n_rows, std::int64_t n_cols, std::vector<std::int64_t> row_offsets,
                 std::vector<std::int64_t> col_indices, std::vector<double> values);

    /// Builds from unordered triplets; duplicate (row, col) entries are summed.
    static SparseMatrix from_triplets(std::int64_t n_rows, std::int64_t n_cols, std::span<const Triplet> entries);
    static SparseMatrix identity(std::int64_t n);
    static SparseMatrix from_dense(const DenseMatrix& dense, double drop_below = 0.0);

    std::int64_t rows() const noexcept { return n_rows_; }
    std::int64_t cols() const noexcept { return n_cols_; }
    std::size_t nnz() const noexcept { return values_.size(); }

    std::span<const std::int64_t> row_offsets() const noexcept { return row_offsets_; }
    std::span<const std::int64_t> col_indices() const noexcept { return col_indices_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Throws DimensionError describing the first violated invariant.
    void validate() const;

    /// Rows [first, last) as a (last - first) x cols matrix.
    SparseMatrix row_slice(std::int64_t first, std::int64_t last) const;
    /// Columns [first, last) as a rows x (last - first) matrix.
    SparseMatrix col_slice(std::int64_t first, std::int64_t last) const;
    /// Same entries embedded in a larger zero matrix.
    SparseMatrix padded(std::int64_t n_rows, std::int64_t n_cols) const;
    SparseMatrix transpose() const;
    SparseMatrix scaled(double alpha) const;

    DenseMatrix to_dense() const;
    Vector column_sums() const;
    Vector row_sums() const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::int64_t n_rows_ = 0;
    std::int64_t n_cols_ = 0;
    std::vector<std::int64_t> row_offsets_{0};
    std::vector<std::int64_t> col_indices_;
    std::vector<double> values_;
};

/// y = B x. Throws DimensionError when x.size() != B.cols().
Vector spmv(const SparseMatrix& B, const Vector& x);
/// y += alpha * B x without allocating.
void spmv_accumulate(const SparseMatrix& B, const Eigen::Ref<const Vector>& x, double alpha, Eigen::Ref<Vector> y);
/// y = B^T x.
Vector spmv_transpose(const SparseMatrix& B, const Vector& x);

/// Z = B X, column by column.
DenseMatrix spmm(const SparseMatrix& B, const DenseMatrix& X);
/// Z += alpha * B X.
void spmm_accumulate(const SparseMatrix& B, const Eigen::Ref<const DenseMatrix>& X, double alpha,
                     Eigen::Ref<DenseMatrix> Z);
/// Z = B^T X.
DenseMatrix spmm_transpose(const SparseMatrix& B, const DenseMatrix& X);

/// Largest singular value by power iteration on B^T B.
double spectral_norm(const SparseMatrix& B, double rel_tol = 1e-10, int max_iterations = 5000);

}  // namespace codediter
