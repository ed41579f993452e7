#include "codediter/kernel/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "codediter/error.hpp"
#include "codediter/random.hpp"

namespace codediter {

namespace {

void require_finite_shape(std::int64_t n_rows, std::int64_t n_cols) {
    if (n_rows < 0 || n_cols < 0) throw DimensionError("sparse matrix dimensions must be non-negative");
}

}  // namespace

SparseMatrix::SparseMatrix(std::int64_t n_rows, std::int64_t n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), row_offsets_(static_cast<std::size_t>(n_rows) + 1, 0) {
    require_finite_shape(n_rows, n_cols);
}

SparseMatrix::SparseMatrix(std::int64_t n_rows, std::int64_t n_cols, std::vector<std::int64_t> row_offsets,
                           std::vector<std::int64_t> col_indices, std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
    require_finite_shape(n_rows, n_cols);
    validate();
}

void SparseMatrix::validate() const {
    std::ostringstream msg;
    if (row_offsets_.size() != static_cast<std::size_t>(n_rows_) + 1) {
        msg << "row_offsets has length " << row_offsets_.size() << ", expected " << n_rows_ + 1;
        throw DimensionError(msg.str());
    }
    if (row_offsets_.front() != 0) throw DimensionError("row_offsets must start at 0");
    if (col_indices_.size() != values_.size()) throw DimensionError("col_indices and values differ in length");
    if (static_cast<std::size_t>(row_offsets_.back()) != values_.size())
        throw DimensionError("row_offsets must end at nnz");
    for (std::int64_t r = 0; r < n_rows_; ++r) {
        const auto begin = row_offsets_[r];
        const auto end = row_offsets_[r + 1];
        if (end < begin) {
            msg << "row_offsets decreases at row " << r;
            throw DimensionError(msg.str());
        }
        for (auto p = begin; p < end; ++p) {
            const auto c = col_indices_[p];
            if (c < 0 || c >= n_cols_) {
                msg << "column index " << c << " out of range in row " << r;
                throw DimensionError(msg.str());
            }
            if (p > begin && col_indices_[p - 1] >= c) {
                msg << "column indices not strictly increasing in row " << r;
                throw DimensionError(msg.str());
            }
        }
    }
}

SparseMatrix SparseMatrix::from_triplets(std::int64_t n_rows, std::int64_t n_cols, std::span<const Triplet> entries) {
    require_finite_shape(n_rows, n_cols);
    std::vector<Triplet> sorted(entries.begin(), entries.end());
    for (const auto& t : sorted) {
        if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols)
            throw DimensionError("triplet index out of range");
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

    std::vector<std::int64_t> offsets(static_cast<std::size_t>(n_rows) + 1, 0);
    std::vector<std::int64_t> cols;
    std::vector<double> vals;
    cols.reserve(sorted.size());
    vals.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& t = sorted[i];
        if (i > 0 && sorted[i - 1].row == t.row && sorted[i - 1].col == t.col) {
            vals.back() += t.value;
            continue;
        }
        cols.push_back(t.col);
        vals.push_back(t.value);
        ++offsets[t.row + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    return SparseMatrix(n_rows, n_cols, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::identity(std::int64_t n) {
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(n) + 1);
    std::iota(offsets.begin(), offsets.end(), 0);
    std::vector<std::int64_t> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), 0);
    return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense, double drop_below) {
    std::vector<std::int64_t> offsets{0};
    std::vector<std::int64_t> cols;
    std::vector<double> vals;
    for (Eigen::Index r = 0; r < dense.rows(); ++r) {
        for (Eigen::Index c = 0; c < dense.cols(); ++c) {
            const double v = dense(r, c);
            if (v != 0.0 && std::abs(v) > drop_below) {
                cols.push_back(c);
                vals.push_back(v);
            }
        }
        offsets.push_back(static_cast<std::int64_t>(cols.size()));
    }
    return SparseMatrix(dense.rows(), dense.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::row_slice(std::int64_t first, std::int64_t last) const {
    if (first < 0 || last < first || last > n_rows_) throw DimensionError("row_slice range out of bounds");
    const auto base = row_offsets_[first];
    std::vector<std::int64_t> offsets;
    offsets.reserve(static_cast<std::size_t>(last - first) + 1);
    for (auto r = first; r <= last; ++r) offsets.push_back(row_offsets_[r] - base);
    std::vector<std::int64_t> cols(col_indices_.begin() + base, col_indices_.begin() + row_offsets_[last]);
    std::vector<double> vals(values_.begin() + base, values_.begin() + row_offsets_[last]);
    return SparseMatrix(last - first, n_cols_, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::col_slice(std::int64_t first, std::int64_t last) const {
    if (first < 0 || last < first || last > n_cols_) throw DimensionError("col_slice range out of bounds");
    std::vector<std::int64_t> offsets{0};
    offsets.reserve(static_cast<std::size_t>(n_rows_) + 1);
    std::vector<std::int64_t> cols;
    std::vector<double> vals;
    for (std::int64_t r = 0; r < n_rows_; ++r) {
        const auto row_begin = col_indices_.begin() + row_offsets_[r];
        const auto row_end = col_indices_.begin() + row_offsets_[r + 1];
        auto it = std::lower_bound(row_begin, row_end, first);
        for (; it != row_end && *it < last; ++it) {
            cols.push_back(*it - first);
            vals.push_back(values_[static_cast<std::size_t>(it - col_indices_.begin())]);
        }
        offsets.push_back(static_cast<std::int64_t>(cols.size()));
    }
    return SparseMatrix(n_rows_, last - first, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::padded(std::int64_t n_rows, std::int64_t n_cols) const {
    if (n_rows < n_rows_ || n_cols < n_cols_) throw DimensionError("padded size smaller than matrix");
    auto offsets = row_offsets_;
    offsets.resize(static_cast<std::size_t>(n_rows) + 1, row_offsets_.back());
    return SparseMatrix(n_rows, n_cols, std::move(offsets), col_indices_, values_);
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(n_cols_) + 1, 0);
    for (auto c : col_indices_) ++offsets[c + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<std::int64_t> cursor(offsets.begin(), offsets.end() - 1);
    std::vector<std::int64_t> cols(values_.size());
    std::vector<double> vals(values_.size());
    for (std::int64_t r = 0; r < n_rows_; ++r) {
        for (auto p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
            const auto dst = cursor[col_indices_[p]]++;
            cols[dst] = r;
            vals[dst] = values_[p];
        }
    }
    return SparseMatrix(n_cols_, n_rows_, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::scaled(double alpha) const {
    SparseMatrix out = *this;
    for (auto& v : out.values_) v *= alpha;
    return out;
}

DenseMatrix SparseMatrix::to_dense() const {
    DenseMatrix dense = DenseMatrix::Zero(n_rows_, n_cols_);
    for (std::int64_t r = 0; r < n_rows_; ++r)
        for (auto p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) dense(r, col_indices_[p]) = values_[p];
    return dense;
}

Vector SparseMatrix::column_sums() const {
    Vector sums = Vector::Zero(n_cols_);
    for (std::size_t p = 0; p < values_.size(); ++p) sums[col_indices_[p]] += values_[p];
    return sums;
}

Vector SparseMatrix::row_sums() const {
    Vector sums = Vector::Zero(n_rows_);
    for (std::int64_t r = 0; r < n_rows_; ++r)
        for (auto p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) sums[r] += values_[p];
    return sums;
}

void spmv_accumulate(const SparseMatrix& B, const Eigen::Ref<const Vector>& x, double alpha, Eigen::Ref<Vector> y) {
    if (x.size() != B.cols() || y.size() != B.rows()) throw DimensionError("spmv: dimension mismatch");
    const auto offsets = B.row_offsets();
    const auto cols = B.col_indices();
    const auto vals = B.values();
    for (std::int64_t r = 0; r < B.rows(); ++r) {
        double acc = 0.0;
        for (auto p = offsets[r]; p < offsets[r + 1]; ++p) acc += vals[p] * x[cols[p]];
        y[r] += alpha * acc;
    }
}

Vector spmv(const SparseMatrix& B, const Vector& x) {
    if (x.size() != B.cols()) throw DimensionError("spmv: x has length " + std::to_string(x.size()) +
                                                   ", matrix has " + std::to_string(B.cols()) + " columns");
    Vector y = Vector::Zero(B.rows());
    spmv_accumulate(B, x, 1.0, y);
    return y;
}

Vector spmv_transpose(const SparseMatrix& B, const Vector& x) {
    if (x.size() != B.rows()) throw DimensionError("spmv_transpose: dimension mismatch");
    Vector y = Vector::Zero(B.cols());
    const auto offsets = B.row_offsets();
    const auto cols = B.col_indices();
    const auto vals = B.values();
    for (std::int64_t r = 0; r < B.rows(); ++r) {
        const double xr = x[r];
        for (auto p = offsets[r]; p < offsets[r + 1]; ++p) y[cols[p]] += vals[p] * xr;
    }
    return y;
}

void spmm_accumulate(const SparseMatrix& B, const Eigen::Ref<const DenseMatrix>& X, double alpha,
                     Eigen::Ref<DenseMatrix> Z) {
    if (X.rows() != B.cols() || Z.rows() != B.rows() || Z.cols() != X.cols())
        throw DimensionError("spmm: dimension mismatch");
    const auto offsets = B.row_offsets();
    const auto cols = B.col_indices();
    const auto vals = B.values();
    for (std::int64_t r = 0; r < B.rows(); ++r) {
        for (auto p = offsets[r]; p < offsets[r + 1]; ++p) Z.row(r) += (alpha * vals[p]) * X.row(cols[p]);
    }
}

DenseMatrix spmm(const SparseMatrix& B, const DenseMatrix& X) {
    if (X.rows() != B.cols()) throw DimensionError("spmm: X has " + std::to_string(X.rows()) +
                                                   " rows, matrix has " + std::to_string(B.cols()) + " columns");
    DenseMatrix Z = DenseMatrix::Zero(B.rows(), X.cols());
    spmm_accumulate(B, X, 1.0, Z);
    return Z;
}

DenseMatrix spmm_transpose(const SparseMatrix& B, const DenseMatrix& X) {
    if (X.rows() != B.rows()) throw DimensionError("spmm_transpose: dimension mismatch");
    DenseMatrix Z = DenseMatrix::Zero(B.cols(), X.cols());
    const auto offsets = B.row_offsets();
    const auto cols = B.col_indices();
    const auto vals = B.values();
    for (std::int64_t r = 0; r < B.rows(); ++r)
        for (auto p = offsets[r]; p < offsets[r + 1]; ++p) Z.row(cols[p]) += vals[p] * X.row(r);
    return Z;
}

double spectral_norm(const SparseMatrix& B, double rel_tol, int max_iterations) {
    if (B.nnz() == 0) return 0.0;
    Rng rng(0x5eed5eedULL);
    Vector v(B.cols());
    for (auto& e : v) e = 1.0 + 0.1 * standard_normal(rng);
    v.normalize();
    double sigma = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        Vector w = spmv_transpose(B, spmv(B, v));
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        const double next = std::sqrt(norm);
        v = w / norm;
        if (std::abs(next - sigma) <= rel_tol * next) return next;
        sigma = next;
    }
    return sigma;
}

}  // namespace codediter
