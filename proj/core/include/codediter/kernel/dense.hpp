#pragma once

#include <cstdint>

#include "codediter/kernel/types.hpp"

namespace codediter {

/// Largest min(rows, cols) accepted by the small-matrix decompositions.
inline constexpr std::int64_t kSmallMatrixLimit = 4096;
inline constexpr double kDefaultRankTol = 1e-10;

struct SvdResult {
    DenseMatrix U;            ///< rows x min(rows, cols)
    Vector singular_values;   ///< descending, length min(rows, cols)
    DenseMatrix Vt;           ///< cols x cols; rows past numeric_rank span the null space
    std::int64_t numeric_rank = 0;
};

/// Thin-U / full-V SVD. Each right-singular vector has its first nonzero entry
/// non-negative (U columns are flipped to match). A 0 x n input yields Vt = I_n.
SvdResult svd_small(const DenseMatrix& M, double rank_tol = kDefaultRankTol);

/// Number of singular values above rank_tol * sigma_max.
std::int64_t numeric_rank(const DenseMatrix& M, double rank_tol = kDefaultRankTol);

struct QrResult {
    DenseMatrix Q;  ///< rows x cols, orthonormal columns
    DenseMatrix R;  ///< cols x cols, upper triangular, non-negative diagonal
};

/// Thin Householder QR. Throws DegenerateBasisError when a diagonal entry of R
/// falls below 1e-12 * ||M||_F.
QrResult qr_small(const DenseMatrix& M);

/// Same factorization without the rank check; Q is still orthonormal.
QrResult qr_small_unchecked(const DenseMatrix& M);

struct SymEigResult {
    Vector eigenvalues;      ///< descending
    DenseMatrix eigenvectors;  ///< column i pairs with eigenvalues[i]
};

/// Symmetric eigendecomposition. Throws NumericError if M is not symmetric to 1e-9.
SymEigResult symeig_small(const DenseMatrix& M);

/// ||X X^T - Y Y^T||_F / sqrt(2r) for orthonormal N x r inputs; lies in [0, 1].
double subspace_distance(const DenseMatrix& X, const DenseMatrix& Y);

/// Flips each column so that its first entry with magnitude above tol is positive.
/// Returns the applied signs.
Vector normalize_column_signs(DenseMatrix& M, double tol = 1e-14);

}  // namespace codediter
