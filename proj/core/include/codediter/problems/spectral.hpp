#pragma once

#include <cstdint>
#include <vector>

#include "codediter/kernel/sparse_matrix.hpp"

namespace codediter {

/// Isolated nodes make D^{-1/2} undefined: reject the graph or drop those nodes.
enum class IsolateMode { Reject, Drop };

struct SpectralProblem {
    SparseMatrix M;                   ///< I + D^{-1/2} A D^{-1/2}
    std::vector<std::int64_t> nodes;  ///< original index of each kept node
};

SpectralProblem build_shifted_laplacian(const SparseMatrix& adjacency, IsolateMode mode = IsolateMode::Reject);

/// Top-r eigenvectors of a symmetric matrix by dense eigendecomposition (N <= 3000).
DenseMatrix top_eigenvectors_dense(const DenseMatrix& symmetric, std::int64_t r);

/// Top-r eigenvectors of a symmetric sparse matrix; dense for N <= 3000, otherwise
/// noiseless orthogonal iteration until the subspace stops moving.
DenseMatrix top_eigenvectors(const SparseMatrix& M, std::int64_t r, std::uint64_t seed = 1);

/// Top-r right singular vectors of B (eigenvectors of B^T B).
DenseMatrix top_right_singular_vectors(const SparseMatrix& B, std::int64_t r, std::uint64_t seed = 1);

}  // namespace codediter
