#include "codediter/problems/spectral.hpp"

#include <cmath>

#include "codediter/algorithms/subspace.hpp"
#include "codediter/error.hpp"
#include "codediter/kernel/dense.hpp"
#include "codediter/random.hpp"

namespace codediter {

namespace {

constexpr std::int64_t kDenseLimit = 3000;

template <class Apply>
DenseMatrix orthogonal_iteration(std::int64_t N, std::int64_t r, std::uint64_t seed, Apply&& apply) {
    Rng rng(seed);
    DenseMatrix X = random_orthonormal(N, r, rng);
    for (int it = 0; it < 20000; ++it) {
        DenseMatrix next = qr_small(apply(X)).Q;
        const double moved = subspace_distance(next, X);
        X = std::move(next);
        if (moved < 1e-13) break;
    }
    return X;
}

}  // namespace

SpectralProblem build_shifted_laplacian(const SparseMatrix& adjacency, IsolateMode mode) {
    if (adjacency.rows() != adjacency.cols()) throw DimensionError("adjacency must be square");
    if (!(adjacency.transpose() == adjacency)) throw ConfigError("shifted Laplacian needs a symmetric adjacency");

    const Vector deg = adjacency.row_sums();
    SpectralProblem p;
    std::vector<std::int64_t> index(static_cast<std::size_t>(adjacency.rows()), -1);
    for (std::int64_t i = 0; i < adjacency.rows(); ++i) {
        if (deg[i] > 0.0) {
            index[i] = static_cast<std::int64_t>(p.nodes.size());
            p.nodes.push_back(i);
        } else if (mode == IsolateMode::Reject) {
            throw ConfigError("node " + std::to_string(i) + " is isolated");
        }
    }
    const auto n = static_cast<std::int64_t>(p.nodes.size());
    std::vector<Triplet> t;
    t.reserve(adjacency.nnz() + static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    const auto offsets = adjacency.row_offsets();
    const auto cols = adjacency.col_indices();
    const auto vals = adjacency.values();
    for (std::int64_t r = 0; r < adjacency.rows(); ++r) {
        if (index[r] < 0) continue;
        for (auto q = offsets[r]; q < offsets[r + 1]; ++q) {
            const auto c = cols[q];
            if (index[c] < 0) continue;
            t.push_back({index[r], index[c], vals[q] / std::sqrt(deg[r] * deg[c])});
        }
    }
    p.M = SparseMatrix::from_triplets(n, n, t);
    return p;
}

DenseMatrix top_eigenvectors_dense(const DenseMatrix& symmetric, std::int64_t r) {
    if (r < 1 || r > symmetric.rows()) throw ConfigError("eigenvector count out of range");
    const SymEigResult eig = symeig_small(symmetric);
    return eig.eigenvectors.leftCols(r);
}

DenseMatrix top_eigenvectors(const SparseMatrix& M, std::int64_t r, std::uint64_t seed) {
    if (M.rows() <= kDenseLimit) {
        const DenseMatrix dense = M.to_dense();
        return top_eigenvectors_dense(0.5 * (dense + dense.transpose()), r);
    }
    return orthogonal_iteration(M.rows(), r, seed, [&](const DenseMatrix& X) { return spmm(M, X); });
}

DenseMatrix top_right_singular_vectors(const SparseMatrix& B, std::int64_t r, std::uint64_t seed) {
    if (B.cols() <= kDenseLimit) {
        const DenseMatrix dense = B.to_dense();
        const DenseMatrix gram = dense.transpose() * dense;
        return top_eigenvectors_dense(0.5 * (gram + gram.transpose()), r);
    }
    return orthogonal_iteration(B.cols(), r, seed,
                                [&](const DenseMatrix& X) { return spmm_transpose(B, spmm(B, X)); });
}

}  // namespace codediter
