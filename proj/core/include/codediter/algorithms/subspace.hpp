#pragma once

#include <cstdint>
#include <vector>

#include "codediter/algorithms/combiner.hpp"
#include "codediter/algorithms/engine.hpp"
#include "codediter/kernel/sparse_matrix.hpp"
#include "codediter/splitting/plan.hpp"

namespace codediter {

enum class SubspaceKind {
    Eigen,  ///< Z = M X with M split into column blocks
    Svd,    ///< Z = B^T B X with B split into row blocks, W_j = B_j^T (B_j X)
};

/// Which decomposition produces the post-QR rotation.
enum class AccelRoute {
    Svd,  ///< R = S Lambda^{1/2} S~^T
    Eig,  ///< R R^T = S Lambda S^T, S~ = R^T S Lambda^{-1/2}
};

struct SubspaceOptions {
    bool accelerate = false;
    AccelRoute route = AccelRoute::Svd;
    bool fast_path = true;
    double rank_tol = kDefaultRankTol;
    std::uint64_t restart_seed = 0;  ///< stream for replacement directions
};

/// Orthogonal iteration with substitute decoding over per-block results W_j.
class SubspaceEngine final : public Engine {
public:
    /// X_star (N x r) is the reference subspace for error(); X0 (N x r) must be orthonormal.
    SubspaceEngine(SubspaceKind kind, const SparseMatrix& B, DenseMatrix X_star, DenseMatrix X0,
                   BlockCombiner combiner, SubspaceOptions options = {});

    std::int64_t workers() const override { return combiner_.workers(); }
    void step(std::uint64_t iteration, std::span<const std::int64_t> survivors, Rng& gen_rng) override;
    double error() const override;
    double last_delta() const override { return delta_; }
    bool restarted() const override { return restarted_; }

    /// Current N x r estimate (padding removed).
    DenseMatrix X() const { return X_.topRows(n_); }
    /// Z of the last step (padded rows included).
    const DenseMatrix& last_Z() const { return Z_; }
    /// Rotation applied to the cache in the last step (identity without acceleration).
    const DenseMatrix& last_rotation() const { return rotation_; }
    /// Block j of the rotated cache, as a dim x r matrix.
    DenseMatrix cached_block(std::int64_t j) const;
    const BlockCombiner& combiner() const { return combiner_; }
    std::int64_t rank() const { return r_; }

private:
    SubspaceKind kind_;
    SubspaceOptions options_;
    std::int64_t n_;    ///< rows of X without padding
    std::int64_t dim_;  ///< rows of X with padding
    std::int64_t r_;
    SplitPlan plan_;
    BlockCombiner combiner_;
    std::vector<WorkerStore> stores_;
    DenseMatrix X_;
    DenseMatrix X_star_;
    DenseMatrix Z_;
    DenseMatrix rotation_;
    DenseMatrix w_rot_;  ///< k x (dim * r), row j = vec(W_hat_j S~)
    Rng restart_rng_;
    double delta_ = 0.0;
    bool restarted_ = false;

    DenseMatrix block_result(std::int64_t j) const;
    void orthonormalize(const DenseMatrix& Z);
};

/// Gaussian N x r matrix orthonormalized by QR.
DenseMatrix random_orthonormal(std::int64_t N, std::int64_t r, Rng& rng);

/// ||X^T X - I||_F.
double orthonormality_defect(const DenseMatrix& X);

}  // namespace codediter
