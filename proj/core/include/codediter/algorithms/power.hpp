#pragma once

#include <cstdint>
#include <vector>

#include "codediter/algorithms/combiner.hpp"
#include "codediter/algorithms/engine.hpp"
#include "codediter/kernel/sparse_matrix.hpp"
#include "codediter/splitting/plan.hpp"

namespace codediter {

/// x <- B x + y with known fixed point x_star.
struct LinearSystem {
    SparseMatrix B;
    Vector y;
    Vector x_star;
    Vector x0;

    void validate() const;
};

/// Row splitting: worker i sends sum_j g_ij (B_j x + y_j); the master keeps
/// V V^T mat(Bx + y) from the survivors and fills the rest from mat(x_t).
class RowPowerEngine final : public Engine {
public:
    RowPowerEngine(const LinearSystem& system, BlockCombiner combiner,
                   StorageMode storage = StorageMode::Materialized);

    std::int64_t workers() const override { return combiner_.workers(); }
    void step(std::uint64_t iteration, std::span<const std::int64_t> survivors, Rng& gen_rng) override;
    double error() const override;
    double last_delta() const override { return delta_; }

    /// Current iterate without padding.
    Vector x() const { return x_.head(n_); }
    const Vector& padded_x() const { return x_; }
    const SplitPlan& plan() const { return plan_; }
    const BlockCombiner& combiner() const { return combiner_; }
    const std::vector<WorkerStore>& stores() const { return stores_; }

private:
    std::int64_t n_;
    SplitPlan plan_;
    BlockCombiner combiner_;
    std::vector<WorkerStore> stores_;
    Vector x_;
    Vector x_star_;
    double delta_ = 0.0;
};

/// Column splitting: worker i sends sum_j g_ij B_j x^j. The master keeps one
/// cached estimate per block and sets x = sum_j u_j + y.
class ColumnPowerEngine final : public Engine {
public:
    ColumnPowerEngine(const LinearSystem& system, BlockCombiner combiner, bool fast_path = true,
                      StorageMode storage = StorageMode::Materialized);

    std::int64_t workers() const override { return combiner_.workers(); }
    void step(std::uint64_t iteration, std::span<const std::int64_t> survivors, Rng& gen_rng) override;
    double error() const override;
    double last_delta() const override { return delta_; }

    Vector x() const { return x_.head(n_); }
    const Vector& padded_x() const { return x_; }
    /// k x N_padded; row j is the cached estimate of B_j x^j.
    const DenseMatrix& block_estimates() const { return u_hat_; }
    const SplitPlan& plan() const { return plan_; }
    const BlockCombiner& combiner() const { return combiner_; }
    /// k x N_padded; row j is B_j x*^j, the fixed point of the cache.
    DenseMatrix block_targets() const;

    /// x from the cache sum (sum_j u_j + y) instead of the coded-row shortcut.
    void set_fast_path(bool on) { fast_path_ = on; }
    /// Difference between the two ways of forming x in the last step (max abs).
    double last_path_gap() const { return path_gap_; }

private:
    std::int64_t n_;
    SplitPlan plan_;
    BlockCombiner combiner_;
    bool fast_path_;
    std::vector<WorkerStore> stores_;
    Vector y_;
    Vector x_;
    Vector x_star_;
    DenseMatrix u_hat_;
    double delta_ = 0.0;
    double path_gap_ = 0.0;
};

/// SUMMA splitting with sqrt(k) column strips. Strip g is row-coded inside its
/// own group of workers; the master sums the group estimates.
class SummaPowerEngine final : public Engine {
public:
    /// One combiner per strip. Group g owns workers [g * P_g, (g + 1) * P_g).
    SummaPowerEngine(const LinearSystem& system, std::int64_t k, std::vector<BlockCombiner> groups,
                     StorageMode storage = StorageMode::Materialized);

    std::int64_t workers() const override { return total_workers_; }
    void step(std::uint64_t iteration, std::span<const std::int64_t> survivors, Rng& gen_rng) override;
    double error() const override;
    double last_delta() const override { return delta_; }

    Vector x() const { return x_.head(n_); }
    const SplitPlan& plan() const { return plan_; }
    const BlockCombiner& group(std::int64_t g) const { return groups_[g]; }
    /// Cached estimate of strip g's product, pieces x piece_length.
    const DenseMatrix& group_estimate(std::int64_t g) const { return w_hat_[g]; }

private:
    std::int64_t n_;
    SplitPlan plan_;
    std::vector<BlockCombiner> groups_;
    std::vector<std::vector<WorkerStore>> stores_;
    std::vector<std::int64_t> group_offsets_;
    std::int64_t total_workers_ = 0;
    std::vector<DenseMatrix> w_hat_;
    Vector y_;
    Vector x_;
    Vector x_star_;
    double delta_ = 0.0;
};

}  // namespace codediter
