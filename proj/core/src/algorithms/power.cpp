#include "codediter/algorithms/power.hpp"

#include <algorithm>

#include "codediter/error.hpp"
#include "codediter/splitting/reshape.hpp"

namespace codediter {

void LinearSystem::validate() const {
    const auto N = B.rows();
    if (B.cols() != N) throw DimensionError("linear system matrix must be square");
    if (y.size() != N || x_star.size() != N || x0.size() != N)
        throw DimensionError("linear system vectors must match the matrix size");
}

namespace {

SparseMatrix padded_square(const SparseMatrix& B, std::int64_t n) { return B.padded(n, n); }

}  // namespace

RowPowerEngine::RowPowerEngine(const LinearSystem& system, BlockCombiner combiner, StorageMode storage)
    : n_(system.B.rows()),
      plan_(plan_split(system.B.rows(), SplitScheme::Row, combiner.splits())),
      combiner_(std::move(combiner)) {
    system.validate();
    const auto Np = plan_.padded_length();
    stores_ = assign_storage(padded_square(system.B, Np), pad_vector(system.y, Np), plan_, combiner_.pattern(),
                             storage);
    x_ = pad_vector(system.x0, Np);
    x_star_ = system.x_star;
}

void RowPowerEngine::step(std::uint64_t iteration, std::span<const std::int64_t> survivors, Rng& gen_rng) {
    combiner_.prepare(survivors, iteration, gen_rng);
    const auto b = plan_.block_size;
    DenseMatrix U = DenseMatrix::Zero(plan_.k, b);
    for (auto j : combiner_.needed_blocks()) {
        const auto& store = stores_[combiner_.holder(j)];
        Vector u = store.y_part(j);
        spmv_accumulate(store.block(j), x_, 1.0, u);
        U.row(j) = u.transpose();
    }
    x_ = vec(combiner_.estimate(U, mat(x_, b)));
    delta_ = combiner_.delta();
}

double RowPowerEngine::error() const { return (x_.head(n_) - x_star_).norm(); }

ColumnPowerEngine::ColumnPowerEngine(const LinearSystem& system, BlockCombiner combiner, bool fast_path,
                                     StorageMode storage)
    : n_(system.B.rows()),
      plan_(plan_split(system.B.rows(), SplitScheme::Column, combiner.splits())),
      combiner_(std::move(combiner)),
      fast_path_(fast_path) {
    system.validate();
    const auto Np = plan_.padded_length();
    stores_ = assign_storage(padded_square(system.B, Np), std::nullopt, plan_, combiner_.pattern(), storage);
    y_ = pad_vector(system.y, Np);
    x_ = pad_vector(system.x0, Np);
    x_star_ = system.x_star;
    u_hat_ = DenseMatrix::Zero(plan_.k, Np);
}

DenseMatrix ColumnPowerEngine::block_targets() const {
    const auto Np = plan_.padded_length();
    const Vector xs = pad_vector(x_star_, Np);
    DenseMatrix out = DenseMatrix::Zero(plan_.k, Np);
    for (std::int64_t j = 0; j < plan_.k; ++j) {
        const auto holders = combiner_.pattern().holders(j);
        if (holders.empty()) throw ConfigError("block " + std::to_string(j) + " has no holder");
        out.row(j) = spmv(stores_[holders.front()].block(j), xs.segment(plan_.block_begin(j), plan_.block_size))
                         .transpose();
    }
    return out;
}

void ColumnPowerEngine::step(std::uint64_t iteration, std::span<const std::int64_t> survivors, Rng& gen_rng) {
    combiner_.prepare(survivors, iteration, gen_rng);
    const auto Np = plan_.padded_length();
    const auto b = plan_.block_size;
    DenseMatrix U = DenseMatrix::Zero(plan_.k, Np);
    for (auto j : combiner_.needed_blocks()) {
        const auto& block = stores_[combiner_.holder(j)].block(j);
        Vector u = spmv(block, x_.segment(plan_.block_begin(j), b));
        U.row(j) = u.transpose();
    }
    DenseMatrix next = combiner_.estimate(U, u_hat_);
    const Eigen::RowVectorXd slow = next.colwise().sum();
    if (fast_path_) {
        const Eigen::RowVectorXd fast = combiner_.estimate_sum(U, u_hat_);
        path_gap_ = (fast - slow).cwiseAbs().maxCoeff();
        x_ = fast.transpose() + y_;
    } else {
        path_gap_ = 0.0;
        x_ = slow.transpose() + y_;
    }
    u_hat_ = std::move(next);
    delta_ = combiner_.delta();
}

double ColumnPowerEngine::error() const { return (x_.head(n_) - x_star_).norm(); }

SummaPowerEngine::SummaPowerEngine(const LinearSystem& system, std::int64_t k, std::vector<BlockCombiner> groups,
                                   StorageMode storage)
    : n_(system.B.rows()), plan_(plan_split(system.B.rows(), SplitScheme::Summa, k)), groups_(std::move(groups)) {
    system.validate();
    if (static_cast<std::int64_t>(groups_.size()) != plan_.side)
        throw ConfigError("summa needs one worker group per column strip");
    std::vector<SparsityPattern> patterns;
    for (const auto& g : groups_) {
        group_offsets_.push_back(total_workers_);
        total_workers_ += g.workers();
        patterns.push_back(g.pattern());
    }
    group_offsets_.push_back(total_workers_);
    stores_ = assign_summa_storage(system.B, plan_, patterns, storage);
    const auto Np = plan_.padded_length();
    for (const auto& g : groups_) w_hat_.push_back(DenseMatrix::Zero(g.splits(), piece_length(Np, g.splits())));
    y_ = pad_vector(system.y, Np);
    x_ = pad_vector(system.x0, Np);
    x_star_ = system.x_star;
}

void SummaPowerEngine::step(std::uint64_t iteration, std::span<const std::int64_t> survivors, Rng& gen_rng) {
    const auto Np = plan_.padded_length();
    const auto b = plan_.block_size;
    Vector next = y_;
    double delta_sum = 0.0;
    std::vector<std::int64_t> local;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        auto& comb = groups_[g];
        local.clear();
        for (auto w : survivors)
            if (w >= group_offsets_[g] && w < group_offsets_[g + 1]) local.push_back(w - group_offsets_[g]);
        comb.prepare(local, iteration, gen_rng);
        const auto len = w_hat_[g].cols();
        const auto xg = x_.segment(static_cast<Eigen::Index>(g) * b, b);
        DenseMatrix U = DenseMatrix::Zero(comb.splits(), len);
        for (auto j : comb.needed_blocks()) {
            Vector u = spmv(stores_[g][comb.holder(j)].block(j), xg);
            U.row(j) = u.transpose();
        }
        w_hat_[g] = comb.estimate(U, w_hat_[g]);
        next += vec(w_hat_[g]).head(Np);
        delta_sum += comb.delta();
    }
    x_ = std::move(next);
    delta_ = delta_sum / static_cast<double>(groups_.size());
}

double SummaPowerEngine::error() const { return (x_.head(n_) - x_star_).norm(); }

}  // namespace codediter
