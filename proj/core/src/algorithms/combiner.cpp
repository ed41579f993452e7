#include "codediter/algorithms/combiner.hpp"

#include <algorithm>

#include "codediter/error.hpp"

namespace codediter {

BlockCombiner::BlockCombiner(SparsityPattern pattern, DecodeRule rule, double rank_tol)
    : pattern_(std::move(pattern)), rule_(rule), rank_tol_(rank_tol) {}

void BlockCombiner::prepare(std::span<const std::int64_t> survivors, std::uint64_t iteration, Rng& gen_rng) {
    if (rule_ == DecodeRule::Substitute) {
        prepare(survivors, sample_generator(pattern_, iteration, gen_rng));
        return;
    }
    survivors_.assign(survivors.begin(), survivors.end());
    std::sort(survivors_.begin(), survivors_.end());
    finish_prepare();
}

void BlockCombiner::prepare(std::span<const std::int64_t> survivors, const GeneratorMatrix& G) {
    if (G.values.rows() != pattern_.workers() || G.values.cols() != pattern_.splits())
        throw DimensionError("generator shape differs from pattern");
    for (std::int64_t i = 0; i < pattern_.workers(); ++i)
        for (std::int64_t j = 0; j < pattern_.splits(); ++j)
            if (G.values(i, j) != 0.0 && !pattern_.at(i, j))
                throw DimensionError("generator has a value outside the pattern support");
    partial_ = restrict_rows(G, survivors);
    survivors_ = partial_.survivors;
    finish_prepare();
}

void BlockCombiner::finish_prepare() {
    const auto k = pattern_.splits();
    holder_.assign(static_cast<std::size_t>(k), -1);
    for (auto w : survivors_) {
        if (w < 0 || w >= pattern_.workers()) throw DimensionError("survivor index out of range");
        for (auto j : pattern_.row_support(w))
            if (holder_[j] < 0) holder_[j] = w;
    }
    needed_.clear();
    for (std::int64_t j = 0; j < k; ++j)
        if (holder_[j] >= 0) needed_.push_back(j);

    if (rule_ == DecodeRule::Substitute) {
        basis_ = decode_basis(partial_.rows, rank_tol_);
        delta_ = basis_.delta;
    } else {
        delta_ = 1.0 - static_cast<double>(needed_.size()) / static_cast<double>(k);
    }
}

DenseMatrix BlockCombiner::coded_results(const DenseMatrix& U) const {
    if (U.rows() != splits()) throw DimensionError("block results must have k rows");
    if (rule_ == DecodeRule::Availability) {
        DenseMatrix out(static_cast<Eigen::Index>(survivors_.size()), U.cols());
        for (std::size_t r = 0; r < survivors_.size(); ++r) {
            out.row(static_cast<Eigen::Index>(r)).setZero();
            for (auto j : pattern_.row_support(survivors_[r])) out.row(static_cast<Eigen::Index>(r)) += U.row(j);
        }
        return out;
    }
    // Only entries on the pattern support are nonzero, so worker r touches only its own blocks.
    DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(survivors_.size()), U.cols());
    for (std::size_t r = 0; r < survivors_.size(); ++r)
        for (auto j : pattern_.row_support(survivors_[r]))
            out.row(static_cast<Eigen::Index>(r)) += partial_.rows(static_cast<Eigen::Index>(r), j) * U.row(j);
    return out;
}

DenseMatrix BlockCombiner::estimate_from_coded(const DenseMatrix& Cs, const DenseMatrix& previous) const {
    if (rule_ != DecodeRule::Substitute) throw ConfigError("estimate_from_coded needs the substitute rule");
    if (previous.rows() != splits() || Cs.rows() != static_cast<Eigen::Index>(survivors_.size()) ||
        Cs.cols() != previous.cols())
        throw DimensionError("estimate_from_coded: shape mismatch");
    DenseMatrix out = basis_.V * (basis_.L * Cs);
    if (basis_.Vtilde.cols() > 0) out.noalias() += basis_.Vtilde * (basis_.Vtilde.transpose() * previous);
    return out;
}

DenseMatrix BlockCombiner::estimate(const DenseMatrix& U, const DenseMatrix& previous) const {
    if (U.rows() != splits() || previous.rows() != splits() || U.cols() != previous.cols())
        throw DimensionError("estimate: block results and previous must both be k x m");
    if (rule_ == DecodeRule::Substitute) return estimate_from_coded(coded_results(U), previous);
    DenseMatrix out = previous;
    for (auto j : needed_) out.row(j) = U.row(j);
    return out;
}

Eigen::RowVectorXd BlockCombiner::estimate_sum(const DenseMatrix& U, const DenseMatrix& previous) const {
    if (U.rows() != splits() || previous.rows() != splits() || U.cols() != previous.cols())
        throw DimensionError("estimate_sum: block results and previous must both be k x m");
    if (rule_ == DecodeRule::Availability) {
        Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(U.cols());
        for (std::int64_t j = 0; j < splits(); ++j) sum += available(j) ? U.row(j) : previous.row(j);
        return sum;
    }
    const Vector ones = Vector::Ones(splits());
    const Vector a = basis_.L.transpose() * (basis_.V.transpose() * ones);
    Eigen::RowVectorXd sum = a.transpose() * coded_results(U);
    if (basis_.Vtilde.cols() > 0) {
        const Vector c = basis_.Vtilde * (basis_.Vtilde.transpose() * ones);
        sum.noalias() += c.transpose() * previous;
    }
    return sum;
}

}  // namespace codediter
