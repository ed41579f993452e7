#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "codediter/codes/generator.hpp"
#include "codediter/codes/pattern.hpp"
#include "codediter/random.hpp"

namespace codediter {

/// How the master turns what survivors sent into an estimate of all k block results.
enum class DecodeRule {
    Substitute,    ///< coded: V (L C_s) + Vtilde Vtilde^T previous
    Availability,  ///< uncoded/replicated: block j taken from any surviving holder, else previous
};

/// One step of master-side decoding over k block results. Block results are
/// stacked as the rows of a k x m matrix U; workers transmit rows of G_s U
/// (Substitute) or their own rows of U (Availability).
class BlockCombiner {
public:
    BlockCombiner(SparsityPattern pattern, DecodeRule rule, double rank_tol = kDefaultRankTol);

    const SparsityPattern& pattern() const noexcept { return pattern_; }
    DecodeRule rule() const noexcept { return rule_; }
    std::int64_t splits() const noexcept { return pattern_.splits(); }
    std::int64_t workers() const noexcept { return pattern_.workers(); }

    /// Draws G^(t) (Substitute only) and fixes the survivor set for this step.
    void prepare(std::span<const std::int64_t> survivors, std::uint64_t iteration, Rng& gen_rng);
    /// Uses a caller-supplied generator instead of drawing one.
    void prepare(std::span<const std::int64_t> survivors, const GeneratorMatrix& G);

    const std::vector<std::int64_t>& survivors() const noexcept { return survivors_; }
    /// Blocks held by at least one survivor, ascending. Only these rows of U are read.
    const std::vector<std::int64_t>& needed_blocks() const noexcept { return needed_; }
    /// First surviving holder of block j (the worker that computes it), or -1.
    std::int64_t holder(std::int64_t block) const { return holder_[block]; }
    bool available(std::int64_t block) const { return holder_[block] >= 0; }

    /// Substitute: realized 1 - rank/k. Availability: 1 - (#available blocks)/k.
    double delta() const noexcept { return delta_; }
    const DecodingBasis& basis() const noexcept { return basis_; }
    const PartialGenerator& partial_generator() const noexcept { return partial_; }

    /// Rows transmitted by the survivors: G_s U.
    DenseMatrix coded_results(const DenseMatrix& U) const;

    /// Estimate of all k block results (k x m).
    DenseMatrix estimate(const DenseMatrix& U, const DenseMatrix& previous) const;
    /// Same from already transmitted coded rows C_s = G_s U.
    DenseMatrix estimate_from_coded(const DenseMatrix& Cs, const DenseMatrix& previous) const;

    /// 1^T estimate(U, previous) without forming the k x m estimate.
    Eigen::RowVectorXd estimate_sum(const DenseMatrix& U, const DenseMatrix& previous) const;

private:
    SparsityPattern pattern_;
    DecodeRule rule_;
    double rank_tol_;
    std::vector<std::int64_t> survivors_;
    std::vector<std::int64_t> needed_;
    std::vector<std::int64_t> holder_;
    PartialGenerator partial_;
    DecodingBasis basis_;
    double delta_ = 1.0;

    void finish_prepare();
};

}  // namespace codediter
