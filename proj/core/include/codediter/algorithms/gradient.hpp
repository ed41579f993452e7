#pragma once

#include <cstdint>
#include <vector>

#include "codediter/algorithms/combiner.hpp"
#include "codediter/algorithms/engine.hpp"
#include "codediter/splitting/plan.hpp"

namespace codediter {

/// Objective ||A x - y||^2 / (2n).
double least_squares_objective(const DenseMatrix& A, const Vector& y, const Vector& x);

/// Gradient descent on the least-squares objective with the k data subsets
/// (row blocks of A) placed by the combiner's pattern. Partial gradient j is
/// (1/n) A_j^T (A_j x - y_j).
class GradientEngine final : public Engine {
public:
    /// substitute_previous: missing information comes from the previous
    /// estimates (substitute decoding). When false, blocks that did not arrive
    /// contribute zero, as in the baselines that sum only what they receive.
    GradientEngine(const DenseMatrix& A, const Vector& y, Vector x0, BlockCombiner combiner, double step_size,
                   bool substitute_previous, bool fast_path = true);

    std::int64_t workers() const override { return combiner_.workers(); }
    void step(std::uint64_t iteration, std::span<const std::int64_t> survivors, Rng& gen_rng) override;
    /// Objective value at the current iterate.
    double error() const override;
    double last_delta() const override { return delta_; }

    const Vector& x() const { return x_; }
    /// k x dim; row j is the current estimate of partial gradient j.
    const DenseMatrix& gradient_estimates() const { return w_hat_; }
    /// Aggregate direction used in the last step.
    const Vector& last_direction() const { return direction_; }
    const BlockCombiner& combiner() const { return combiner_; }
    double step_size() const { return step_size_; }

private:
    DenseMatrix A_;
    Vector y_;
    std::int64_t n_;
    SplitPlan plan_;
    std::vector<DenseMatrix> A_blocks_;
    std::vector<Vector> y_blocks_;
    BlockCombiner combiner_;
    double step_size_;
    bool substitute_previous_;
    bool fast_path_;
    Vector x_;
    Vector direction_;
    DenseMatrix w_hat_;
    double delta_ = 0.0;
};

}  // namespace codediter
