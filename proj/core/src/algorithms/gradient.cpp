#include "codediter/algorithms/gradient.hpp"

#include "codediter/error.hpp"

namespace codediter {

double least_squares_objective(const DenseMatrix& A, const Vector& y, const Vector& x) {
    return (A * x - y).squaredNorm() / (2.0 * static_cast<double>(A.rows()));
}

GradientEngine::GradientEngine(const DenseMatrix& A, const Vector& y, Vector x0, BlockCombiner combiner,
                               double step_size, bool substitute_previous, bool fast_path)
    : A_(A),
      y_(y),
      n_(A.rows()),
      plan_(plan_split(A.rows(), SplitScheme::Row, combiner.splits())),
      combiner_(std::move(combiner)),
      step_size_(step_size),
      substitute_previous_(substitute_previous),
      fast_path_(fast_path),
      x_(std::move(x0)) {
    if (y_.size() != n_ || x_.size() != A_.cols()) throw DimensionError("gradient engine: A, y and x0 disagree");
    if (!(step_size_ > 0.0)) throw ConfigError("gradient step size must be positive");
    const auto np = plan_.padded_length();
    DenseMatrix Ap = DenseMatrix::Zero(np, A_.cols());
    Ap.topRows(n_) = A_;
    Vector yp = Vector::Zero(np);
    yp.head(n_) = y_;
    for (std::int64_t j = 0; j < plan_.k; ++j) {
        A_blocks_.push_back(Ap.middleRows(plan_.block_begin(j), plan_.block_size));
        y_blocks_.push_back(yp.segment(plan_.block_begin(j), plan_.block_size));
    }
    w_hat_ = DenseMatrix::Zero(plan_.k, A_.cols());
    direction_ = Vector::Zero(A_.cols());
}

void GradientEngine::step(std::uint64_t iteration, std::span<const std::int64_t> survivors, Rng& gen_rng) {
    combiner_.prepare(survivors, iteration, gen_rng);
    const auto k = plan_.k;
    const double inv_n = 1.0 / static_cast<double>(n_);
    DenseMatrix U = DenseMatrix::Zero(k, A_.cols());
    for (auto j : combiner_.needed_blocks()) {
        const Vector residual = A_blocks_[j] * x_ - y_blocks_[j];
        U.row(j) = inv_n * (A_blocks_[j].transpose() * residual).transpose();
    }
    const DenseMatrix previous = substitute_previous_ ? w_hat_ : DenseMatrix::Zero(k, A_.cols());
    DenseMatrix next = combiner_.estimate(U, previous);
    if (fast_path_)
        direction_ = combiner_.estimate_sum(U, previous).transpose();
    else
        direction_ = next.colwise().sum().transpose();
    x_ -= step_size_ * direction_;
    w_hat_ = std::move(next);
    delta_ = combiner_.delta();
}

double GradientEngine::error() const { return least_squares_objective(A_, y_, x_); }

}  // namespace codediter
