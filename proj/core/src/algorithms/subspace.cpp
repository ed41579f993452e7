#include "codediter/algorithms/subspace.hpp"

#include <cmath>

#include "codediter/error.hpp"
#include "codediter/kernel/dense.hpp"

namespace codediter {

DenseMatrix random_orthonormal(std::int64_t N, std::int64_t r, Rng& rng) {
    if (r > N) throw DimensionError("random_orthonormal: r exceeds N");
    DenseMatrix G(N, r);
    for (Eigen::Index i = 0; i < G.rows(); ++i)
        for (Eigen::Index c = 0; c < G.cols(); ++c) G(i, c) = standard_normal(rng);
    return qr_small(G).Q;
}

double orthonormality_defect(const DenseMatrix& X) {
    return (X.transpose() * X - DenseMatrix::Identity(X.cols(), X.cols())).norm();
}

SubspaceEngine::SubspaceEngine(SubspaceKind kind, const SparseMatrix& B, DenseMatrix X_star, DenseMatrix X0,
                               BlockCombiner combiner, SubspaceOptions options)
    : kind_(kind),
      options_(options),
      n_(B.cols()),
      r_(X0.cols()),
      combiner_(std::move(combiner)),
      X_star_(std::move(X_star)),
      restart_rng_(options.restart_seed) {
    if (X0.rows() != B.cols() || X_star_.rows() != B.cols() || X_star_.cols() != r_)
        throw DimensionError("subspace engine: X0 and X_star must be N x r");
    if (r_ < 1) throw ConfigError("subspace engine needs r >= 1");
    if (kind_ == SubspaceKind::Eigen) {
        if (B.rows() != B.cols()) throw DimensionError("eigen workload needs a square matrix");
        plan_ = plan_split(B.cols(), SplitScheme::Column, combiner_.splits());
        dim_ = plan_.padded_length();
        stores_ = assign_storage(B.padded(dim_, dim_), std::nullopt, plan_, combiner_.pattern());
    } else {
        plan_ = plan_split(B.rows(), SplitScheme::Row, combiner_.splits());
        dim_ = B.cols();
        stores_ = assign_storage(B, std::nullopt, plan_, combiner_.pattern());
    }
    X_ = DenseMatrix::Zero(dim_, r_);
    X_.topRows(n_) = X0;
    if (orthonormality_defect(X_) > 1e-8) throw NumericError("subspace engine: X0 is not orthonormal");
    w_rot_ = DenseMatrix::Zero(combiner_.splits(), dim_ * r_);
    rotation_ = DenseMatrix::Identity(r_, r_);
}

DenseMatrix SubspaceEngine::block_result(std::int64_t j) const {
    const auto& block = stores_[combiner_.holder(j)].block(j);
    if (kind_ == SubspaceKind::Eigen) {
        const DenseMatrix Xj = X_.middleRows(plan_.block_begin(j), plan_.block_size);
        return spmm(block, Xj);
    }
    return spmm_transpose(block, spmm(block, X_));
}

DenseMatrix SubspaceEngine::cached_block(std::int64_t j) const {
    return Eigen::Map<const DenseMatrix>(w_rot_.row(j).data(), dim_, r_);
}

void SubspaceEngine::step(std::uint64_t iteration, std::span<const std::int64_t> survivors, Rng& gen_rng) {
    combiner_.prepare(survivors, iteration, gen_rng);
    const auto k = combiner_.splits();
    DenseMatrix U = DenseMatrix::Zero(k, dim_ * r_);
    for (auto j : combiner_.needed_blocks()) {
        const DenseMatrix W = block_result(j);
        U.row(j) = Eigen::Map<const Eigen::RowVectorXd>(W.data(), W.size());
    }
    DenseMatrix w_hat = combiner_.estimate(U, w_rot_);
    const Eigen::RowVectorXd z = options_.fast_path ? combiner_.estimate_sum(U, w_rot_)
                                                    : Eigen::RowVectorXd(w_hat.colwise().sum());
    Z_ = Eigen::Map<const DenseMatrix>(z.data(), dim_, r_);
    orthonormalize(Z_);
    if (options_.accelerate) {
        for (std::int64_t j = 0; j < k; ++j) {
            const DenseMatrix rotated = Eigen::Map<const DenseMatrix>(w_hat.row(j).data(), dim_, r_) * rotation_;
            w_hat.row(j) = Eigen::Map<const Eigen::RowVectorXd>(rotated.data(), rotated.size());
        }
    }
    w_rot_ = std::move(w_hat);
    delta_ = combiner_.delta();
}

void SubspaceEngine::orthonormalize(const DenseMatrix& Z) {
    restarted_ = false;
    const QrResult qr = qr_small_unchecked(Z);
    std::vector<Eigen::Index> bad;
    DenseMatrix next;
    if (!options_.accelerate) {
        next = qr.Q;
        rotation_ = DenseMatrix::Identity(r_, r_);
        const double floor = options_.rank_tol * Z.norm();
        for (Eigen::Index c = 0; c < r_; ++c)
            if (!(qr.R(c, c) > floor)) bad.push_back(c);
    } else if (options_.route == AccelRoute::Svd) {
        const SvdResult svd = svd_small(qr.R, options_.rank_tol);
        next = qr.Q * svd.U;
        rotation_ = svd.Vt.transpose();
        for (Eigen::Index c = svd.numeric_rank; c < r_; ++c) bad.push_back(c);
    } else {
        const DenseMatrix gram = qr.R * qr.R.transpose();
        SymEigResult eig = symeig_small(0.5 * (gram + gram.transpose()));
        const double top = std::max(eig.eigenvalues[0], 0.0);
        DenseMatrix S = eig.eigenvectors;
        DenseMatrix S_tilde = DenseMatrix::Zero(r_, r_);
        for (Eigen::Index c = 0; c < r_; ++c) {
            const double lambda = eig.eigenvalues[c];
            // singular values are sqrt(lambda); compare on that scale
            if (!(lambda > 0.0) || std::sqrt(lambda) <= options_.rank_tol * std::sqrt(top)) {
                bad.push_back(c);
                continue;
            }
            S_tilde.col(c) = qr.R.transpose() * S.col(c) / std::sqrt(lambda);
        }
        // match the SVD route's sign convention on S~
        const Vector signs = normalize_column_signs(S_tilde);
        for (Eigen::Index c = 0; c < r_; ++c) S.col(c) *= signs[c];
        next = qr.Q * S;
        rotation_ = S_tilde;
    }
    if (!bad.empty()) {
        restarted_ = true;
        std::vector<bool> is_bad(static_cast<std::size_t>(r_), false);
        for (auto c : bad) is_bad[c] = true;
        for (auto c : bad) {
            Vector v = Vector::Zero(dim_);
            for (std::int64_t i = 0; i < n_; ++i) v[i] = standard_normal(restart_rng_);
            for (int pass = 0; pass < 2; ++pass)
                for (Eigen::Index o = 0; o < r_; ++o)
                    if (!is_bad[o]) v -= next.col(o) * next.col(o).dot(v);
            next.col(c) = v / v.norm();
            is_bad[c] = false;
        }
    }
    X_ = std::move(next);
}

double SubspaceEngine::error() const { return subspace_distance(X_.topRows(n_), X_star_); }

}  // namespace codediter
