#include "codediter/kernel/dense.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "codediter/error.hpp"

namespace codediter {

namespace {

void require_finite(const DenseMatrix& M, const char* what) {
    if (!M.allFinite()) throw NumericError(std::string(what) + ": non-finite entry in input");
}

void require_small(const DenseMatrix& M, const char* what) {
    if (std::min(M.rows(), M.cols()) > kSmallMatrixLimit)
        throw DimensionError(std::string(what) + ": matrix exceeds the small-matrix limit");
}

std::int64_t count_rank(const Vector& sigma, double rank_tol) {
    if (sigma.size() == 0 || sigma[0] <= 0.0) return 0;
    const double cut = rank_tol * sigma[0];
    std::int64_t rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma[i] > cut) ++rank;
    return rank;
}

}  // namespace

Vector normalize_column_signs(DenseMatrix& M, double tol) {
    Vector signs = Vector::Ones(M.cols());
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            if (std::abs(M(r, c)) > tol) {
                if (M(r, c) < 0.0) {
                    M.col(c) *= -1.0;
                    signs[c] = -1.0;
                }
                break;
            }
        }
    }
    return signs;
}

SvdResult svd_small(const DenseMatrix& M, double rank_tol) {
    require_finite(M, "svd_small");
    require_small(M, "svd_small");
    SvdResult out;
    const auto m = M.rows();
    const auto n = M.cols();
    if (m == 0 || n == 0) {
        out.U = DenseMatrix::Zero(m, 0);
        out.singular_values = Vector::Zero(0);
        out.Vt = DenseMatrix::Identity(n, n);
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd{M}, Eigen::ComputeThinU | Eigen::ComputeFullV);
    DenseMatrix V = svd.matrixV();
    out.U = svd.matrixU();
    out.singular_values = svd.singularValues();
    const Vector signs = normalize_column_signs(V);
    for (Eigen::Index c = 0; c < out.U.cols(); ++c) out.U.col(c) *= signs[c];
    out.Vt = V.transpose();
    out.numeric_rank = count_rank(out.singular_values, rank_tol);
    return out;
}

std::int64_t numeric_rank(const DenseMatrix& M, double rank_tol) {
    require_finite(M, "numeric_rank");
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd{M}};
    return count_rank(svd.singularValues(), rank_tol);
}

QrResult qr_small_unchecked(const DenseMatrix& M) {
    require_finite(M, "qr_small");
    require_small(M, "qr_small");
    const auto m = M.rows();
    const auto n = M.cols();
    if (m < n) throw DimensionError("qr_small: needs rows >= cols");
    QrResult out;
    if (n == 0) {
        out.Q = DenseMatrix::Zero(m, 0);
        out.R = DenseMatrix::Zero(0, 0);
        return out;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr{Eigen::MatrixXd{M}};
    out.Q = qr.householderQ() * Eigen::MatrixXd::Identity(m, n);
    out.R = qr.matrixQR().topRows(n).template triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (out.R(i, i) < 0.0) {
            out.R.row(i) *= -1.0;
            out.Q.col(i) *= -1.0;
        }
    }
    return out;
}

QrResult qr_small(const DenseMatrix& M) {
    QrResult out = qr_small_unchecked(M);
    const double floor = 1e-12 * M.norm();
    for (Eigen::Index i = 0; i < out.R.rows(); ++i) {
        if (!(out.R(i, i) > floor))
            throw DegenerateBasisError("qr_small: rank-deficient input (R diagonal " + std::to_string(i) +
                                       " below threshold)");
    }
    return out;
}

SymEigResult symeig_small(const DenseMatrix& M) {
    require_finite(M, "symeig_small");
    require_small(M, "symeig_small");
    if (M.rows() != M.cols()) throw DimensionError("symeig_small: matrix is not square");
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if (M.size() > 0 && (M - M.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw NumericError("symeig_small: matrix is not symmetric");
    SymEigResult out;
    const auto n = M.rows();
    if (n == 0) {
        out.eigenvalues = Vector::Zero(0);
        out.eigenvectors = DenseMatrix::Zero(0, 0);
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig{Eigen::MatrixXd{M}};
    if (eig.info() != Eigen::Success) throw NumericError("symeig_small: eigensolver did not converge");
    out.eigenvalues = eig.eigenvalues().reverse();
    out.eigenvectors = eig.eigenvectors().rowwise().reverse();
    normalize_column_signs(out.eigenvectors);
    return out;
}

double subspace_distance(const DenseMatrix& X, const DenseMatrix& Y) {
    if (X.rows() != Y.rows() || X.cols() != Y.cols()) throw DimensionError("subspace_distance: shape mismatch");
    const auto r = X.cols();
    if (r == 0) return 0.0;
    const auto eye = Eigen::MatrixXd::Identity(r, r);
    if ((X.transpose() * X - eye).norm() > 1e-6 || (Y.transpose() * Y - eye).norm() > 1e-6)
        throw NumericError("subspace_distance: inputs must have orthonormal columns");
    // ||Y - X X^T Y||_F^2 = r - ||X^T Y||_F^2 = ||XX^T - YY^T||_F^2 / 2, without the cancellation.
    const DenseMatrix residual = Y - X * (X.transpose() * Y);
    return std::min(1.0, residual.norm() / std::sqrt(static_cast<double>(r)));
}

}  // namespace codediter
