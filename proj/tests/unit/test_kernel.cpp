#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <cmath>

#include "codediter/error.hpp"
#include "codediter/kernel/dense.hpp"
#include "codediter/kernel/sparse_matrix.hpp"
#include "test_util.hpp"

using namespace codediter;
using testutil::max_abs;

TEST(SparseMatrix, FromTripletsSumsDuplicates) {
    std::vector<Triplet> t = {{0, 1, 1.0}, {0, 1, 2.0}, {1, 0, 4.0}, {0, 0, -1.0}};
    const auto B = SparseMatrix::from_triplets(2, 2, t);
    EXPECT_EQ(B.nnz(), 3);
    const DenseMatrix D = B.to_dense();
    EXPECT_DOUBLE_EQ(D(0, 0), -1.0);
    EXPECT_DOUBLE_EQ(D(0, 1), 3.0);
    EXPECT_DOUBLE_EQ(D(1, 0), 4.0);
}

TEST(SparseMatrix, RejectsBadStructure) {
    EXPECT_THROW(SparseMatrix(2, 2, {0, 2, 1}, {0, 1}, {1.0, 1.0}), Error);
    EXPECT_THROW(SparseMatrix(1, 2, {0, 2}, {1, 1}, {1.0, 1.0}), Error);
    EXPECT_THROW(SparseMatrix(1, 2, {0, 1}, {2}, {1.0}), Error);
}

TEST(Spmv, IdentityAndZero) {
    const auto I = SparseMatrix::identity(3);
    Vector x(3);
    x << 1, 2, 3;
    EXPECT_EQ(spmv(I, x), x);
    const SparseMatrix Z(3, 3);
    EXPECT_EQ(spmv(Z, x), Vector::Zero(3));
    EXPECT_THROW(spmv(I, Vector::Ones(2)), DimensionError);
}

TEST(Spmv, MatchesDenseOracle) {
    Rng rng = make_rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const DenseMatrix D = testutil::sparse_dense(20, 20, 0.2, rng);
        const auto B = SparseMatrix::from_dense(D);
        const Vector x = testutil::gaussian_vector(20, rng);
        const DenseMatrix expect = testutil::naive_product(D, DenseMatrix(x));
        EXPECT_LT(max_abs(Vector(spmv(B, x) - Vector(expect.col(0)))), 1e-12);
        const DenseMatrix expect_t = testutil::naive_product(D.transpose(), DenseMatrix(x));
        EXPECT_LT(max_abs(Vector(spmv_transpose(B, x) - Vector(expect_t.col(0)))), 1e-12);
    }
}

TEST(Spmm, MatchesDenseOracleAndSpmv) {
    Rng rng = make_rng(12);
    const DenseMatrix D = testutil::sparse_dense(15, 15, 0.3, rng);
    const auto B = SparseMatrix::from_dense(D);
    const DenseMatrix X = testutil::gaussian(15, 4, rng);
    EXPECT_LT(max_abs(DenseMatrix(spmm(B, X) - testutil::naive_product(D, X))), 1e-12);
    EXPECT_LT(max_abs(DenseMatrix(spmm_transpose(B, X) - testutil::naive_product(D.transpose(), X))), 1e-12);
    EXPECT_LT(max_abs(DenseMatrix(spmm(SparseMatrix::identity(15), X) - X)), 0.0 + 1e-300);
    const Vector col = X.col(2);
    EXPECT_LT(max_abs(Vector(Vector(spmm(B, X).col(2)) - spmv(B, col))), 1e-14);
}

TEST(SparseMatrix, SlicesTransposePadding) {
    Rng rng = make_rng(13);
    const DenseMatrix D = testutil::sparse_dense(7, 9, 0.4, rng);
    const auto B = SparseMatrix::from_dense(D);
    EXPECT_EQ(B.row_slice(2, 5).to_dense(), D.middleRows(2, 3));
    EXPECT_EQ(B.col_slice(3, 8).to_dense(), D.middleCols(3, 5));
    EXPECT_EQ(B.transpose().to_dense(), D.transpose());
    const DenseMatrix P = B.padded(10, 12).to_dense();
    EXPECT_EQ(P.topLeftCorner(7, 9), D);
    EXPECT_EQ(max_abs(DenseMatrix(P.bottomRows(3))), 0.0);
    EXPECT_EQ(max_abs(DenseMatrix(P.rightCols(3))), 0.0);
}

TEST(SparseMatrix, SpectralNormMatchesSvd) {
    Rng rng = make_rng(14);
    const DenseMatrix D = testutil::sparse_dense(30, 20, 0.3, rng);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd{D});
    EXPECT_NEAR(spectral_norm(SparseMatrix::from_dense(D)), svd.singularValues()[0], 1e-8);
    EXPECT_EQ(spectral_norm(SparseMatrix(4, 4)), 0.0);
}

TEST(SvdSmall, IdentityAndRankOne) {
    const auto s = svd_small(DenseMatrix::Identity(3, 3));
    EXPECT_EQ(s.numeric_rank, 3);
    EXPECT_LT(max_abs(Vector(s.singular_values - Vector::Ones(3))), 1e-14);

    DenseMatrix M(2, 2);
    M << 1, 0, 1, 0;
    const auto r = svd_small(M);
    EXPECT_EQ(r.numeric_rank, 1);
    EXPECT_NEAR(r.singular_values[0], std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(r.singular_values[1], 0.0, 1e-14);
}

TEST(SvdSmall, ReconstructionOnRandomMatrices) {
    Rng rng = make_rng(15);
    for (int rep = 0; rep < 100; ++rep) {
        const DenseMatrix M = testutil::gaussian(20, 10, rng);
        const auto s = svd_small(M);
        const DenseMatrix rebuilt = s.U * s.singular_values.asDiagonal() * s.Vt.topRows(10);
        EXPECT_LE((rebuilt - M).norm(), 1e-9 * std::max(1.0, M.norm()));
        EXPECT_LT((s.U.transpose() * s.U - DenseMatrix::Identity(10, 10)).norm(), 1e-10);
        for (int i = 0; i + 1 < s.singular_values.size(); ++i)
            EXPECT_GE(s.singular_values[i], s.singular_values[i + 1]);
    }
}

TEST(SvdSmall, EmptyInputGivesIdentityBasis) {
    const auto s = svd_small(DenseMatrix(0, 4));
    EXPECT_EQ(s.numeric_rank, 0);
    EXPECT_EQ(s.Vt, DenseMatrix::Identity(4, 4));
}

TEST(SvdSmall, RejectsNonFinite) {
    DenseMatrix M = DenseMatrix::Identity(2, 2);
    M(0, 1) = std::nan("");
    EXPECT_THROW(svd_small(M), NumericError);
}

TEST(NumericRank, InvariantUnderRowPermutationAndSignFlips) {
    Rng rng = make_rng(16);
    DenseMatrix M = testutil::gaussian(6, 5, rng);
    M.row(3) = M.row(0) + 2.0 * M.row(1);
    M.row(4) = M.row(2);
    const auto base = numeric_rank(M);
    EXPECT_EQ(base, 4);
    DenseMatrix perm = M;
    perm.row(0).swap(perm.row(5));
    perm.col(2) *= -1.0;
    perm.col(4) *= -1.0;
    EXPECT_EQ(numeric_rank(perm), base);
}

TEST(QrSmall, SignConventionAndOrthogonality) {
    const auto I = qr_small(DenseMatrix::Identity(4, 4));
    EXPECT_LT(max_abs(DenseMatrix(I.R - DenseMatrix::Identity(4, 4))), 1e-14);
    const auto two = qr_small(2.0 * DenseMatrix::Identity(3, 3));
    EXPECT_LT(max_abs(DenseMatrix(two.Q - DenseMatrix::Identity(3, 3))), 1e-14);
    EXPECT_LT(max_abs(DenseMatrix(two.R - 2.0 * DenseMatrix::Identity(3, 3))), 1e-14);

    Rng rng = make_rng(17);
    const DenseMatrix M = testutil::gaussian(50, 5, rng);
    const auto qr = qr_small(M);
    EXPECT_LT((qr.Q.transpose() * qr.Q - DenseMatrix::Identity(5, 5)).norm(), 1e-9);
    EXPECT_LT((qr.Q * qr.R - M).norm(), 1e-9);
    for (int i = 0; i < 5; ++i) {
        EXPECT_GE(qr.R(i, i), 0.0);
        for (int j = 0; j < i; ++j) EXPECT_EQ(qr.R(i, j), 0.0);
    }
    const auto Qonly = qr_small(qr.Q);
    EXPECT_LT(max_abs(DenseMatrix(Qonly.R - DenseMatrix::Identity(5, 5))), 1e-12);
}

TEST(QrSmall, RankDeficientSignalsDegenerateBasis) {
    DenseMatrix M = DenseMatrix::Zero(4, 2);
    M(0, 0) = 1.0;
    M(1, 0) = 1.0;
    M.col(1) = 3.0 * M.col(0);
    EXPECT_THROW(qr_small(M), DegenerateBasisError);
    EXPECT_NO_THROW(qr_small_unchecked(M));
}

TEST(SymEig, OrderingAndResidual) {
    DenseMatrix D = DenseMatrix::Zero(3, 3);
    D.diagonal() << 3, 1, 2;
    const auto e = symeig_small(D);
    EXPECT_NEAR(e.eigenvalues[0], 3.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues[1], 2.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues[2], 1.0, 1e-14);
    const auto id = symeig_small(DenseMatrix::Identity(4, 4));
    EXPECT_LT(max_abs(Vector(id.eigenvalues - Vector::Ones(4))), 1e-14);

    Rng rng = make_rng(18);
    const DenseMatrix R = testutil::gaussian(6, 6, rng);
    const DenseMatrix M = R * R.transpose();
    const auto ev = symeig_small(M);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd{R});
    for (int i = 0; i < 6; ++i) {
        EXPECT_NEAR(ev.eigenvalues[i], svd.singularValues()[i] * svd.singularValues()[i], 1e-8);
        EXPECT_LT((M * ev.eigenvectors.col(i) - ev.eigenvalues[i] * ev.eigenvectors.col(i)).norm(), 1e-8);
    }
}

TEST(SymEig, RejectsAsymmetric) {
    DenseMatrix M = DenseMatrix::Identity(3, 3);
    M(0, 2) = 0.5;
    EXPECT_THROW(symeig_small(M), NumericError);
}

// The QR-then-eig(R R^T) route and the SVD-of-R route give the same span.
TEST(Acceleration, EigRouteAndSvdRouteSpanTheSameSubspace) {
    Rng rng = make_rng(19);
    for (int rep = 0; rep < 20; ++rep) {
        const DenseMatrix Z = testutil::gaussian(12, 3, rng);
        const auto qr = qr_small(Z);
        const auto sv = svd_small(qr.R);
        const DenseMatrix X_svd = qr.Q * sv.U;
        const auto eg = symeig_small(DenseMatrix(qr.R * qr.R.transpose()));
        const DenseMatrix X_eig = qr.Q * eg.eigenvectors;
        EXPECT_LT((X_svd * X_svd.transpose() - X_eig * X_eig.transpose()).norm(), 1e-8);
        // column by column as well, up to sign
        for (int c = 0; c < 3; ++c)
            EXPECT_NEAR(std::abs(X_svd.col(c).dot(X_eig.col(c))), 1.0, 1e-8);
    }
}

TEST(SubspaceDistance, Examples) {
    Rng rng = make_rng(20);
    const auto qr = qr_small(testutil::gaussian(8, 3, rng));
    EXPECT_NEAR(subspace_distance(qr.Q, qr.Q), 0.0, 1e-12);
    DenseMatrix shuffled(8, 3);
    shuffled.col(0) = -qr.Q.col(2);
    shuffled.col(1) = qr.Q.col(0);
    shuffled.col(2) = -qr.Q.col(1);
    EXPECT_NEAR(subspace_distance(qr.Q, shuffled), 0.0, 1e-12);

    DenseMatrix e1 = DenseMatrix::Zero(2, 1), e2 = DenseMatrix::Zero(2, 1);
    e1(0, 0) = 1.0;
    e2(1, 0) = 1.0;
    EXPECT_NEAR(subspace_distance(e1, e2), 1.0, 1e-14);
}

TEST(SubspaceDistance, MatchesProjectorDefinition) {
    Rng rng = make_rng(21);
    const DenseMatrix X = qr_small(testutil::gaussian(10, 2, rng)).Q;
    const DenseMatrix Y = qr_small(testutil::gaussian(10, 2, rng)).Q;
    const double direct = (X * X.transpose() - Y * Y.transpose()).norm() / std::sqrt(4.0);
    EXPECT_NEAR(subspace_distance(X, Y), direct, 1e-12);
    EXPECT_THROW(subspace_distance(2.0 * X, Y), NumericError);
}
