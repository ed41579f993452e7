#include <gtest/gtest.h>

#include <Eigen/LU>

#include "codediter/algorithms/power.hpp"
#include "codediter/error.hpp"
#include "codediter/kernel/dense.hpp"
#include "codediter/splitting/plan.hpp"
#include "codediter/splitting/reshape.hpp"
#include "test_util.hpp"

using namespace codediter;
using testutil::max_abs;

TEST(Reshape, VecAndMat) {
    DenseMatrix X(2, 2);
    X << 1, 2, 3, 4;
    Vector v(4);
    v << 1, 2, 3, 4;
    EXPECT_EQ(vec(X), v);
    EXPECT_EQ(mat(v, 2), X);
    EXPECT_EQ(mat(v, 4).rows(), 1);
    DenseMatrix row(1, 3);
    row << 5, 6, 7;
    EXPECT_EQ(vec(row), Vector(row.row(0).transpose()));
    EXPECT_THROW(mat(v, 3), DimensionError);

    Rng rng = make_rng(1);
    const DenseMatrix R = testutil::gaussian(5, 3, rng);
    EXPECT_EQ(mat(vec(R), 3), R);
    const Vector w = testutil::gaussian_vector(12, rng);
    EXPECT_EQ(vec(mat(w, 4)), w);
}

TEST(Reshape, KronApplyExample1) {
    DenseMatrix A(3, 2);
    A << 1, 0, 0, 1, 1, 1;
    Vector v(4);
    v << 1, 2, 10, 20;
    Vector expect(6);
    expect << 1, 2, 10, 20, 11, 22;
    EXPECT_EQ(kron_apply(A, v, 2), expect);
    EXPECT_EQ(kron_apply(DenseMatrix::Identity(2, 2), v, 2), v);
    EXPECT_THROW(kron_apply(A, Vector::Ones(5), 2), DimensionError);
}

TEST(Reshape, KronApplyMatchesExplicitKronecker) {
    Rng rng = make_rng(2);
    const std::int64_t kp = 5, k = 3, b = 4;
    const DenseMatrix A = testutil::gaussian(kp, k, rng);
    const Vector v = testutil::gaussian_vector(k * b, rng);
    DenseMatrix K = DenseMatrix::Zero(kp * b, k * b);
    for (std::int64_t i = 0; i < kp; ++i)
        for (std::int64_t j = 0; j < k; ++j)
            for (std::int64_t l = 0; l < b; ++l) K(i * b + l, j * b + l) = A(i, j);
    const DenseMatrix explicit_result = testutil::naive_product(K, DenseMatrix(v));
    EXPECT_LT(max_abs(Vector(kron_apply(A, v, b) - Vector(explicit_result.col(0)))), 1e-12);
}

TEST(Plan, CeilingArithmetic) {
    const auto p = plan_split(10, SplitScheme::Row, 3);
    EXPECT_EQ(p.block_size, 4);
    EXPECT_EQ(p.pad, 2);
    EXPECT_EQ(p.padded_length(), 12);
    const auto exact = plan_split(12, SplitScheme::Column, 4);
    EXPECT_EQ(exact.pad, 0);
    const auto s = plan_split(10, SplitScheme::Summa, 4);
    EXPECT_EQ(s.side, 2);
    EXPECT_EQ(s.block_size, 5);
    EXPECT_THROW(plan_split(10, SplitScheme::Summa, 5), ConfigError);
    EXPECT_THROW(plan_split(10, SplitScheme::Row, 0), Error);
    EXPECT_EQ(parse_split_scheme("summa"), SplitScheme::Summa);
}

TEST(Storage, Example1Assignment) {
    const auto pattern = SparsityPattern::from_mask(3, 2, {1, 0, 0, 1, 1, 1});
    Rng rng = make_rng(3);
    const DenseMatrix D = testutil::sparse_dense(4, 4, 0.6, rng);
    const Vector y = testutil::gaussian_vector(4, rng);
    const auto plan = plan_split(4, SplitScheme::Row, 2);
    const auto stores = assign_storage(SparseMatrix::from_dense(D), y, plan, pattern);
    ASSERT_EQ(stores.size(), 3u);
    EXPECT_TRUE(stores[0].holds(0));
    EXPECT_FALSE(stores[0].holds(1));
    EXPECT_TRUE(stores[1].holds(1));
    EXPECT_TRUE(stores[2].holds(0));
    EXPECT_TRUE(stores[2].holds(1));
    EXPECT_EQ(stores[2].block(1).to_dense(), D.bottomRows(2));
    EXPECT_EQ(stores[2].y_part(0), y.head(2));
}

TEST(Storage, RowBlocksReassembleAndPad) {
    Rng rng = make_rng(4);
    const DenseMatrix D = testutil::sparse_dense(10, 10, 0.3, rng);
    const auto plan = plan_split(10, SplitScheme::Row, 3);
    const auto blocks = split_rows(SparseMatrix::from_dense(D), plan);
    ASSERT_EQ(blocks.size(), 3u);
    DenseMatrix stacked(12, 10);
    for (int j = 0; j < 3; ++j) stacked.middleRows(4 * j, 4) = blocks[j].to_dense();
    EXPECT_EQ(stacked.topRows(10), D);
    EXPECT_EQ(max_abs(DenseMatrix(stacked.bottomRows(2))), 0.0);

    const auto cplan = plan_split(10, SplitScheme::Column, 3);
    const auto cols = split_cols(SparseMatrix::from_dense(D), cplan);
    DenseMatrix joined(10, 12);
    for (int j = 0; j < 3; ++j) joined.middleCols(4 * j, 4) = cols[j].to_dense();
    EXPECT_EQ(joined.leftCols(10), D);
}

TEST(Storage, MaterializedNonzerosScaleWithDegree) {
    Rng rng = make_rng(5);
    const DenseMatrix D = testutil::sparse_dense(40, 40, 0.2, rng);
    const auto B = SparseMatrix::from_dense(D);
    const auto pattern = make_combined_cyclic(10, 3, rng);
    const auto plan = plan_split(40, SplitScheme::Column, 10);
    const auto stores = assign_storage(B, std::nullopt, plan, pattern);
    // each column of each cyclic half has d ones, so each block is stored 2d times
    EXPECT_EQ(stored_nonzeros(stores), 2 * 3 * B.nnz());
    const auto shared = assign_storage(B, std::nullopt, plan, pattern, StorageMode::Shared);
    EXPECT_EQ(stored_nonzeros(shared), stored_nonzeros(stores));
    const auto j = shared[0].blocks[0].first;
    for (const auto& w : shared)
        for (const auto& [jj, ptr] : w.blocks)
            if (jj == j) { EXPECT_EQ(ptr.get(), shared[0].blocks[0].second.get()); }
    for (const auto& w : stores)
        for (const auto& [jj, ptr] : w.blocks)
            if (jj == j && w.worker_id != stores[0].worker_id) { EXPECT_NE(ptr.get(), stores[0].blocks[0].second.get()); }
}

TEST(Storage, SummaGroupsHoldTheirColumnStrip) {
    Rng rng = make_rng(6);
    const DenseMatrix D = testutil::sparse_dense(6, 6, 0.5, rng);
    const auto plan = plan_split(6, SplitScheme::Summa, 4);
    const std::vector<SparsityPattern> groups = {make_identity_pattern(2), make_identity_pattern(2)};
    const auto stores = assign_summa_storage(SparseMatrix::from_dense(D), plan, groups);
    ASSERT_EQ(stores.size(), 2u);
    for (int g = 0; g < 2; ++g)
        for (int i = 0; i < 2; ++i) {
            const auto& w = stores[g][i];
            ASSERT_TRUE(w.holds(i));
            EXPECT_EQ(w.block(i).to_dense(), D.block(3 * i, 3 * g, 3, 3));
        }
}

// Running on a padded system and truncating equals running on the explicitly extended one.
TEST(Padding, NeutralForPowerIteration) {
    Rng rng = make_rng(7);
    DenseMatrix D = testutil::sparse_dense(10, 10, 0.4, rng);
    D *= 0.5 / svd_small(D).singular_values[0];
    LinearSystem sys;
    sys.B = SparseMatrix::from_dense(D);
    sys.y = testutil::gaussian_vector(10, rng);
    sys.x0 = testutil::gaussian_vector(10, rng);
    sys.x_star = (DenseMatrix::Identity(10, 10) - D).partialPivLu().solve(sys.y);

    LinearSystem ext;
    DenseMatrix De = DenseMatrix::Zero(12, 12);
    De.topLeftCorner(10, 10) = D;
    ext.B = SparseMatrix::from_dense(De);
    ext.y = pad_vector(sys.y, 12);
    ext.x0 = pad_vector(sys.x0, 12);
    ext.x_star = pad_vector(sys.x_star, 12);

    RowPowerEngine a(sys, BlockCombiner(make_identity_pattern(3), DecodeRule::Availability));
    RowPowerEngine b(ext, BlockCombiner(make_identity_pattern(3), DecodeRule::Availability));
    const std::vector<std::int64_t> survivors = {0, 2};
    for (std::uint64_t t = 1; t <= 6; ++t) {
        Rng ga = make_rng(t), gb = make_rng(t);
        a.step(t, survivors, ga);
        b.step(t, survivors, gb);
        EXPECT_LT(max_abs(Vector(a.x() - b.x().head(10))), 1e-14);
        EXPECT_EQ(max_abs(Vector(b.x().tail(2))), 0.0);
    }
}
