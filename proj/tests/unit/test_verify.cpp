#include <gtest/gtest.h>

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

#include "codediter/error.hpp"
#include "codediter/splitting/plan.hpp"
#include "codediter/verify/checks.hpp"
#include "codediter/verify/report.hpp"
#include "test_util.hpp"

using namespace codediter;

TEST(Report, PassRules) {
    VerificationReport r;
    EXPECT_FALSE(r.pass());
    r.add("a", 1.0, 1.0);
    EXPECT_TRUE(r.pass());
    r.add("b", 1.0, 1.0, Comparison::Less);
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(r.statistic("b").pass());
    EXPECT_TRUE(r.statistic("a").pass());
    EXPECT_FALSE((Statistic{"nan", std::numeric_limits<double>::quiet_NaN(), 1.0}).pass());
    EXPECT_THROW(r.statistic("missing"), Error);
}

TEST(Report, TextAndCsv) {
    VerificationReport r;
    r.check = "demo";
    r.add("gap", 0.5, 1.0);
    r.add("err", 2.0, 1.0, Comparison::Less);
    r.info.push_back({"delta_hat", 0.25});
    r.warnings.push_back("insufficient_samples: 10 < 10000");
    std::ostringstream text;
    write_report_text(text, r);
    EXPECT_NE(text.str().find("ok   gap"), std::string::npos);
    EXPECT_NE(text.str().find("FAIL"), std::string::npos);
    EXPECT_NE(text.str().find("delta_hat"), std::string::npos);
    EXPECT_NE(text.str().find("insufficient_samples"), std::string::npos);
    std::ostringstream csv;
    write_report_csv_rows(csv, r);
    EXPECT_EQ(csv.str(), "demo,gap,0.5,1,true\ndemo,err,2,1,false\n");
    EXPECT_STREQ(kReportCsvHeader, "check,statistic,value,threshold,pass");
}

TEST(Lemma1, CombinedCyclicPasses) {
    Rng rng = make_rng(1);
    Lemma1Config cfg;
    cfg.samples = 20000;
    cfg.delta_samples = 20000;
    cfg.max_off_diagonal = 0.02;
    cfg.max_diagonal_spread = 0.04;
    cfg.max_diagonal_bias = 0.04;
    const auto r = check_lemma1(make_combined_cyclic(6, 2, rng), cfg);
    EXPECT_TRUE(r.pass());
    EXPECT_TRUE(r.warnings.empty());
    EXPECT_LT(r.statistic("conjugation_error").value, 1e-10);
    EXPECT_EQ(r.samples, 20000);
}

// Worker rows 0-2 all hold block 0, so it is recovered far more often than block 1.
TEST(Lemma1, LopsidedPatternFails) {
    Lemma1Config cfg;
    cfg.samples = 20000;
    cfg.delta_samples = 20000;
    const auto pattern = SparsityPattern::from_mask(4, 2, {1, 0, 1, 0, 1, 0, 0, 1});
    const auto r = check_lemma1(pattern, cfg);
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(r.statistic("diagonal_spread").pass());
}

TEST(Lemma1, WarnsOnFewSamples) {
    Rng rng = make_rng(2);
    Lemma1Config cfg;
    cfg.samples = 500;
    cfg.delta_samples = 500;
    const auto r = check_lemma1(make_combined_cyclic(4, 2, rng), cfg);
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_EQ(r.warnings[0].rfind("insufficient_samples", 0), 0u);
}

TEST(Lemma1, SeedReproducible) {
    Rng rng = make_rng(3);
    const auto pattern = make_combined_cyclic(5, 2, rng);
    Lemma1Config cfg;
    cfg.samples = 2000;
    cfg.delta_samples = 2000;
    cfg.threads = 1;
    const auto a = check_lemma1(pattern, cfg);
    cfg.threads = 3;
    const auto b = check_lemma1(pattern, cfg);
    EXPECT_EQ(a.statistic("max_off_diagonal").value, b.statistic("max_off_diagonal").value);
    EXPECT_EQ(a.statistic("diagonal_bias").value, b.statistic("diagonal_bias").value);
}

TEST(Theorem1, RecursionHoldsOnSmallRun) {
    Theorem1Config cfg;
    cfg.k = 6;
    cfg.P = 12;
    cfg.d = 2;
    cfg.runs = 600;
    cfg.iterations = 3;
    cfg.delta_samples = 20000;
    const auto r = check_theorem1(cfg);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.statistics.size(), 3u);
    EXPECT_EQ(r.statistics[0].name, "abs_gap_iter1");
}

TEST(Theorem2, BoundHoldsOnSmallRun) {
    Theorem2Config cfg;
    cfg.runs = 600;
    cfg.iterations = 3;
    cfg.delta_samples = 20000;
    const auto r = check_theorem2(cfg);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.statistics.back().name, "excess_iter3");
}

TEST(Theorem2, ColumnBlockNormMatchesSvdOracle) {
    Rng rng = make_rng(4);
    const DenseMatrix D = testutil::sparse_dense(20, 20, 0.4, rng);
    const auto B = SparseMatrix::from_dense(D);
    double worst = 0;
    for (int j = 0; j < 4; ++j) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(D.middleCols(5 * j, 5)));
        worst = std::max(worst, svd.singularValues()[0]);
    }
    EXPECT_NEAR(column_block_norm(B, 4), 2.0 * worst, 1e-8);
    // ||B||_2 <= ||B||_col
    Eigen::JacobiSVD<Eigen::MatrixXd> full{Eigen::MatrixXd(D)};
    EXPECT_LE(full.singularValues()[0], column_block_norm(B, 4) + 1e-9);
}

TEST(NormLemmas, BoundFormulas) {
    EXPECT_DOUBLE_EQ(lemma2_bound(1000, 0.5, 0.2), 3000.0 * std::exp(-0.04 * 500 / 8));
    EXPECT_DOUBLE_EQ(lemma3_bound(1000, 0.5, 0.2, 10),
                     3000.0 * std::exp(-0.04 * 500 / 8) + 30000.0 * std::exp(-0.04 * 500 / 80));
}

TEST(NormLemmas, SmallDenseGraphsRespectTheLimits) {
    NormLemmaConfig cfg;
    cfg.N = 300;
    cfg.p = 0.2;
    cfg.graphs = 20;
    const auto r = check_norm_lemmas(cfg);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.statistic("lemma2_violation_rate").value, 0.0);
    EXPECT_FALSE(r.warnings.empty());  // the bounds are vacuous at this size
}
