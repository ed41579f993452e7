#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "codediter/error.hpp"
#include "codediter/sim/cost.hpp"
#include "codediter/sim/erasure.hpp"
#include "codediter/sim/experiment.hpp"
#include "codediter/sim/trace.hpp"

using namespace codediter;

TEST(Erasure, FixedFractionErasesExactCount) {
    Rng rng = make_rng(1);
    const ErasureModel m{ErasureKind::FixedFraction, 0.5};
    for (int i = 0; i < 200; ++i) {
        const auto s = draw_survivors(20, m, rng);
        ASSERT_EQ(s.size(), 10u);
        EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
        EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
        EXPECT_GE(s.front(), 0);
        EXPECT_LT(s.back(), 20);
    }
    EXPECT_EQ(fixed_erasure_count(96, 0.5), 48);
    EXPECT_EQ(fixed_erasure_count(10, 0.25), 3);  // 2.5 rounds away from zero
    EXPECT_TRUE(draw_survivors(5, {ErasureKind::FixedFraction, 1.0}, rng).empty());
    EXPECT_EQ(draw_survivors(5, {ErasureKind::FixedFraction, 0.0}, rng).size(), 5u);
    EXPECT_THROW(draw_survivors(5, {ErasureKind::FixedFraction, 1.5}, rng), ConfigError);
}

TEST(Erasure, FixedFractionSubsetsAreUniform) {
    Rng rng = make_rng(2);
    const ErasureModel m{ErasureKind::FixedFraction, 0.5};
    std::map<std::vector<std::int64_t>, int> counts;
    const int n = 40000;
    for (int i = 0; i < n; ++i) ++counts[draw_survivors(6, m, rng)];
    ASSERT_EQ(counts.size(), 20u);  // C(6, 3)
    const double p = 1.0 / 20.0, se = std::sqrt(p * (1 - p) / n);
    for (const auto& [subset, c] : counts) EXPECT_NEAR(c / double(n), p, 5 * se);
}

TEST(Erasure, BernoulliRate) {
    Rng rng = make_rng(3);
    const ErasureModel m{ErasureKind::Bernoulli, 0.3};
    double total = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) total += double(draw_survivors(10, m, rng).size());
    const double se = std::sqrt(10 * 0.3 * 0.7 / n);
    EXPECT_NEAR(total / n, 7.0, 5 * se);
}

TEST(Cost, RowSplittingFigures) {
    const std::int64_t N = 1000;
    EXPECT_DOUBLE_EQ(comm_cost_per_iter(Scheme::Coded, Workload::PowerRow, N, 10, 20, 2), 1.1 * N);
    EXPECT_DOUBLE_EQ(comm_cost_per_iter(Scheme::Uncoded, Workload::PowerRow, N, 10, 20, 2), 1.05 * N);
    EXPECT_DOUBLE_EQ(comm_cost_per_iter(Scheme::ReplicationComm, Workload::PowerRow, N, 10, 20, 2), 1.1 * N);
    EXPECT_DOUBLE_EQ(comm_cost_per_iter(Scheme::ReplicationStorage, Workload::PowerRow, N, 10, 20, 3), 1.3 * N);
}

TEST(Cost, ColumnAndEigenFigures) {
    const std::int64_t N = 960, r = 2;
    EXPECT_NEAR(comm_cost_per_iter(Scheme::Coded, Workload::PowerColumn, N, 48, 96, 2), N * (1 + 2.0 / 48), 1e-9);
    EXPECT_NEAR(comm_cost_per_iter(Scheme::Coded, Workload::Eigen, N, 48, 96, 2, r) / (N * r), 1.04, 0.005);
    EXPECT_NEAR(comm_cost_per_iter(Scheme::Coded, Workload::Eigen, N, 48, 96, 3, r) / (N * r), 1.06, 0.005);
    EXPECT_NEAR(comm_cost_per_iter(Scheme::Uncoded, Workload::Eigen, N, 48, 96, 3, r) / (N * r), 1.01, 0.005);
    EXPECT_NEAR(comm_cost_per_iter(Scheme::ReplicationComm, Workload::Eigen, N, 48, 96, 3, r) / (N * r), 1.02, 0.005);
    EXPECT_NEAR(comm_cost_per_iter(Scheme::ReplicationStorage, Workload::Eigen, N, 48, 96, 3, r) / (N * r), 3.06,
                0.005);
}

TEST(Cost, SvdAndGradientFigures) {
    EXPECT_DOUBLE_EQ(comm_cost_per_iter(Scheme::Coded, Workload::Svd, 1000, 50, 100, 3, 5), 2.0 * 1000 * 5);
    EXPECT_DOUBLE_EQ(comm_cost_per_iter(Scheme::ReplicationStorage, Workload::Svd, 1000, 50, 100, 3, 5),
                     2.0 * 4 * 1000 * 5);
    for (Scheme s : {Scheme::Noiseless, Scheme::Uncoded, Scheme::ReplicationComm, Scheme::Coded,
                     Scheme::ApproxGradientCoding})
        EXPECT_DOUBLE_EQ(comm_cost_per_iter(s, Workload::Gradient, 1000, 50, 100, 2), 2000.0);
    EXPECT_DOUBLE_EQ(comm_cost_per_iter(Scheme::ReplicationStorage, Workload::Gradient, 1000, 50, 100, 2), 6000.0);
    EXPECT_THROW(comm_cost_per_iter(Scheme::ApproxGradientCoding, Workload::PowerRow, 10, 2, 4, 2), ConfigError);
    EXPECT_THROW(comm_cost_per_iter(Scheme::Coded, Workload::PowerRow, 0, 2, 4, 2), ConfigError);
}

TEST(Trace, AverageMeanAndSampleStd) {
    MetricsTrace a, b;
    a.records = {{0, 0.0, 1.0, 0.0, 10, 0.1, false}, {1, 5.0, 2.0, 0.0, 10, 0.3, false}};
    b.records = {{0, 0.0, 3.0, 0.0, 12, 0.3, false}, {1, 5.0, 2.0, 0.0, 8, 0.1, false}};
    const auto m = average_traces({a, b});
    ASSERT_EQ(m.size(), 2u);
    EXPECT_DOUBLE_EQ(m.records[0].error, 2.0);
    EXPECT_DOUBLE_EQ(m.records[0].error_std, std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(m.records[1].error_std, 0.0);
    EXPECT_DOUBLE_EQ(m.records[0].survivors, 11.0);
    EXPECT_DOUBLE_EQ(m.records[1].delta, 0.2);
    EXPECT_DOUBLE_EQ(m.records[1].comm_cost, 5.0);
}

TEST(Trace, CsvRoundTripsValues) {
    MetricsTrace t;
    t.records = {{0, 0.0, 0.1, 0.0, 1, 0.0, false}, {1, 1.1, 1.0 / 3.0, 1e-300, 1, 0.25, false}};
    const auto csv = trace_csv(t);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "iteration,comm_cost,error_mean,error_std,delta_mean");
    std::getline(in, line);
    EXPECT_EQ(line, "0,0,0.1,0,0");
    std::getline(in, line);
    std::vector<double> vals;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
        double v = 0;
        std::from_chars(cell.data(), cell.data() + cell.size(), v);
        vals.push_back(v);
    }
    ASSERT_EQ(vals.size(), 5u);
    EXPECT_EQ(vals[2], 1.0 / 3.0);
    EXPECT_EQ(vals[3], 1e-300);
    EXPECT_EQ(format_double(0.1), "0.1");
}

namespace {

ExperimentConfig small_pagerank(Scheme scheme) {
    ExperimentConfig cfg;
    cfg.problem.nodes = 200;
    cfg.problem.mean_degree = 8;
    cfg.engine.scheme = scheme;
    cfg.engine.P = 20;
    cfg.engine.k = 10;
    cfg.engine.d = 2;
    cfg.iterations = 6;
    cfg.runs = 6;
    cfg.seed = 99;
    return cfg;
}

}  // namespace

TEST(Experiment, TraceShapeAndCostSchedule) {
    for (Scheme s : {Scheme::Noiseless, Scheme::Uncoded, Scheme::ReplicationComm, Scheme::ReplicationStorage,
                     Scheme::Coded}) {
        auto cfg = small_pagerank(s);
        const auto problem = build_problem(cfg.problem, cfg.seed);
        const double per = experiment_cost(cfg.engine, problem);
        const auto traces = run_experiment(cfg, problem);
        ASSERT_EQ(traces.size(), 6u);
        for (const auto& tr : traces) {
            ASSERT_EQ(tr.size(), 7u);
            EXPECT_EQ(tr.records[0].comm_cost, 0.0);
            for (std::size_t t = 0; t < tr.size(); ++t) {
                EXPECT_EQ(tr.records[t].iteration, std::int64_t(t));
                EXPECT_DOUBLE_EQ(tr.records[t].comm_cost, double(t) * per);
                if (t > 0) { EXPECT_GT(tr.records[t].comm_cost, tr.records[t - 1].comm_cost); }
            }
        }
    }
}

TEST(Experiment, NoiselessKeepsEveryWorker) {
    auto cfg = small_pagerank(Scheme::Noiseless);
    for (const auto& tr : run_experiment(cfg))
        for (std::size_t t = 1; t < tr.size(); ++t) {
            EXPECT_EQ(tr.records[t].survivors, 20.0);
            EXPECT_EQ(tr.records[t].delta, 0.0);
        }
}

TEST(Experiment, FixedErasureSurvivorCount) {
    auto cfg = small_pagerank(Scheme::Coded);
    for (const auto& tr : run_experiment(cfg))
        for (std::size_t t = 1; t < tr.size(); ++t) EXPECT_EQ(tr.records[t].survivors, 10.0);
}

TEST(Experiment, ThreadCountDoesNotChangeResults) {
    auto cfg = small_pagerank(Scheme::Coded);
    cfg.threads = 1;
    const auto one = run_experiment(cfg);
    cfg.threads = 4;
    const auto four = run_experiment(cfg);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t r = 0; r < one.size(); ++r) EXPECT_EQ(trace_csv(one[r]), trace_csv(four[r]));
    EXPECT_EQ(trace_csv(average_traces(one)), trace_csv(average_traces(four)));
}

TEST(Experiment, RunsDifferAndSeedMatters) {
    auto cfg = small_pagerank(Scheme::Coded);
    const auto a = run_experiment(cfg);
    EXPECT_NE(trace_csv(a[0]), trace_csv(a[1]));
    cfg.seed = 100;
    EXPECT_NE(trace_csv(run_experiment(cfg)[0]), trace_csv(a[0]));
}

TEST(Experiment, RejectsIncompatibleConfigs) {
    auto cfg = small_pagerank(Scheme::ApproxGradientCoding);
    EXPECT_THROW(run_experiment(cfg), ConfigError);
    cfg = small_pagerank(Scheme::Coded);
    cfg.engine.d = 11;
    EXPECT_THROW(run_experiment(cfg), ConfigError);
    cfg = small_pagerank(Scheme::Coded);
    cfg.engine.split = SplitScheme::Summa;
    cfg.engine.k = 9;
    cfg.engine.P = 18;
    cfg.engine.d = 4;  // d must not exceed sqrt(k)
    EXPECT_THROW(run_experiment(cfg), ConfigError);
}
