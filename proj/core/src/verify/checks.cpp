#include "codediter/verify/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "codediter/algorithms/power.hpp"
#include "codediter/algorithms/subspace.hpp"
#include "codediter/codes/delta.hpp"
#include "codediter/codes/generator.hpp"
#include "codediter/error.hpp"
#include "codediter/kernel/dense.hpp"
#include "codediter/parallel.hpp"
#include "codediter/problems/graphs.hpp"
#include "codediter/problems/pagerank.hpp"
#include "codediter/splitting/plan.hpp"

namespace codediter {

namespace {

// Fixed chunking so floating-point sums do not depend on the thread count.
constexpr std::int64_t kChunks = 256;

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
    MeanSe out;
    if (v.empty()) return out;
    const double n = static_cast<double>(v.size());
    out.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - out.mean) * (x - out.mean);
        out.se = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

double mean_of(const std::vector<double>& v) { return mean_se(v).mean; }

std::string iter_name(const char* stem, std::int64_t t) { return std::string(stem) + "_iter" + std::to_string(t); }

LinearSystem contraction_system(DenseMatrix B, Rng& rng) {
    const auto N = B.rows();
    LinearSystem sys;
    sys.y = Vector(N);
    sys.x0 = Vector(N);
    for (std::int64_t i = 0; i < N; ++i) sys.y[i] = standard_normal(rng);
    for (std::int64_t i = 0; i < N; ++i) sys.x0[i] = standard_normal(rng);
    const DenseMatrix I = DenseMatrix::Identity(N, N);
    sys.x_star = (I - B).partialPivLu().solve(sys.y);
    sys.B = SparseMatrix::from_dense(B);
    return sys;
}

DenseMatrix gaussian_matrix(std::int64_t rows, std::int64_t cols, Rng& rng) {
    DenseMatrix M(rows, cols);
    for (std::int64_t i = 0; i < rows; ++i)
        for (std::int64_t j = 0; j < cols; ++j) M(i, j) = standard_normal(rng);
    return M;
}

std::vector<std::int64_t> survivors_at(std::int64_t P, const ErasureModel& erasure, std::uint64_t run_seed,
                                       std::uint64_t t) {
    Rng erase_rng = make_rng(run_seed, t, "erase");
    return draw_survivors(P, erasure, erase_rng);
}

}  // namespace

VerificationReport check_lemma1(const SparsityPattern& pattern, const Lemma1Config& cfg) {
    if (cfg.samples < 1) throw ConfigError("lemma1 needs at least one sample");
    const auto k = pattern.splits();
    const auto P = pattern.workers();
    const std::int64_t chunks = std::min(kChunks, cfg.samples);

    struct Partial {
        DenseMatrix sum;
        double conjugation = 0.0;
    };
    std::vector<Partial> parts(static_cast<std::size_t>(chunks));
    parallel_for(parts.size(), cfg.threads, [&](std::size_t c) {
        const auto begin = static_cast<std::int64_t>(c) * cfg.samples / chunks;
        const auto end = static_cast<std::int64_t>(c + 1) * cfg.samples / chunks;
        Partial part{DenseMatrix::Zero(k, k), 0.0};
        for (auto s = begin; s < end; ++s) {
            const auto us = static_cast<std::uint64_t>(s);
            Rng gen_rng = make_rng(cfg.seed, us, "gen");
            Rng erase_rng = make_rng(cfg.seed, us, "erase");
            const auto survivors = draw_survivors(P, cfg.erasure, erase_rng);
            const auto G = sample_generator(pattern, us, gen_rng);
            const auto Gs = restrict_rows(G, survivors);
            const DenseMatrix proj = decode_basis(Gs).projector();
            part.sum += proj;

            Rng conj_rng = make_rng(cfg.seed, us, "conjugate");
            const DenseMatrix Q = random_orthonormal(k, k, conj_rng);
            const DenseMatrix rotated = decode_basis(DenseMatrix{Gs.rows * Q}).projector();
            const DenseMatrix expected = Q.transpose() * proj * Q;
            part.conjugation = std::max(part.conjugation, (rotated - expected).cwiseAbs().maxCoeff());
        }
        parts[c] = std::move(part);
    });

    DenseMatrix mean = DenseMatrix::Zero(k, k);
    double conjugation = 0.0;
    for (const auto& p : parts) {
        mean += p.sum;
        conjugation = std::max(conjugation, p.conjugation);
    }
    mean /= static_cast<double>(cfg.samples);

    double off = 0.0;
    for (std::int64_t i = 0; i < k; ++i)
        for (std::int64_t j = 0; j < k; ++j)
            if (i != j) off = std::max(off, std::abs(mean(i, j)));
    const Vector diag = mean.diagonal();
    const double spread = diag.maxCoeff() - diag.minCoeff();
    const auto delta = estimate_delta(pattern, cfg.erasure, cfg.delta_samples, derive_seed(cfg.seed, 0, "delta"),
                                      cfg.threads);
    const double bias = std::abs(diag.mean() - (1.0 - delta.mean));

    VerificationReport report;
    report.check = "lemma1";
    report.samples = cfg.samples;
    report.seed = cfg.seed;
    report.add("max_off_diagonal", off, cfg.max_off_diagonal, Comparison::Less);
    report.add("diagonal_spread", spread, cfg.max_diagonal_spread, Comparison::Less);
    report.add("diagonal_bias", bias, cfg.max_diagonal_bias, Comparison::Less);
    report.add("conjugation_error", conjugation, cfg.max_conjugation_error, Comparison::Less);
    report.info.push_back({"diagonal_mean", diag.mean()});
    report.info.push_back({"delta_hat", delta.mean});
    if (cfg.samples < kLemma1MinSamples)
        report.warnings.push_back("insufficient_samples: " + std::to_string(cfg.samples) + " < " +
                                  std::to_string(kLemma1MinSamples));
    return report;
}

VerificationReport check_theorem1(const Theorem1Config& cfg) {
    if (cfg.runs < 2 || cfg.iterations < 1) throw ConfigError("theorem1 needs runs >= 2 and iterations >= 1");
    Rng problem_rng = make_rng(cfg.seed, 0, "problem");
    DenseMatrix Bd = gaussian_matrix(cfg.k, cfg.k, problem_rng);
    Bd *= cfg.spectral_norm / svd_small(Bd).singular_values[0];
    const LinearSystem sys = contraction_system(Bd, problem_rng);
    Rng pattern_rng = make_rng(cfg.seed, 0, "pattern");
    const SparsityPattern pattern = cfg.P == 2 * cfg.k ? make_combined_cyclic(cfg.k, cfg.d, pattern_rng)
                                                       : make_random_regular(cfg.P, cfg.k, cfg.d, pattern_rng);
    const ErasureModel erasure{ErasureKind::FixedFraction, cfg.epsilon};
    const auto T = cfg.iterations;

    // per run, per t: |e_{t+1}|^2, |B e_t|^2, |e_t|^2
    const auto R = static_cast<std::size_t>(cfg.runs);
    std::vector<std::vector<double>> next(T, std::vector<double>(R)), be(T, std::vector<double>(R)),
        cur(T, std::vector<double>(R));
    parallel_for(R, cfg.threads, [&](std::size_t r) {
        const auto run_seed = derive_seed(cfg.seed, r);
        RowPowerEngine engine(sys, BlockCombiner(pattern, DecodeRule::Substitute));
        Vector e = engine.x() - sys.x_star;
        for (std::int64_t t = 0; t < T; ++t) {
            const auto ut = static_cast<std::uint64_t>(t + 1);
            Rng gen_rng = make_rng(run_seed, ut, "gen");
            engine.step(ut, survivors_at(cfg.P, erasure, run_seed, ut), gen_rng);
            const Vector e_next = engine.x() - sys.x_star;
            cur[t][r] = e.squaredNorm();
            be[t][r] = spmv(sys.B, e).squaredNorm();
            next[t][r] = e_next.squaredNorm();
            e = e_next;
        }
    });

    const auto delta = estimate_delta(pattern, erasure, cfg.delta_samples, derive_seed(cfg.seed, 0, "delta"),
                                      cfg.threads);
    VerificationReport report;
    report.check = "theorem1";
    report.samples = cfg.runs;
    report.seed = cfg.seed;
    report.info.push_back({"delta_hat", delta.mean});
    for (std::int64_t t = 0; t < T; ++t) {
        std::vector<double> gap(R), lever(R);
        for (std::size_t r = 0; r < R; ++r) {
            gap[r] = next[t][r] - (1.0 - delta.mean) * be[t][r] - delta.mean * cur[t][r];
            lever[r] = cur[t][r] - be[t][r];
        }
        const auto g = mean_se(gap);
        const double slack =
            cfg.se_multiplier * std::hypot(g.se, delta.std_error * mean_of(lever));
        report.add(iter_name("abs_gap", t + 1), std::abs(g.mean), slack);
    }
    return report;
}

double column_block_norm(const SparseMatrix& B, std::int64_t k) {
    const auto plan = plan_split(B.cols(), SplitScheme::Column, k);
    double worst = 0.0;
    for (const auto& block : split_cols(B, plan)) worst = std::max(worst, spectral_norm(block));
    return std::sqrt(static_cast<double>(k)) * worst;
}

VerificationReport check_theorem2(const Theorem2Config& cfg) {
    if (cfg.runs < 2 || cfg.iterations < 1) throw ConfigError("theorem2 needs runs >= 2 and iterations >= 1");
    Rng problem_rng = make_rng(cfg.seed, 0, "problem");
    DenseMatrix Bd = gaussian_matrix(cfg.N, cfg.N, problem_rng);
    Bd *= cfg.col_norm / column_block_norm(SparseMatrix::from_dense(Bd), cfg.k);
    LinearSystem sys = contraction_system(Bd, problem_rng);
    // the bound assumes x_t = sum of the cached blocks + y, so start from the empty cache's x
    sys.x0 = sys.y;
    const double bcol = column_block_norm(sys.B, cfg.k);
    Rng pattern_rng = make_rng(cfg.seed, 0, "pattern");
    const SparsityPattern pattern = cfg.P == 2 * cfg.k ? make_combined_cyclic(cfg.k, cfg.d, pattern_rng)
                                                       : make_random_regular(cfg.P, cfg.k, cfg.d, pattern_rng);
    const ErasureModel erasure{ErasureKind::FixedFraction, cfg.epsilon};
    const auto T = cfg.iterations;

    const auto R = static_cast<std::size_t>(cfg.runs);
    std::vector<std::vector<double>> next(T, std::vector<double>(R)), cur(T, std::vector<double>(R));
    parallel_for(R, cfg.threads, [&](std::size_t r) {
        const auto run_seed = derive_seed(cfg.seed, r);
        ColumnPowerEngine engine(sys, BlockCombiner(pattern, DecodeRule::Substitute));
        const DenseMatrix targets = engine.block_targets();
        double e = (engine.block_estimates() - targets).squaredNorm();
        for (std::int64_t t = 0; t < T; ++t) {
            const auto ut = static_cast<std::uint64_t>(t + 1);
            Rng gen_rng = make_rng(run_seed, ut, "gen");
            engine.step(ut, survivors_at(cfg.P, erasure, run_seed, ut), gen_rng);
            const double e_next = (engine.block_estimates() - targets).squaredNorm();
            cur[t][r] = e;
            next[t][r] = e_next;
            e = e_next;
        }
    });

    const auto delta = estimate_delta(pattern, erasure, cfg.delta_samples, derive_seed(cfg.seed, 0, "delta"),
                                      cfg.threads);
    const double b2 = bcol * bcol;
    const double factor = (1.0 - delta.mean) * b2 + delta.mean;
    VerificationReport report;
    report.check = "theorem2";
    report.samples = cfg.runs;
    report.seed = cfg.seed;
    report.info.push_back({"delta_hat", delta.mean});
    report.info.push_back({"col_norm", bcol});
    report.info.push_back({"rate_factor", factor});
    for (std::int64_t t = 0; t < T; ++t) {
        std::vector<double> excess(R);
        for (std::size_t r = 0; r < R; ++r) excess[r] = next[t][r] - factor * cur[t][r];
        const auto x = mean_se(excess);
        const double slack = cfg.se_multiplier * std::hypot(x.se, delta.std_error * (1.0 - b2) * mean_of(cur[t]));
        report.add(iter_name("excess", t + 1), x.mean, slack);
    }
    return report;
}

double lemma2_bound(std::int64_t N, double p, double epsilon) {
    const double n = static_cast<double>(N);
    return 3.0 * n * std::exp(-epsilon * epsilon * n * p / 8.0);
}

double lemma3_bound(std::int64_t N, double p, double epsilon, std::int64_t k) {
    const double n = static_cast<double>(N);
    const double kk = static_cast<double>(k);
    return lemma2_bound(N, p, epsilon) + 3.0 * kk * n * std::exp(-epsilon * epsilon * n * p / (8.0 * kk));
}

VerificationReport check_norm_lemmas(const NormLemmaConfig& cfg) {
    if (cfg.graphs < 1) throw ConfigError("norm lemmas need at least one graph");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ConfigError("norm lemmas need epsilon in (0, 1)");
    constexpr int kMaxResamples = 1000;
    const double ratio = (1.0 + cfg.epsilon) / (1.0 - cfg.epsilon);
    const double limit2 = std::sqrt(ratio);  // rho(A) = 1 for a column-stochastic A
    const double limit3 = std::sqrt((1.0 + static_cast<double>(cfg.k) / static_cast<double>(cfg.N)) * ratio);

    const auto G = static_cast<std::size_t>(cfg.graphs);
    std::vector<double> norm2(G), normcol(G);
    std::vector<int> resamples(G);
    parallel_for(G, cfg.threads, [&](std::size_t g) {
        Rng rng = make_rng(cfg.seed, g, "graph");
        for (int attempt = 0;; ++attempt) {
            if (attempt == kMaxResamples)
                throw NumericError("norm lemmas: could not sample a graph without isolated nodes");
            const SparseMatrix adj = gen_er(cfg.N, cfg.p, rng);
            const auto deg = degrees(adj);
            if (std::find(deg.begin(), deg.end(), 0) != deg.end()) continue;
            const SparseMatrix A = normalize_columns(adj);
            norm2[g] = spectral_norm(A);
            normcol[g] = column_block_norm(A, cfg.k);
            resamples[g] = attempt;
            break;
        }
    });

    auto frequency = [&](const std::vector<double>& v, double limit) {
        const auto hits = std::count_if(v.begin(), v.end(), [&](double x) { return x > limit; });
        return static_cast<double>(hits) / static_cast<double>(v.size());
    };
    auto threshold = [&](double bound, double f) {
        const double se = std::sqrt(f * (1.0 - f) / static_cast<double>(G));
        return (bound > 1.0 ? cfg.vacuous_bound_level : bound) + cfg.se_multiplier * se;
    };
    const double b2 = lemma2_bound(cfg.N, cfg.p, cfg.epsilon);
    const double b3 = lemma3_bound(cfg.N, cfg.p, cfg.epsilon, cfg.k);
    const double f2 = frequency(norm2, limit2);
    const double f3 = frequency(normcol, limit3);

    VerificationReport report;
    report.check = "norm_lemmas";
    report.samples = cfg.graphs;
    report.seed = cfg.seed;
    report.add("lemma2_violation_rate", f2, threshold(b2, f2));
    report.add("lemma3_violation_rate", f3, threshold(b3, f3));
    report.info.push_back({"lemma2_bound", b2});
    report.info.push_back({"lemma3_bound", b3});
    report.info.push_back({"lemma2_limit", limit2});
    report.info.push_back({"lemma3_limit", limit3});
    report.info.push_back({"max_norm2", *std::max_element(norm2.begin(), norm2.end())});
    report.info.push_back({"max_col_norm", *std::max_element(normcol.begin(), normcol.end())});
    report.info.push_back({"resampled_graphs",
                           static_cast<double>(std::count_if(resamples.begin(), resamples.end(),
                                                             [](int a) { return a > 0; }))});
    if (b2 > 1.0 || b3 > 1.0)
        report.warnings.push_back("analytic bound exceeds 1; using " + std::to_string(cfg.vacuous_bound_level) +
                                  " instead");
    return report;
}

}  // namespace codediter
