#include "codediter/sim/factory.hpp"

#include <string>

#include "codediter/algorithms/gradient.hpp"
#include "codediter/algorithms/power.hpp"
#include "codediter/error.hpp"

namespace codediter {

Workload workload_for(ProblemKind kind, SplitScheme split) {
    switch (kind) {
        case ProblemKind::PageRank:
            switch (split) {
                case SplitScheme::Row: return Workload::PowerRow;
                case SplitScheme::Column: return Workload::PowerColumn;
                case SplitScheme::Summa: return Workload::PowerSumma;
            }
            break;
        case ProblemKind::Eigen: return Workload::Eigen;
        case ProblemKind::Svd: return Workload::Svd;
        case ProblemKind::Gradient: return Workload::Gradient;
    }
    throw ConfigError("unknown workload");
}

SparsityPattern coded_pattern(std::int64_t P, std::int64_t k, std::int64_t d, PatternKind kind, Rng& rng) {
    if (kind == PatternKind::RandomRegular) return make_random_regular(P, k, d, rng);
    if (P != 2 * k)
        throw ConfigError("combined-cyclic pattern needs P = 2k (got P = " + std::to_string(P) +
                          ", k = " + std::to_string(k) + "); use pattern = random_regular");
    return make_combined_cyclic(k, d, rng);
}

BlockCombiner scheme_combiner(Scheme scheme, Workload workload, std::int64_t P, std::int64_t k, std::int64_t d,
                              PatternKind kind, const std::optional<SparsityPattern>& fixed, Rng& pattern_rng,
                              double rank_tol) {
    auto coded = [&] {
        if (fixed) {
            if (fixed->workers() != P || fixed->splits() != k)
                throw ConfigError("pattern file shape differs from P x k");
            return *fixed;
        }
        return coded_pattern(P, k, d, kind, pattern_rng);
    };
    switch (scheme) {
        case Scheme::Noiseless:
        case Scheme::Uncoded: return BlockCombiner(make_identity_pattern(P), DecodeRule::Availability, rank_tol);
        case Scheme::ReplicationComm:
            if (P % 2 != 0) throw ConfigError("replication needs an even worker count");
            return BlockCombiner(make_replication_pattern(P / 2, 2), DecodeRule::Availability, rank_tol);
        case Scheme::ReplicationStorage: return BlockCombiner(coded(), DecodeRule::Availability, rank_tol);
        case Scheme::Coded: return BlockCombiner(coded(), DecodeRule::Substitute, rank_tol);
        case Scheme::ApproxGradientCoding:
            if (workload != Workload::Gradient)
                throw ConfigError("approx_gradient_coding only applies to gradient descent");
            return BlockCombiner(make_fractional_repetition(P, k), DecodeRule::Availability, rank_tol);
    }
    throw ConfigError("unknown scheme");
}

void validate_engine_config(const EngineConfig& cfg, ProblemKind kind) {
    if (cfg.P < 1 || cfg.k < 1) throw ConfigError("P and k must be positive");
    if (cfg.d < 1 || cfg.d > cfg.k) throw ConfigError("d must lie in [1, k]");
    if (cfg.scheme == Scheme::ApproxGradientCoding && kind != ProblemKind::Gradient)
        throw ConfigError("scheme approx_gradient_coding only applies to problem = gd");
    if (cfg.split != SplitScheme::Row && kind != ProblemKind::PageRank)
        throw ConfigError("split applies to problem = pagerank only");
    if (cfg.split == SplitScheme::Summa) {
        const auto s = exact_sqrt(cfg.k);
        if (cfg.P % s != 0 || cfg.P / s < s)
            throw ConfigError("summa needs P divisible by sqrt(k) with at least sqrt(k) workers per group");
        if (cfg.d > s) throw ConfigError("summa groups use a (P/sqrt(k), sqrt(k)) code, so d must be <= sqrt(k)");
    }
}

std::unique_ptr<Engine> make_engine(const EngineConfig& cfg, const ProblemInstance& problem, std::uint64_t run_seed) {
    validate_engine_config(cfg, problem.kind);
    const Workload workload = workload_for(problem.kind, cfg.split);
    Rng pattern_rng = make_rng(run_seed, 0, "pattern");
    Rng init_rng = make_rng(run_seed, 0, "init");

    if (workload == Workload::PowerSumma) {
        const auto s = exact_sqrt(cfg.k);
        std::vector<BlockCombiner> groups;
        for (std::int64_t g = 0; g < s; ++g)
            groups.push_back(scheme_combiner(cfg.scheme, workload, cfg.P / s, s, cfg.d, cfg.pattern_kind,
                                             cfg.pattern, pattern_rng, cfg.rank_tol));
        return std::make_unique<SummaPowerEngine>(problem.system, cfg.k, std::move(groups), cfg.storage);
    }

    BlockCombiner combiner = scheme_combiner(cfg.scheme, workload, cfg.P, cfg.k, cfg.d, cfg.pattern_kind,
                                             cfg.pattern, pattern_rng, cfg.rank_tol);
    switch (workload) {
        case Workload::PowerRow:
            return std::make_unique<RowPowerEngine>(problem.system, std::move(combiner), cfg.storage);
        case Workload::PowerColumn:
            return std::make_unique<ColumnPowerEngine>(problem.system, std::move(combiner), cfg.fast_path,
                                                       cfg.storage);
        case Workload::Eigen:
        case Workload::Svd: {
            SubspaceOptions opts;
            opts.accelerate = cfg.accelerate;
            opts.route = cfg.route;
            opts.fast_path = cfg.fast_path;
            opts.rank_tol = cfg.rank_tol;
            opts.restart_seed = derive_seed(run_seed, 0, "restart");
            const auto N = problem.reference.rows();
            DenseMatrix X0 = random_orthonormal(N, problem.rank, init_rng);
            return std::make_unique<SubspaceEngine>(
                workload == Workload::Eigen ? SubspaceKind::Eigen : SubspaceKind::Svd, problem.matrix,
                problem.reference, std::move(X0), std::move(combiner), opts);
        }
        case Workload::Gradient: {
            const auto& ls = *problem.least_squares;
            const double step = cfg.step_relative ? cfg.step_size / ls.lipschitz() : cfg.step_size;
            const bool substitute = cfg.scheme == Scheme::Coded;
            return std::make_unique<GradientEngine>(ls.A, ls.y, Vector::Zero(ls.dim()), std::move(combiner), step,
                                                    substitute, cfg.fast_path);
        }
        case Workload::PowerSumma: break;
    }
    throw ConfigError("unsupported workload");
}

}  // namespace codediter
