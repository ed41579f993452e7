#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "codediter/algorithms/combiner.hpp"
#include "codediter/algorithms/engine.hpp"
#include "codediter/algorithms/scheme.hpp"
#include "codediter/algorithms/subspace.hpp"
#include "codediter/codes/pattern.hpp"
#include "codediter/problems/instance.hpp"
#include "codediter/splitting/plan.hpp"

namespace codediter {

enum class PatternKind { CombinedCyclic, RandomRegular };

struct EngineConfig {
    Scheme scheme = Scheme::Coded;
    SplitScheme split = SplitScheme::Row;  ///< power iteration only; eigen is column, svd/gd are row
    std::int64_t P = 20;
    std::int64_t k = 10;
    std::int64_t d = 2;
    PatternKind pattern_kind = PatternKind::CombinedCyclic;
    std::optional<SparsityPattern> pattern;  ///< fixed coded pattern instead of a per-run draw
    bool accelerate = false;
    AccelRoute route = AccelRoute::Svd;
    double step_size = 0.5;
    bool step_relative = true;  ///< gradient step is step_size / L
    double rank_tol = kDefaultRankTol;
    bool fast_path = true;
    StorageMode storage = StorageMode::Materialized;
};

Workload workload_for(ProblemKind kind, SplitScheme split);

/// The coded placement (P x k, degree d) a scheme uses, drawn from rng unless fixed.
SparsityPattern coded_pattern(std::int64_t P, std::int64_t k, std::int64_t d, PatternKind kind, Rng& rng);

/// Placement and decode rule a scheme uses for a P-worker, k-split layout.
BlockCombiner scheme_combiner(Scheme scheme, Workload workload, std::int64_t P, std::int64_t k, std::int64_t d,
                              PatternKind kind, const std::optional<SparsityPattern>& fixed, Rng& pattern_rng,
                              double rank_tol = kDefaultRankTol);

/// Builds the engine for one run. Pattern draws and the initial iterate come
/// from (run_seed, "pattern") and (run_seed, "init").
std::unique_ptr<Engine> make_engine(const EngineConfig& cfg, const ProblemInstance& problem, std::uint64_t run_seed);

/// Validates scheme/workload/code-parameter compatibility; throws ConfigError naming the problem.
void validate_engine_config(const EngineConfig& cfg, ProblemKind kind);

}  // namespace codediter
