#pragma once

#include <cstdint>
#include <vector>

#include "codediter/problems/instance.hpp"
#include "codediter/sim/erasure.hpp"
#include "codediter/sim/factory.hpp"
#include "codediter/sim/trace.hpp"

namespace codediter {

inline constexpr std::uint64_t kDefaultSeed = 20180601;

struct ExperimentConfig {
    ProblemSpec problem;
    EngineConfig engine;
    ErasureModel erasure;
    std::int64_t iterations = 30;
    std::int64_t runs = 100;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;  ///< 0 = hardware concurrency; results do not depend on it
};

/// Runs cfg.runs independent simulations. Run r uses derive_seed(seed, r);
/// iteration t draws survivors from (run, t, "erase") and the code from
/// (run, t, "gen"). Each trace has iterations + 1 records.
std::vector<MetricsTrace> run_experiment(const ExperimentConfig& cfg);

/// Same, reusing an already built problem for every run (ignores cfg.problem).
std::vector<MetricsTrace> run_experiment(const ExperimentConfig& cfg, const ProblemInstance& problem);

/// One run of an engine for T iterations from its current state.
MetricsTrace run_engine(Engine& engine, Scheme scheme, const ErasureModel& erasure, std::int64_t iterations,
                        double cost_per_iteration, std::uint64_t run_seed);

/// Per-iteration cost of cfg applied to a problem.
double experiment_cost(const EngineConfig& cfg, const ProblemInstance& problem);

}  // namespace codediter
