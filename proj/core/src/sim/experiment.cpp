#include "codediter/sim/experiment.hpp"

#include <numeric>

#include "codediter/error.hpp"
#include "codediter/parallel.hpp"
#include "codediter/sim/cost.hpp"

namespace codediter {

double experiment_cost(const EngineConfig& cfg, const ProblemInstance& problem) {
    const Workload workload = workload_for(problem.kind, cfg.split);
    const auto r = problem.kind == ProblemKind::Eigen || problem.kind == ProblemKind::Svd ? problem.rank : 1;
    return comm_cost_per_iter(cfg.scheme, workload, problem.dimension(), cfg.k, cfg.P, cfg.d, r);
}

MetricsTrace run_engine(Engine& engine, Scheme scheme, const ErasureModel& erasure, std::int64_t iterations,
                        double cost_per_iteration, std::uint64_t run_seed) {
    if (iterations < 0) throw ConfigError("iterations must be non-negative");
    const auto P = engine.workers();
    std::vector<std::int64_t> everyone(static_cast<std::size_t>(P));
    std::iota(everyone.begin(), everyone.end(), 0);

    MetricsTrace trace;
    trace.records.reserve(static_cast<std::size_t>(iterations) + 1);
    trace.records.push_back({0, 0.0, engine.error(), 0.0, static_cast<double>(P), 0.0, false});
    for (std::int64_t t = 1; t <= iterations; ++t) {
        const auto ut = static_cast<std::uint64_t>(t);
        Rng gen_rng = make_rng(run_seed, ut, "gen");
        std::vector<std::int64_t> survivors;
        if (scheme == Scheme::Noiseless) {
            survivors = everyone;
        } else {
            Rng erase_rng = make_rng(run_seed, ut, "erase");
            survivors = draw_survivors(P, erasure, erase_rng);
        }
        engine.step(ut, survivors, gen_rng);
        trace.records.push_back({t, static_cast<double>(t) * cost_per_iteration, engine.error(), 0.0,
                                 static_cast<double>(survivors.size()), engine.last_delta(), engine.restarted()});
    }
    return trace;
}

std::vector<MetricsTrace> run_experiment(const ExperimentConfig& cfg, const ProblemInstance& problem) {
    if (cfg.runs < 1) throw ConfigError("runs must be at least 1");
    validate_engine_config(cfg.engine, problem.kind);
    const double cost = experiment_cost(cfg.engine, problem);
    std::vector<MetricsTrace> traces(static_cast<std::size_t>(cfg.runs));
    parallel_for(traces.size(), cfg.threads, [&](std::size_t r) {
        const auto run_seed = derive_seed(cfg.seed, r);
        auto engine = make_engine(cfg.engine, problem, run_seed);
        traces[r] = run_engine(*engine, cfg.engine.scheme, cfg.erasure, cfg.iterations, cost, run_seed);
    });
    return traces;
}

std::vector<MetricsTrace> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.runs < 1) throw ConfigError("runs must be at least 1");
    if (!cfg.problem.regenerates()) return run_experiment(cfg, build_problem(cfg.problem, cfg.seed));
    validate_engine_config(cfg.engine, cfg.problem.kind);
    std::vector<MetricsTrace> traces(static_cast<std::size_t>(cfg.runs));
    parallel_for(traces.size(), cfg.threads, [&](std::size_t r) {
        const auto run_seed = derive_seed(cfg.seed, r);
        const ProblemInstance problem = build_problem(cfg.problem, run_seed);
        auto engine = make_engine(cfg.engine, problem, run_seed);
        traces[r] = run_engine(*engine, cfg.engine.scheme, cfg.erasure, cfg.iterations,
                               experiment_cost(cfg.engine, problem), run_seed);
    });
    return traces;
}

}  // namespace codediter
