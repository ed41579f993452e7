#include "codediter/codes/delta.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "codediter/codes/generator.hpp"
#include "codediter/error.hpp"
#include "codediter/parallel.hpp"

namespace codediter {

namespace {

DeltaEstimate summarize(const std::vector<double>& values) {
    DeltaEstimate est;
    est.samples = static_cast<std::int64_t>(values.size());
    if (values.empty()) return est;
    const double n = static_cast<double>(values.size());
    est.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - est.mean) * (v - est.mean);
        est.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return est;
}

double rank_deficit(const SparsityPattern& pattern, const GeneratorMatrix& G,
                    const std::vector<std::int64_t>& survivors, double rank_tol) {
    const auto Gs = restrict_rows(G, survivors);
    const auto rank = numeric_rank(Gs.rows, rank_tol);
    return 1.0 - static_cast<double>(rank) / static_cast<double>(pattern.splits());
}

}  // namespace

double binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0.0;
    r = std::min(r, n - r);
    double out = 1.0;
    for (std::int64_t i = 1; i <= r; ++i) out = out * static_cast<double>(n - r + i) / static_cast<double>(i);
    return std::round(out);
}

DeltaEstimate estimate_delta(const SparsityPattern& pattern, const ErasureModel& erasure, std::int64_t n_samples,
                             std::uint64_t seed, unsigned threads, double rank_tol) {
    if (n_samples < 1) throw ConfigError("estimate_delta needs at least one sample");
    std::vector<double> values(static_cast<std::size_t>(n_samples));
    parallel_for(values.size(), threads, [&](std::size_t s) {
        auto gen_rng = make_rng(seed, s, "gen");
        auto erase_rng = make_rng(seed, s, "erase");
        const auto G = sample_generator(pattern, s, gen_rng);
        const auto survivors = draw_survivors(pattern.workers(), erasure, erase_rng);
        values[s] = rank_deficit(pattern, G, survivors, rank_tol);
    });
    return summarize(values);
}

DeltaEstimate exact_delta_small(const SparsityPattern& pattern, std::int64_t n_erased, std::int64_t value_samples,
                                std::uint64_t seed, double rank_tol) {
    const auto P = pattern.workers();
    if (n_erased < 0 || n_erased > P) throw ConfigError("n_erased must lie in [0, P]");
    if (value_samples < 1) throw ConfigError("exact_delta_small needs at least one value sample");
    const auto keep = P - n_erased;
    if (binomial(P, keep) > 1e6) throw ConfigError("exact_delta_small: more than 1e6 survivor subsets");

    std::vector<double> values;
    std::vector<std::int64_t> subset(static_cast<std::size_t>(keep));
    std::iota(subset.begin(), subset.end(), 0);
    std::uint64_t subset_index = 0;
    while (true) {
        for (std::int64_t v = 0; v < value_samples; ++v) {
            auto rng = make_rng(derive_seed(seed, subset_index), static_cast<std::uint64_t>(v), "gen");
            const auto G = sample_generator(pattern, static_cast<std::uint64_t>(v), rng);
            values.push_back(rank_deficit(pattern, G, subset, rank_tol));
        }
        ++subset_index;
        // next combination in lexicographic order
        std::int64_t i = keep - 1;
        while (i >= 0 && subset[i] == P - keep + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (auto j = i + 1; j < keep; ++j) subset[j] = subset[j - 1] + 1;
    }
    return summarize(values);
}

}  // namespace codediter
