#include "codediter/sim/erasure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "codediter/error.hpp"

namespace codediter {

std::int64_t fixed_erasure_count(std::int64_t P, double epsilon) {
    return static_cast<std::int64_t>(std::llround(epsilon * static_cast<double>(P)));
}

std::vector<std::int64_t> draw_survivors(std::int64_t P, const ErasureModel& model, Rng& rng) {
    if (P < 0) throw ConfigError("worker count must be non-negative");
    if (!(model.epsilon >= 0.0 && model.epsilon <= 1.0)) throw ConfigError("erasure epsilon must lie in [0, 1]");
    std::vector<std::int64_t> out;
    if (model.kind == ErasureKind::Bernoulli) {
        for (std::int64_t i = 0; i < P; ++i)
            if (!(uniform01(rng) < model.epsilon)) out.push_back(i);
        return out;
    }
    const auto erased = fixed_erasure_count(P, model.epsilon);
    const auto keep = P - erased;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(P));
    std::iota(idx.begin(), idx.end(), 0);
    // partial Fisher-Yates: the first `keep` slots become a uniform subset
    for (std::int64_t i = 0; i < keep; ++i) {
        std::uniform_int_distribution<std::int64_t> pick(i, P - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    out.assign(idx.begin(), idx.begin() + keep);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace codediter
