#pragma once

#include <cstdint>

#include "codediter/codes/pattern.hpp"
#include "codediter/kernel/dense.hpp"
#include "codediter/sim/erasure.hpp"

namespace codediter {

struct DeltaEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
};

/// Monte-Carlo mean of 1 - rank(G_s)/k. Sample s draws its generator from
/// (seed, s, "gen") and its survivors from (seed, s, "erase"), so the result
/// does not depend on `threads`.
DeltaEstimate estimate_delta(const SparsityPattern& pattern, const ErasureModel& erasure, std::int64_t n_samples,
                             std::uint64_t seed, unsigned threads = 0, double rank_tol = kDefaultRankTol);

/// Averages 1 - rank/k over every survivor subset of size P - n_erased, with
/// value_samples generator draws per subset. Refuses more than 1e6 subsets.
DeltaEstimate exact_delta_small(const SparsityPattern& pattern, std::int64_t n_erased, std::int64_t value_samples,
                                std::uint64_t seed, double rank_tol = kDefaultRankTol);

/// Binomial coefficient as a double (exact below 2^53).
double binomial(std::int64_t n, std::int64_t r);

}  // namespace codediter
