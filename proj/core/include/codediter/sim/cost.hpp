#pragma once

#include <cstdint>

#include "codediter/algorithms/scheme.hpp"

namespace codediter {

/// Reals communicated per iteration: one broadcast from the master plus one
/// worker's reply. N is the iterate length (the data dimension for gradient
/// descent); r the number of vectors for eigen/svd; d the pattern degree.
double comm_cost_per_iter(Scheme scheme, Workload workload, std::int64_t N, std::int64_t k, std::int64_t P,
                          std::int64_t d, std::int64_t r = 1);

}  // namespace codediter
