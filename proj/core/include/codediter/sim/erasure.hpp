#pragma once

#include <cstdint>
#include <vector>

#include "codediter/random.hpp"

namespace codediter {

enum class ErasureKind { FixedFraction, Bernoulli };

struct ErasureModel {
    ErasureKind kind = ErasureKind::FixedFraction;
    double epsilon = 0.5;  ///< erased fraction (FixedFraction) or per-worker probability (Bernoulli)
};

/// Number of workers FixedFraction erases out of P: round(epsilon * P).
std::int64_t fixed_erasure_count(std::int64_t P, double epsilon);

/// Surviving worker indices, ascending.
std::vector<std::int64_t> draw_survivors(std::int64_t P, const ErasureModel& model, Rng& rng);

}  // namespace codediter
