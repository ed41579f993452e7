#pragma once

#include <cstdint>
#include <span>

#include "codediter/random.hpp"

namespace codediter {

/// Master-side state of one simulated iterative computation.
class Engine {
public:
    virtual ~Engine() = default;

    /// Total simulated workers; survivors are drawn from [0, workers()).
    virtual std::int64_t workers() const = 0;

    /// One iteration. gen_rng feeds the per-iteration generator draw (coded schemes only).
    virtual void step(std::uint64_t iteration, std::span<const std::int64_t> survivors, Rng& gen_rng) = 0;

    /// Scheme-independent error metric of the current iterate.
    virtual double error() const = 0;

    /// Realized delta of the last step (0 before the first step).
    virtual double last_delta() const = 0;

    /// True when the last step replaced degenerate directions with random ones.
    virtual bool restarted() const { return false; }
};

}  // namespace codediter
