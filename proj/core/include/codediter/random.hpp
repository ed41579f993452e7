#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace codediter {

using Rng = std::mt19937_64;

/// Stable 64-bit tag for a stream label such as "gen" or "erase".
std::uint64_t stream_tag(std::string_view label) noexcept;

/// Mixes a parent seed with an index into a child seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

/// Child seed keyed by (parent, index, label).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index, std::string_view label) noexcept;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

inline Rng make_rng(std::uint64_t parent, std::uint64_t index, std::string_view label) {
    return Rng{derive_seed(parent, index, label)};
}

/// Standard normal draw. Uses a fresh distribution so no state leaks between calls.
inline double standard_normal(Rng& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    return dist(rng);
}

inline double uniform01(Rng& rng) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    return dist(rng);
}

}  // namespace codediter
