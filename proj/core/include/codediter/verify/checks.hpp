#pragma once

#include <cstdint>

#include "codediter/codes/pattern.hpp"
#include "codediter/kernel/sparse_matrix.hpp"
#include "codediter/sim/erasure.hpp"
#include "codediter/verify/report.hpp"

namespace codediter {

inline constexpr std::uint64_t kDefaultVerifySeed = 20180601;

/// Below this many samples lemma1 still runs but warns insufficient_samples.
inline constexpr std::int64_t kLemma1MinSamples = 10000;

struct Lemma1Config {
    ErasureModel erasure{ErasureKind::FixedFraction, 0.5};
    std::int64_t samples = 100000;
    std::int64_t delta_samples = 100000;  ///< independent draw for delta-hat
    std::uint64_t seed = kDefaultVerifySeed;
    unsigned threads = 0;
    double max_off_diagonal = 0.01;
    double max_diagonal_spread = 0.02;
    double max_diagonal_bias = 0.02;
    double max_conjugation_error = 1e-8;
};

/// Sample mean of V V^T over generator values and erasures against (1 - delta) I,
/// plus the orthogonal-conjugation identity checked on every sample.
VerificationReport check_lemma1(const SparsityPattern& pattern, const Lemma1Config& cfg);

struct Theorem1Config {
    std::int64_t k = 10;  ///< N = k, so each block is a scalar
    std::int64_t P = 20;
    std::int64_t d = 3;
    double epsilon = 0.5;
    double spectral_norm = 0.85;
    std::int64_t runs = 2000;
    std::int64_t iterations = 5;
    std::int64_t delta_samples = 100000;
    double se_multiplier = 3.0;
    std::uint64_t seed = kDefaultVerifySeed;
    unsigned threads = 0;
};

/// Row engine, coded: E|e_{t+1}|^2 = (1 - delta) E|B e_t|^2 + delta E|e_t|^2 per iteration.
VerificationReport check_theorem1(const Theorem1Config& cfg);

struct Theorem2Config {
    std::int64_t k = 8;
    std::int64_t P = 16;
    std::int64_t d = 2;
    std::int64_t N = 32;
    double epsilon = 0.5;
    double col_norm = 0.9;
    std::int64_t runs = 2000;
    std::int64_t iterations = 5;
    std::int64_t delta_samples = 100000;
    double se_multiplier = 3.0;
    std::uint64_t seed = kDefaultVerifySeed;
    unsigned threads = 0;
};

/// Column engine, coded: E|E_{t+1}|^2 <= [(1 - delta)|B|_col^2 + delta] E|E_t|^2.
VerificationReport check_theorem2(const Theorem2Config& cfg);

/// sqrt(k) max_j |B_j|_2 over the k column blocks of the column split.
double column_block_norm(const SparseMatrix& B, std::int64_t k);

struct NormLemmaConfig {
    std::int64_t N = 2000;
    double p = 0.02;
    double epsilon = 0.3;
    std::int64_t k = 10;
    std::int64_t graphs = 100;
    double vacuous_bound_level = 0.01;  ///< threshold used when a bound exceeds 1
    double se_multiplier = 3.0;
    std::uint64_t seed = kDefaultVerifySeed;
    unsigned threads = 0;
};

double lemma2_bound(std::int64_t N, double p, double epsilon);
double lemma3_bound(std::int64_t N, double p, double epsilon, std::int64_t k);

/// Violation frequencies of |A|_2 and |A|_col against their limits on G(N, p)
/// graphs without isolated nodes (resampled).
VerificationReport check_norm_lemmas(const NormLemmaConfig& cfg);

}  // namespace codediter
