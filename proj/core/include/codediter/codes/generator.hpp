#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "codediter/codes/pattern.hpp"
#include "codediter/kernel/dense.hpp"
#include "codediter/random.hpp"

namespace codediter {

/// Per-iteration code: standard Gaussian values on the pattern support, zero elsewhere.
struct GeneratorMatrix {
    DenseMatrix values;  ///< P x k
    std::uint64_t iteration = 0;
};

/// Rows of a GeneratorMatrix kept for the surviving workers.
struct PartialGenerator {
    std::vector<std::int64_t> survivors;  ///< ascending
    DenseMatrix rows;                     ///< |survivors| x k
};

/// Draws support values row by row from rng.
GeneratorMatrix sample_generator(const SparsityPattern& pattern, std::uint64_t iteration, Rng& rng);

/// Survivor rows in ascending worker order. An empty set gives a 0 x k matrix.
PartialGenerator restrict_rows(const GeneratorMatrix& G, std::span<const std::int64_t> survivors);

/// Substitute-decoding basis of a partial generator G_s = U D V^T.
struct DecodingBasis {
    DenseMatrix V;       ///< k x rank
    DenseMatrix Vtilde;  ///< k x (k - rank), completes V to an orthonormal basis
    DenseMatrix L;       ///< rank x |survivors|, D^{-1} U^T so that L G_s = V^T
    std::int64_t rank = 0;
    double delta = 1.0;  ///< 1 - rank / k

    std::int64_t splits() const { return V.rows(); }
    DenseMatrix projector() const { return V * V.transpose(); }
    DenseMatrix complement_projector() const { return Vtilde * Vtilde.transpose(); }
};

DecodingBasis decode_basis(const DenseMatrix& Gs, double rank_tol = kDefaultRankTol);
inline DecodingBasis decode_basis(const PartialGenerator& Gs, double rank_tol = kDefaultRankTol) {
    return decode_basis(Gs.rows, rank_tol);
}

}  // namespace codediter
