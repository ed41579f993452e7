#pragma once

#include <cstdint>
#include <vector>

#include "codediter/kernel/sparse_matrix.hpp"
#include "codediter/random.hpp"

namespace codediter {

/// Symmetric 0/1 adjacency of G(N, p) without self-loops.
SparseMatrix gen_er(std::int64_t N, double p, Rng& rng);

struct SbmGraph {
    SparseMatrix adjacency;
    std::vector<int> labels;  ///< 0 for the first floor(N/2) nodes, 1 for the rest
};

/// Two-cluster stochastic block model.
SbmGraph gen_sbm(std::int64_t N, double p_in, double p_out, Rng& rng);

struct PlantedBlock {
    std::int64_t size = 0;
    double density = 0.0;
};

/// N x N sparse matrix with background density p_bg and dense square blocks
/// placed along the diagonal at evenly spaced offsets. Values are uniform in [0, 1].
SparseMatrix gen_planted(std::int64_t N, double p_bg, const std::vector<PlantedBlock>& blocks, Rng& rng);

/// Node degrees (row sums of a 0/1 adjacency).
std::vector<std::int64_t> degrees(const SparseMatrix& adjacency);

}  // namespace codediter
