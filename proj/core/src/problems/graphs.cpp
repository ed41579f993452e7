#include "codediter/problems/graphs.hpp"

#include <cmath>
#include <string>

#include "codediter/error.hpp"

namespace codediter {

namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
}

// Visits the upper-triangle pairs (i < j) kept with probability p(i, j).
template <class Prob, class Keep>
void sample_pairs(std::int64_t N, Prob&& prob, Keep&& keep, Rng& rng) {
    for (std::int64_t i = 0; i < N; ++i)
        for (std::int64_t j = i + 1; j < N; ++j)
            if (uniform01(rng) < prob(i, j)) keep(i, j);
}

SparseMatrix symmetric_from_pairs(std::int64_t N, const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
    std::vector<Triplet> t;
    t.reserve(pairs.size() * 2);
    for (const auto& [i, j] : pairs) {
        t.push_back({i, j, 1.0});
        t.push_back({j, i, 1.0});
    }
    return SparseMatrix::from_triplets(N, N, t);
}

}  // namespace

SparseMatrix gen_er(std::int64_t N, double p, Rng& rng) {
    if (N < 0) throw ConfigError("graph size must be non-negative");
    check_probability(p, "edge probability");
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    sample_pairs(N, [p](auto, auto) { return p; }, [&](auto i, auto j) { pairs.emplace_back(i, j); }, rng);
    return symmetric_from_pairs(N, pairs);
}

SbmGraph gen_sbm(std::int64_t N, double p_in, double p_out, Rng& rng) {
    if (N < 0) throw ConfigError("graph size must be non-negative");
    check_probability(p_in, "intra-cluster probability");
    check_probability(p_out, "inter-cluster probability");
    SbmGraph g;
    const auto half = N / 2;
    g.labels.resize(static_cast<std::size_t>(N));
    for (std::int64_t i = 0; i < N; ++i) g.labels[i] = i < half ? 0 : 1;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    sample_pairs(
        N, [&](auto i, auto j) { return g.labels[i] == g.labels[j] ? p_in : p_out; },
        [&](auto i, auto j) { pairs.emplace_back(i, j); }, rng);
    g.adjacency = symmetric_from_pairs(N, pairs);
    return g;
}

SparseMatrix gen_planted(std::int64_t N, double p_bg, const std::vector<PlantedBlock>& blocks, Rng& rng) {
    if (N < 0) throw ConfigError("matrix size must be non-negative");
    check_probability(p_bg, "background density");
    std::int64_t total = 0;
    for (const auto& b : blocks) {
        check_probability(b.density, "block density");
        if (b.size < 0 || b.size > N) throw ConfigError("planted block size exceeds N");
        total += b.size;
    }
    if (total > N) throw ConfigError("planted blocks do not fit along the diagonal");

    // block m starts at m * N / count, so blocks spread evenly and never overlap
    std::vector<std::int64_t> block_of(static_cast<std::size_t>(N), -1);
    const auto count = static_cast<std::int64_t>(blocks.size());
    std::vector<std::int64_t> starts;
    for (std::int64_t m = 0; m < count; ++m) {
        auto start = m * N / count;
        if (!starts.empty()) start = std::max(start, starts.back() + blocks[m - 1].size);
        start = std::min(start, N - blocks[m].size);
        starts.push_back(start);
        for (std::int64_t i = start; i < start + blocks[m].size; ++i) block_of[i] = m;
    }

    std::vector<Triplet> t;
    for (std::int64_t i = 0; i < N; ++i) {
        for (std::int64_t j = 0; j < N; ++j) {
            double p = p_bg;
            if (block_of[i] >= 0 && block_of[i] == block_of[j]) p = std::max(p, blocks[block_of[i]].density);
            if (uniform01(rng) < p) t.push_back({i, j, uniform01(rng)});
        }
    }
    return SparseMatrix::from_triplets(N, N, t);
}

std::vector<std::int64_t> degrees(const SparseMatrix& adjacency) {
    std::vector<std::int64_t> out(static_cast<std::size_t>(adjacency.rows()), 0);
    const auto offsets = adjacency.row_offsets();
    for (std::int64_t i = 0; i < adjacency.rows(); ++i) out[i] = offsets[i + 1] - offsets[i];
    return out;
}

}  // namespace codediter
