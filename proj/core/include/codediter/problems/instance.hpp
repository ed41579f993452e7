#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "codediter/algorithms/power.hpp"
#include "codediter/kernel/sparse_matrix.hpp"
#include "codediter/problems/least_squares.hpp"
#include "codediter/problems/pagerank.hpp"
#include "codediter/problems/spectral.hpp"

namespace codediter {

enum class ProblemKind { PageRank, Eigen, Svd, Gradient };
enum class GraphSource { Er, Sbm, File };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view name);
GraphSource parse_graph_source(std::string_view name);

struct ProblemSpec {
    ProblemKind kind = ProblemKind::PageRank;

    // graphs (pagerank, eigen)
    GraphSource graph = GraphSource::Er;
    std::filesystem::path edge_list;
    bool undirected = false;  ///< edge-list lines are undirected edges
    std::int64_t nodes = 1000;
    double edge_probability = 0.0;  ///< G(N, p); used when mean_degree is 0
    double mean_degree = 20.0;      ///< p = mean_degree / (N - 1) when positive
    double p_in = 0.02;
    double p_out = 0.003;
    double damping = 0.15;
    DanglingMode dangling = DanglingMode::Keep;
    IsolateMode isolate = IsolateMode::Reject;

    // eigen and svd
    std::int64_t rank = 2;
    double background_density = 0.01;
    std::int64_t planted_blocks = 5;
    std::int64_t planted_size = 50;
    double planted_density = 0.2;

    // gradient descent
    std::int64_t samples = 500;
    std::int64_t dim = 100;

    /// Draw a fresh instance for every run. Defaults to true for svd and gradient.
    std::optional<bool> regenerate;

    bool regenerates() const;
    double er_probability() const;
};

struct ProblemInstance {
    ProblemKind kind = ProblemKind::PageRank;
    LinearSystem system;                 ///< pagerank
    SparseMatrix matrix;                 ///< eigen: shifted Laplacian; svd: data matrix
    DenseMatrix reference;               ///< eigen/svd: top-r reference subspace (N x r)
    std::optional<LeastSquaresProblem> least_squares;
    std::int64_t rank = 0;

    /// Size of the iterate (N for power/eigen/svd, dim for gradient descent).
    std::int64_t dimension() const;
};

ProblemInstance build_problem(const ProblemSpec& spec, std::uint64_t seed);

}  // namespace codediter
