#include "codediter/problems/instance.hpp"

#include <string>

#include "codediter/error.hpp"
#include "codediter/problems/edge_list.hpp"
#include "codediter/problems/graphs.hpp"

namespace codediter {

std::string_view to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::PageRank: return "pagerank";
        case ProblemKind::Eigen: return "eigen";
        case ProblemKind::Svd: return "svd";
        case ProblemKind::Gradient: return "gd";
    }
    return "?";
}

ProblemKind parse_problem_kind(std::string_view name) {
    if (name == "pagerank") return ProblemKind::PageRank;
    if (name == "eigen") return ProblemKind::Eigen;
    if (name == "svd") return ProblemKind::Svd;
    if (name == "gd" || name == "gradient") return ProblemKind::Gradient;
    throw ConfigError("unknown problem '" + std::string(name) + "'");
}

GraphSource parse_graph_source(std::string_view name) {
    if (name == "er") return GraphSource::Er;
    if (name == "sbm") return GraphSource::Sbm;
    if (name == "file") return GraphSource::File;
    throw ConfigError("unknown graph source '" + std::string(name) + "'");
}

bool ProblemSpec::regenerates() const {
    if (regenerate) return *regenerate;
    return kind == ProblemKind::Svd || kind == ProblemKind::Gradient;
}

double ProblemSpec::er_probability() const {
    if (mean_degree > 0.0) return nodes > 1 ? std::min(1.0, mean_degree / static_cast<double>(nodes - 1)) : 0.0;
    return edge_probability;
}

std::int64_t ProblemInstance::dimension() const {
    switch (kind) {
        case ProblemKind::PageRank: return system.B.rows();
        case ProblemKind::Eigen:
        case ProblemKind::Svd: return reference.rows();
        case ProblemKind::Gradient: return least_squares ? least_squares->dim() : 0;
    }
    return 0;
}

namespace {

SparseMatrix make_graph(const ProblemSpec& spec, Rng& rng) {
    switch (spec.graph) {
        case GraphSource::Er: return gen_er(spec.nodes, spec.er_probability(), rng);
        case GraphSource::Sbm: return gen_sbm(spec.nodes, spec.p_in, spec.p_out, rng).adjacency;
        case GraphSource::File: return load_edge_list(spec.edge_list, spec.undirected);
    }
    throw ConfigError("unknown graph source");
}

}  // namespace

ProblemInstance build_problem(const ProblemSpec& spec, std::uint64_t seed) {
    Rng rng = make_rng(seed, 0, "problem");
    ProblemInstance inst;
    inst.kind = spec.kind;
    inst.rank = spec.rank;
    switch (spec.kind) {
        case ProblemKind::PageRank:
            inst.system = build_pagerank(make_graph(spec, rng), spec.damping, std::nullopt, spec.dangling).system;
            break;
        case ProblemKind::Eigen: {
            const SparseMatrix adjacency = make_graph(spec, rng);
            auto shifted = build_shifted_laplacian(adjacency, spec.isolate);
            inst.matrix = std::move(shifted.M);
            inst.reference = top_eigenvectors(inst.matrix, spec.rank, derive_seed(seed, 0, "reference"));
            break;
        }
        case ProblemKind::Svd: {
            std::vector<PlantedBlock> blocks(static_cast<std::size_t>(spec.planted_blocks),
                                             PlantedBlock{spec.planted_size, spec.planted_density});
            inst.matrix = gen_planted(spec.nodes, spec.background_density, blocks, rng);
            inst.reference =
                top_right_singular_vectors(inst.matrix, spec.rank, derive_seed(seed, 0, "reference"));
            break;
        }
        case ProblemKind::Gradient:
            inst.least_squares = build_least_squares(spec.samples, spec.dim, rng);
            break;
    }
    return inst;
}

}  // namespace codediter
