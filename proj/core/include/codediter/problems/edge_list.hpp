#pragma once

#include <filesystem>
#include <iosfwd>

#include "codediter/kernel/sparse_matrix.hpp"

namespace codediter {

/// Parses "src dst" integer pairs (whitespace separated, '#' lines skipped).
/// Node ids are compacted to 0..N-1 in ascending id order. Entry (dst, src) is
/// set, so column j collects the out-links of node j. Repeated edges count once.
/// Undirected lists also set (src, dst). Nodes without edges are not representable.
SparseMatrix read_edge_list(std::istream& in, bool undirected = false);
SparseMatrix load_edge_list(const std::filesystem::path& path, bool undirected = false);

/// One "src dst" line per nonzero (row = dst, col = src), in row-major order.
/// Undirected output keeps only the lower triangle, one line per edge.
void write_edge_list(std::ostream& out, const SparseMatrix& adjacency, bool undirected = false);
void write_edge_list(const std::filesystem::path& path, const SparseMatrix& adjacency, bool undirected = false);

}  // namespace codediter
