#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "codediter/codes/pattern.hpp"
#include "codediter/kernel/sparse_matrix.hpp"

namespace codediter {

enum class SplitScheme { Row, Column, Summa };

std::string_view to_string(SplitScheme scheme);
SplitScheme parse_split_scheme(std::string_view name);

struct SplitPlan {
    SplitScheme scheme = SplitScheme::Row;
    std::int64_t length = 0;      ///< unpadded dimension being split
    std::int64_t k = 0;           ///< blocks (Summa: total blocks, side = sqrt(k))
    std::int64_t side = 0;        ///< blocks per dimension: k for Row/Column, sqrt(k) for Summa
    std::int64_t block_size = 0;  ///< b
    std::int64_t pad = 0;

    std::int64_t padded_length() const { return length + pad; }
    std::int64_t block_begin(std::int64_t j) const { return j * block_size; }
};

/// Ceiling split: b = ceil(N / side), pad = b * side - N.
SplitPlan plan_split(std::int64_t N, SplitScheme scheme, std::int64_t k);

/// Integer square root of k; throws ConfigError unless k is a perfect square.
std::int64_t exact_sqrt(std::int64_t k);

/// Materialized gives each worker its own copy of every block it holds;
/// Shared hands out references to one copy per block.
enum class StorageMode { Materialized, Shared };

struct WorkerStore {
    std::int64_t worker_id = 0;
    std::vector<std::pair<std::int64_t, std::shared_ptr<const SparseMatrix>>> blocks;
    std::vector<std::pair<std::int64_t, Vector>> y_parts;  ///< Row scheme only

    const SparseMatrix& block(std::int64_t j) const;
    const Vector& y_part(std::int64_t j) const;
    bool holds(std::int64_t j) const;
};

/// Row blocks of B after padding its rows to plan.padded_length().
std::vector<SparseMatrix> split_rows(const SparseMatrix& B, const SplitPlan& plan);
/// Column blocks of B after padding its columns to plan.padded_length().
std::vector<SparseMatrix> split_cols(const SparseMatrix& B, const SplitPlan& plan);
/// Zero-extends v to length n.
Vector pad_vector(const Vector& v, std::int64_t n);

/// Places block j at worker i iff pattern.at(i, j). Row plans split rows (and y,
/// when given); Column plans split columns. Summa plans use assign_summa_storage.
std::vector<WorkerStore> assign_storage(const SparseMatrix& B, const std::optional<Vector>& y, const SplitPlan& plan,
                                        const SparsityPattern& pattern,
                                        StorageMode mode = StorageMode::Materialized);

/// Same placement for precomputed blocks (blocks.size() == pattern.splits()).
std::vector<WorkerStore> assign_blocks(const std::vector<SparseMatrix>& blocks, const std::vector<Vector>* y_parts,
                                       const SparsityPattern& pattern, StorageMode mode = StorageMode::Materialized);

/// Summa: B is padded to a square of plan.padded_length(); column strip g is
/// split into group_patterns[g].splits() row pieces and placed by that pattern.
std::vector<std::vector<WorkerStore>> assign_summa_storage(const SparseMatrix& B, const SplitPlan& plan,
                                                           const std::vector<SparsityPattern>& group_patterns,
                                                           StorageMode mode = StorageMode::Materialized);

/// Row pieces of a length-n vector (or matrix rows) split into `pieces` parts of ceil(n / pieces).
std::int64_t piece_length(std::int64_t n, std::int64_t pieces);

/// Non-zeros summed over every block copy held by every worker (the materialized figure).
std::int64_t stored_nonzeros(const std::vector<WorkerStore>& stores);

}  // namespace codediter
