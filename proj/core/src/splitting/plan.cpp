#include "codediter/splitting/plan.hpp"

#include <cmath>
#include <string>

#include "codediter/error.hpp"

namespace codediter {

std::string_view to_string(SplitScheme scheme) {
    switch (scheme) {
        case SplitScheme::Row: return "row";
        case SplitScheme::Column: return "column";
        case SplitScheme::Summa: return "summa";
    }
    return "?";
}

SplitScheme parse_split_scheme(std::string_view name) {
    if (name == "row") return SplitScheme::Row;
    if (name == "column" || name == "col") return SplitScheme::Column;
    if (name == "summa") return SplitScheme::Summa;
    throw ConfigError("unknown split scheme '" + std::string(name) + "'");
}

std::int64_t exact_sqrt(std::int64_t k) {
    if (k <= 0) throw ConfigError("split count must be positive");
    auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(k))));
    if (s * s != k) throw ConfigError("summa split count " + std::to_string(k) + " is not a perfect square");
    return s;
}

SplitPlan plan_split(std::int64_t N, SplitScheme scheme, std::int64_t k) {
    if (N <= 0) throw ConfigError("split length must be positive");
    if (k <= 0) throw ConfigError("split count must be positive");
    SplitPlan plan;
    plan.scheme = scheme;
    plan.length = N;
    plan.k = k;
    plan.side = scheme == SplitScheme::Summa ? exact_sqrt(k) : k;
    plan.block_size = (N + plan.side - 1) / plan.side;
    plan.pad = plan.block_size * plan.side - N;
    return plan;
}

std::int64_t piece_length(std::int64_t n, std::int64_t pieces) {
    if (pieces <= 0) throw ConfigError("piece count must be positive");
    return (n + pieces - 1) / pieces;
}

const SparseMatrix& WorkerStore::block(std::int64_t j) const {
    for (const auto& [idx, ptr] : blocks)
        if (idx == j) return *ptr;
    throw DimensionError("worker " + std::to_string(worker_id) + " does not hold block " + std::to_string(j));
}

const Vector& WorkerStore::y_part(std::int64_t j) const {
    for (const auto& [idx, v] : y_parts)
        if (idx == j) return v;
    throw DimensionError("worker " + std::to_string(worker_id) + " has no y part " + std::to_string(j));
}

bool WorkerStore::holds(std::int64_t j) const {
    for (const auto& entry : blocks)
        if (entry.first == j) return true;
    return false;
}

Vector pad_vector(const Vector& v, std::int64_t n) {
    if (v.size() > n) throw DimensionError("pad_vector: vector longer than target");
    Vector out = Vector::Zero(n);
    out.head(v.size()) = v;
    return out;
}

std::vector<SparseMatrix> split_rows(const SparseMatrix& B, const SplitPlan& plan) {
    if (B.rows() > plan.padded_length()) throw DimensionError("split_rows: matrix has more rows than the plan");
    const SparseMatrix padded = B.padded(plan.padded_length(), B.cols());
    std::vector<SparseMatrix> out;
    out.reserve(static_cast<std::size_t>(plan.side));
    for (std::int64_t j = 0; j < plan.side; ++j)
        out.push_back(padded.row_slice(plan.block_begin(j), plan.block_begin(j) + plan.block_size));
    return out;
}

std::vector<SparseMatrix> split_cols(const SparseMatrix& B, const SplitPlan& plan) {
    if (B.cols() > plan.padded_length()) throw DimensionError("split_cols: matrix has more columns than the plan");
    const SparseMatrix padded = B.padded(B.rows(), plan.padded_length());
    std::vector<SparseMatrix> out;
    out.reserve(static_cast<std::size_t>(plan.side));
    for (std::int64_t j = 0; j < plan.side; ++j)
        out.push_back(padded.col_slice(plan.block_begin(j), plan.block_begin(j) + plan.block_size));
    return out;
}

std::vector<WorkerStore> assign_blocks(const std::vector<SparseMatrix>& blocks, const std::vector<Vector>* y_parts,
                                       const SparsityPattern& pattern, StorageMode mode) {
    if (static_cast<std::int64_t>(blocks.size()) != pattern.splits())
        throw DimensionError("assign_blocks: block count differs from pattern splits");
    std::vector<std::shared_ptr<const SparseMatrix>> shared;
    if (mode == StorageMode::Shared)
        for (const auto& b : blocks) shared.push_back(std::make_shared<const SparseMatrix>(b));

    std::vector<WorkerStore> stores(static_cast<std::size_t>(pattern.workers()));
    for (std::int64_t i = 0; i < pattern.workers(); ++i) {
        auto& store = stores[i];
        store.worker_id = i;
        for (auto j : pattern.row_support(i)) {
            auto ptr = mode == StorageMode::Shared ? shared[j] : std::make_shared<const SparseMatrix>(blocks[j]);
            store.blocks.emplace_back(j, std::move(ptr));
            if (y_parts != nullptr) store.y_parts.emplace_back(j, (*y_parts)[j]);
        }
    }
    return stores;
}

std::vector<WorkerStore> assign_storage(const SparseMatrix& B, const std::optional<Vector>& y, const SplitPlan& plan,
                                        const SparsityPattern& pattern, StorageMode mode) {
    if (plan.k != pattern.splits()) throw ConfigError("plan and pattern disagree on k");
    switch (plan.scheme) {
        case SplitScheme::Row: {
            const auto blocks = split_rows(B, plan);
            if (!y) return assign_blocks(blocks, nullptr, pattern, mode);
            if (y->size() != B.rows()) throw DimensionError("assign_storage: y length differs from B rows");
            const Vector yp = pad_vector(*y, plan.padded_length());
            std::vector<Vector> parts;
            for (std::int64_t j = 0; j < plan.k; ++j) parts.push_back(yp.segment(plan.block_begin(j), plan.block_size));
            return assign_blocks(blocks, &parts, pattern, mode);
        }
        case SplitScheme::Column:
            return assign_blocks(split_cols(B, plan), nullptr, pattern, mode);
        case SplitScheme::Summa:
            break;
    }
    throw ConfigError("assign_storage: summa plans need assign_summa_storage");
}

std::vector<std::vector<WorkerStore>> assign_summa_storage(const SparseMatrix& B, const SplitPlan& plan,
                                                           const std::vector<SparsityPattern>& group_patterns,
                                                           StorageMode mode) {
    if (plan.scheme != SplitScheme::Summa) throw ConfigError("assign_summa_storage needs a summa plan");
    if (static_cast<std::int64_t>(group_patterns.size()) != plan.side)
        throw ConfigError("summa needs one pattern per column strip");
    const auto Np = plan.padded_length();
    const SparseMatrix padded = B.padded(Np, Np);
    std::vector<std::vector<WorkerStore>> groups;
    for (std::int64_t g = 0; g < plan.side; ++g) {
        const SparseMatrix strip = padded.col_slice(plan.block_begin(g), plan.block_begin(g) + plan.block_size);
        const auto pieces = group_patterns[g].splits();
        const auto len = piece_length(Np, pieces);
        const SparseMatrix tall = strip.padded(len * pieces, strip.cols());
        std::vector<SparseMatrix> blocks;
        for (std::int64_t i = 0; i < pieces; ++i) blocks.push_back(tall.row_slice(i * len, (i + 1) * len));
        groups.push_back(assign_blocks(blocks, nullptr, group_patterns[g], mode));
    }
    return groups;
}

std::int64_t stored_nonzeros(const std::vector<WorkerStore>& stores) {
    std::int64_t total = 0;
    for (const auto& s : stores)
        for (const auto& entry : s.blocks) total += static_cast<std::int64_t>(entry.second->nnz());
    return total;
}

}  // namespace codediter
