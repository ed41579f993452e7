#include "codediter/problems/pagerank.hpp"

#include "codediter/error.hpp"

namespace codediter {

SparseMatrix normalize_columns(const SparseMatrix& A_raw, DanglingMode mode) {
    for (double v : A_raw.values())
        if (v < 0.0) throw ConfigError("normalize_columns: negative entry");
    const Vector sums = A_raw.column_sums();
    const auto N = A_raw.rows();
    std::vector<Triplet> t;
    t.reserve(A_raw.nnz());
    const auto offsets = A_raw.row_offsets();
    const auto cols = A_raw.col_indices();
    const auto vals = A_raw.values();
    for (std::int64_t r = 0; r < N; ++r)
        for (auto p = offsets[r]; p < offsets[r + 1]; ++p)
            if (vals[p] != 0.0) t.push_back({r, cols[p], vals[p] / sums[cols[p]]});
    if (mode == DanglingMode::Uniform && N > 0) {
        for (std::int64_t c = 0; c < A_raw.cols(); ++c)
            if (sums[c] == 0.0)
                for (std::int64_t r = 0; r < N; ++r) t.push_back({r, c, 1.0 / static_cast<double>(N)});
    }
    return SparseMatrix::from_triplets(N, A_raw.cols(), t);
}

Vector power_fixed_point(const SparseMatrix& B, const Vector& y, const Vector& x0, double tol,
                         std::int64_t max_iterations) {
    Vector x = x0;
    for (std::int64_t it = 0; it < max_iterations; ++it) {
        Vector next = y;
        spmv_accumulate(B, x, 1.0, next);
        const double change = (next - x).norm();
        x = std::move(next);
        if (change < tol) return x;
    }
    throw NumericError("power iteration did not reach the fixed-point tolerance");
}

PageRankProblem build_pagerank(const SparseMatrix& A_raw, double c, std::optional<Vector> r_pref,
                               DanglingMode mode) {
    if (!(c > 0.0 && c < 1.0)) throw ConfigError("damping c must lie in (0, 1)");
    if (A_raw.rows() != A_raw.cols()) throw DimensionError("pagerank needs a square adjacency");
    const auto N = A_raw.rows();
    PageRankProblem p;
    p.A = normalize_columns(A_raw, mode);
    p.c = c;
    p.r_pref = r_pref ? *r_pref : Vector::Constant(N, 1.0 / static_cast<double>(N));
    if (p.r_pref.size() != N) throw DimensionError("preference vector length differs from N");
    p.system.B = p.A.scaled(1.0 - c);
    p.system.y = c * p.r_pref;
    p.system.x0 = Vector::Constant(N, 1.0 / static_cast<double>(N));
    p.system.x_star = power_fixed_point(p.system.B, p.system.y, p.system.x0);
    return p;
}

}  // namespace codediter
