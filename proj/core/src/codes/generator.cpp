#include "codediter/codes/generator.hpp"

#include <algorithm>

#include "codediter/error.hpp"

namespace codediter {

GeneratorMatrix sample_generator(const SparsityPattern& pattern, std::uint64_t iteration, Rng& rng) {
    const auto P = pattern.workers();
    const auto k = pattern.splits();
    GeneratorMatrix G{DenseMatrix::Zero(P, k), iteration};
    for (std::int64_t i = 0; i < P; ++i)
        for (std::int64_t j = 0; j < k; ++j)
            if (pattern.at(i, j)) G.values(i, j) = standard_normal(rng);
    return G;
}

PartialGenerator restrict_rows(const GeneratorMatrix& G, std::span<const std::int64_t> survivors) {
    PartialGenerator out;
    out.survivors.assign(survivors.begin(), survivors.end());
    std::sort(out.survivors.begin(), out.survivors.end());
    if (std::adjacent_find(out.survivors.begin(), out.survivors.end()) != out.survivors.end())
        throw ConfigError("survivor list has duplicates");
    out.rows.resize(static_cast<Eigen::Index>(out.survivors.size()), G.values.cols());
    for (std::size_t r = 0; r < out.survivors.size(); ++r) {
        const auto w = out.survivors[r];
        if (w < 0 || w >= G.values.rows()) throw DimensionError("survivor index out of range");
        out.rows.row(static_cast<Eigen::Index>(r)) = G.values.row(w);
    }
    return out;
}

DecodingBasis decode_basis(const DenseMatrix& Gs, double rank_tol) {
    const auto k = Gs.cols();
    const SvdResult svd = svd_small(Gs, rank_tol);
    DecodingBasis basis;
    basis.rank = svd.numeric_rank;
    const auto rho = basis.rank;
    basis.V = svd.Vt.topRows(rho).transpose();
    basis.Vtilde = svd.Vt.bottomRows(k - rho).transpose();
    basis.L = svd.singular_values.head(rho).cwiseInverse().asDiagonal() * svd.U.leftCols(rho).transpose();
    basis.delta = k == 0 ? 0.0 : 1.0 - static_cast<double>(rho) / static_cast<double>(k);
    return basis;
}

}  // namespace codediter
