#include <benchmark/benchmark.h>

#include <numeric>

#include "codediter/algorithms/power.hpp"
#include "codediter/codes/generator.hpp"
#include "codediter/problems/graphs.hpp"
#include "codediter/problems/pagerank.hpp"
#include "codediter/sim/erasure.hpp"

using namespace codediter;

namespace {

SparseMatrix er_graph(std::int64_t N) {
    Rng rng = make_rng(1);
    return normalize_columns(gen_er(N, 20.0 / double(N - 1), rng));
}

void BM_Spmv(benchmark::State& state) {
    const auto A = er_graph(state.range(0));
    const Vector x = Vector::Ones(A.cols());
    for (auto _ : state) benchmark::DoNotOptimize(spmv(A, x));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(A.nnz()));
}
BENCHMARK(BM_Spmv)->Arg(1000)->Arg(10000)->Arg(50000);

void BM_DecodeBasis(benchmark::State& state) {
    const auto k = state.range(0);
    Rng rng = make_rng(2);
    const auto pattern = make_combined_cyclic(k, 3, rng);
    const auto survivors = draw_survivors(2 * k, {ErasureKind::FixedFraction, 0.5}, rng);
    const auto G = sample_generator(pattern, 1, rng);
    const auto Gs = restrict_rows(G, survivors);
    for (auto _ : state) benchmark::DoNotOptimize(decode_basis(Gs));
}
BENCHMARK(BM_DecodeBasis)->Arg(10)->Arg(48)->Arg(100);

void BM_RowStep(benchmark::State& state) {
    const auto pr = build_pagerank(er_graph(state.range(0)));
    Rng rng = make_rng(3);
    RowPowerEngine e(pr.system, BlockCombiner(make_combined_cyclic(10, 3, rng), DecodeRule::Substitute));
    std::uint64_t t = 0;
    for (auto _ : state) {
        const auto s = draw_survivors(20, {ErasureKind::FixedFraction, 0.5}, rng);
        e.step(++t, s, rng);
    }
}
BENCHMARK(BM_RowStep)->Arg(5000)->Arg(50000);

void BM_ColumnStep(benchmark::State& state) {
    const auto pr = build_pagerank(er_graph(state.range(0)));
    Rng rng = make_rng(4);
    ColumnPowerEngine e(pr.system, BlockCombiner(make_combined_cyclic(48, 3, rng), DecodeRule::Substitute),
                        state.range(1) != 0);
    std::uint64_t t = 0;
    for (auto _ : state) {
        const auto s = draw_survivors(96, {ErasureKind::FixedFraction, 0.5}, rng);
        e.step(++t, s, rng);
    }
}
BENCHMARK(BM_ColumnStep)->Args({5000, 1})->Args({5000, 0});

}  // namespace

BENCHMARK_MAIN();
