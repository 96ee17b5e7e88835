#include <random>

#include <benchmark/benchmark.h>

#include "cyclotome/algebra/constructions.hpp"
#include "cyclotome/cyclic/homology.hpp"
#include "cyclotome/linalg/kernels.hpp"

using namespace cyclotome;

namespace {

// Hochschild boundary d_q of a group algebra, the typical production input.
template <class F>
SparseMat<typename F::value_type> hochschild_boundary(const F& f, const Ring& ring, int q) {
    const Algebra a = group_algebra(GroupTable::symmetric(3), ring);
    const ChainComplex c = hochschild_complex(a, q);
    return fill_reducing_order(convert(f, c.diffs[static_cast<std::size_t>(q - c.lo - 1)]));
}

SparseMat<std::uint32_t> random_matrix(const Fp& f, std::size_t rows, std::size_t cols, double density) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<long> val(1, 1000);
    SparseMat<std::uint32_t> m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i)
            if (u(rng) < density) m.col(j).push_back({static_cast<std::uint32_t>(i), f.from_int(val(rng))});
    return m;
}

const Fp field{65521};

void set_threads_from(benchmark::State& state) { set_threads(static_cast<int>(state.range(0))); }

void BM_HochschildRankSerial(benchmark::State& state) {
    const auto m = hochschild_boundary(field, Ring::prime_field(65521), 4);
    for (auto _ : state) benchmark::DoNotOptimize(rank_serial(field, m));
    state.counters["cols"] = static_cast<double>(m.cols());
}

void BM_HochschildRankParallel(benchmark::State& state) {
    set_threads_from(state);
    const auto m = hochschild_boundary(field, Ring::prime_field(65521), 4);
    for (auto _ : state) benchmark::DoNotOptimize(rank_parallel(field, m));
    state.counters["cols"] = static_cast<double>(m.cols());
}

void BM_RandomRankSerial(benchmark::State& state) {
    const auto m = random_matrix(field, 1500, 2500, 0.004);
    for (auto _ : state) benchmark::DoNotOptimize(rank_serial(field, m));
}

void BM_RandomRankParallel(benchmark::State& state) {
    set_threads_from(state);
    const auto m = random_matrix(field, 1500, 2500, 0.004);
    for (auto _ : state) benchmark::DoNotOptimize(rank_parallel(field, m));
}

// Column-wise product d_{q} d_{q+1}: the shape of the identity checks.
template <bool Parallel>
void BM_ProductColumns(benchmark::State& state) {
    if constexpr (Parallel) set_threads_from(state);
    const Algebra a = group_algebra(GroupTable::symmetric(3), Ring::prime_field(65521));
    const ChainComplex c = hochschild_complex(a, 4);
    const auto lower = convert(field, c.diffs[2]), upper = convert(field, c.diffs[3]);
    auto column = [&](std::size_t j) {
        SparseVec<std::uint32_t> acc;
        for (const auto& e : upper.col(j)) acc = axpy(field, acc, e.value, lower.col(e.index));
        return acc;
    };
    for (auto _ : state) {
        auto m = Parallel ? build_columns_parallel<std::uint32_t>(lower.rows(), upper.cols(), column)
                          : build_columns_serial<std::uint32_t>(lower.rows(), upper.cols(), column);
        benchmark::DoNotOptimize(m.nnz());
    }
}

void BM_RationalRankElimination(benchmark::State& state) {
    const Qf q;
    const auto m = hochschild_boundary(q, Ring::rationals(), 3);
    for (auto _ : state) benchmark::DoNotOptimize(rank_serial(q, m));
}

void BM_RationalRankModular(benchmark::State& state) {
    const Qf q;
    const auto m = hochschild_boundary(q, Ring::rationals(), 3);
    for (auto _ : state) benchmark::DoNotOptimize(rank_rational_modular(m));
}

}  // namespace

BENCHMARK(BM_HochschildRankSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HochschildRankParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RandomRankSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomRankParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ProductColumns<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProductColumns<true>)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RationalRankElimination)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RationalRankModular)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
