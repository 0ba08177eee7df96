// Serial versus OpenMP versions of the two parallel kernels: the subset-DP
// oracle and the search over orderings of U.

#include "asapt/bounds.hpp"
#include "asapt/dp_solver.hpp"
#include "asapt/generators.hpp"
#include "asapt/reduction.hpp"
#include "support.hpp"

#include <benchmark/benchmark.h>

#include <stdexcept>

using namespace asapt;

namespace {

OrientedGraph oracle_input(Vertex n) { return gen_connected_oriented(n, 0.4, 17 + static_cast<std::uint64_t>(n)); }

// A graph whose decomposition leaves exactly `size` vertices in U. The
// parameter is large so decompose never stops early with a certificate.
std::pair<OrientedGraph, VertexSet> ordering_input(std::size_t size) {
    SplitMix64 rng(size);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const OrientedGraph g = testing::near_tight_graph(rng, 8, static_cast<int>(rng.below(8)), static_cast<int>(rng.below(4)));
        if (!is_connected(g)) continue;
        const DecomposeResult d = decompose(Instance{g, 1000});
        if (!d.yes_certificate && d.u.size() == size) return {g, d.u};
    }
    throw std::runtime_error("no decomposition of the requested size");
}

void BM_OracleSerial(benchmark::State& state) {
    const OrientedGraph g = oracle_input(static_cast<Vertex>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(oracle_max_acyclic_serial(g).a);
}

void BM_OracleParallel(benchmark::State& state) {
    const OrientedGraph g = oracle_input(static_cast<Vertex>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(oracle_max_acyclic(g).a);
}

void BM_OrderingsSerial(benchmark::State& state) {
    const auto [g, u] = ordering_input(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(search_orderings_serial(g, u).best);
}

void BM_OrderingsParallel(benchmark::State& state) {
    const auto [g, u] = ordering_input(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(search_orderings(g, u).best);
}

} // namespace

BENCHMARK(BM_OracleSerial)->DenseRange(14, 18, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->DenseRange(14, 18, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrderingsSerial)->DenseRange(5, 7, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrderingsParallel)->DenseRange(5, 7, 1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
