#include <benchmark/benchmark.h>

#include "support/generators.hpp"
#include "support/instances.hpp"
#include "tetris/benchgen.hpp"
#include "tetris/cluster_trie.hpp"
#include "tetris/ordering.hpp"
#include "tetris/solver.hpp"

using namespace tetris;

namespace {

std::vector<Box> random_boxes(std::size_t n, int count, std::uint64_t seed)
{
    testing::Rng rng(seed);
    std::vector<Box> out;
    for (int i = 0; i < count; ++i)
        out.push_back(testing::random_box(rng, n, 0.6));
    return out;
}

const CnfProblem &triangle_instance()
{
    static const CnfProblem cnf = [] {
        testing::Rng rng(7077);
        return generate_cnf(testing::random_graph(rng, 64, 0.15), {QueryKind::Clique, 3});
    }();
    return cnf;
}

const CnfProblem &ais6()
{
    static const CnfProblem cnf = testing::all_interval_series(6);
    return cnf;
}

void BM_TrieInsert(benchmark::State &state)
{
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto boxes = random_boxes(n, 2000, 1);
    for (auto _ : state) {
        BoxDatabase db(n);
        for (const auto &b : boxes)
            db.insert(b);
        benchmark::DoNotOptimize(db.empty());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(boxes.size()));
}
BENCHMARK(BM_TrieInsert)->Arg(16)->Arg(64)->Arg(128);

void BM_TrieFind(benchmark::State &state)
{
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    BoxDatabase db(n, state.range(1) != 0);
    for (const auto &b : random_boxes(n, 2000, 2))
        db.insert(b);
    testing::Rng rng(3);
    std::vector<Box> queries;
    for (int i = 0; i < 256; ++i)
        queries.push_back(testing::random_point(rng, n));
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(db.find_containing(queries[i++ & 255]));
}
BENCHMARK(BM_TrieFind)->Args({16, 1})->Args({64, 1})->Args({64, 0})->Args({128, 1});

void BM_TrieAllContaining(benchmark::State &state)
{
    const std::size_t n = 64;
    BoxDatabase db(n);
    for (const auto &b : random_boxes(n, 2000, 4))
        db.insert(b);
    testing::Rng rng(5);
    std::vector<Box> queries;
    for (int i = 0; i < 256; ++i)
        queries.push_back(testing::random_point(rng, n));
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(db.all_containing(queries[i++ & 255]));
}
BENCHMARK(BM_TrieAllContaining);

void BM_Ordering(benchmark::State &state)
{
    const auto strategy = kAllOrderingStrategies[state.range(0)];
    state.SetLabel(std::string(to_string(strategy)));
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_ordering(triangle_instance(), strategy));
}
BENCHMARK(BM_Ordering)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_CountTriangles(benchmark::State &state)
{
    SolverConfig c;
    c.insertion_ratio = Rational(state.range(0), 100);
    for (auto _ : state)
        benchmark::DoNotOptimize(count_models(triangle_instance(), c).model_count);
}
BENCHMARK(BM_CountTriangles)->Arg(0)->Arg(45)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CountAllIntervalSeries(benchmark::State &state)
{
    SolverConfig c;
    c.cache_lookup = state.range(0) ? CacheLookup::MinimalIndex : CacheLookup::FirstHit;
    state.SetLabel(state.range(0) ? "minimal-index" : "first-hit");
    for (auto _ : state)
        benchmark::DoNotOptimize(count_models(ais6(), c).model_count);
}
BENCHMARK(BM_CountAllIntervalSeries)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
