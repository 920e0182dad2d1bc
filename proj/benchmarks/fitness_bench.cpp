#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "wao/evolution.hpp"
#include "wao/flow_fitness.hpp"

namespace {

wao::Graph random_graph(std::size_t n, double density, std::uint64_t seed) {
    wao::Rng rng(seed);
    std::bernoulli_distribution coin(density);
    std::vector<wao::Edge> edges;
    for (wao::NodeId i = 0; i < n; ++i)
        for (wao::NodeId j = i + 1; j < n; ++j)
            if (coin(rng)) edges.push_back({i, j});
    return wao::Graph(n, edges);
}

// args: n, density in percent
void BM_Fitness(benchmark::State& state, wao::FitnessEvaluator::Layout layout) {
    const auto n = static_cast<std::size_t>(state.range(0));
    wao::Graph g = random_graph(n, state.range(1) / 100.0, 7);
    wao::FitnessEvaluator evaluate(g, layout);
    wao::Rng rng(1);
    std::vector<wao::LinearRepresentation> reps;
    for (int i = 0; i < 64; ++i) reps.push_back(wao::random_representation(n, rng));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(reps[i++ % reps.size()]).fitness);
    }
    state.counters["m"] = static_cast<double>(g.edge_count());
}
BENCHMARK_CAPTURE(BM_Fitness, bit_rows, wao::FitnessEvaluator::Layout::bit_rows)
    ->Args({200, 10})->Args({200, 50})->Args({200, 90})->Args({1000, 50});
BENCHMARK_CAPTURE(BM_Fitness, arc_lists, wao::FitnessEvaluator::Layout::arc_lists)
    ->Args({200, 10})->Args({200, 50})->Args({200, 90})->Args({1000, 50});

// A mutant evaluated with its parent's chains as the starting matching.
void BM_SeededMutant(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    wao::Graph g = random_graph(n, 0.9, 7);
    wao::FitnessEvaluator evaluate(g);
    wao::Rng rng(2);
    auto parent = wao::random_representation(n, rng);
    auto seed = evaluate(parent).successors;
    std::vector<wao::LinearRepresentation> mutants;
    for (std::size_t z = 1; z <= n; ++z) mutants.push_back(wao::mutate(parent, z));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(mutants[i++ % mutants.size()], seed).fitness);
    }
}
BENCHMARK(BM_SeededMutant)->Arg(200)->Arg(1000);

void BM_PushRelabel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    wao::Graph g = random_graph(n, state.range(1) / 100.0, 7);
    wao::Rng rng(3);
    auto net = wao::build_network(g, wao::induce_orientation(g, wao::random_representation(n, rng)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wao::max_flow(net).value);
    }
}
BENCHMARK(BM_PushRelabel)->Args({200, 10})->Args({200, 90});

void BM_Generation(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    wao::Graph g = random_graph(n, 0.9, 11);
    wao::GAConfig cfg = wao::GAConfig::defaults_for(n);
    wao::RankSelector selector(cfg.population_size, cfg.normalization_factor);
    wao::Evaluator evaluate(g);
    wao::Rng rng(4);
    std::vector<wao::Individual> members;
    for (std::size_t i = 0; i < cfg.population_size; ++i) {
        wao::Individual ind;
        ind.representation = wao::random_representation(n, rng);
        auto r = wao::evaluate_fitness(g, ind.representation);
        ind.fitness = r.fitness;
        ind.independent_set = r.independent_set;
        ind.successors = r.successors;
        ind.insertion_index = i;
        members.push_back(std::move(ind));
    }
    wao::Population pop(std::move(members), 1);
    for (auto _ : state) {
        pop = wao::next_generation(pop, cfg, selector, evaluate, rng);
    }
}
BENCHMARK(BM_Generation)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
