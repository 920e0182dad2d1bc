#include <doctest.h>

#include <cmath>
#include <map>

#include "test_support.hpp"
#include "wao/evolution.hpp"

using namespace wao;

namespace {

Population random_population(const Graph& g, std::size_t s, Rng& rng) {
    std::vector<Individual> members;
    for (std::size_t i = 0; i < s; ++i) {
        Individual ind;
        ind.representation = random_representation(g.node_count(), rng);
        auto r = evaluate_fitness(g, ind.representation);
        ind.fitness = r.fitness;
        ind.independent_set = r.independent_set;
        ind.insertion_index = i;
        members.push_back(std::move(ind));
    }
    return Population(std::move(members), 1);
}

GAConfig small_config(std::size_t g, std::size_t s) {
    GAConfig cfg;
    cfg.generations = g;
    cfg.population_size = s;
    cfg.runs = 1;
    return cfg;
}

}  // namespace

TEST_CASE("defaults scale with n") {
    auto cfg = GAConfig::defaults_for(200);
    CHECK(cfg.generations == 2000);
    CHECK(cfg.population_size == 300);
    CHECK(cfg.elite_count() == 15);
    CHECK(GAConfig::defaults_for(5).population_size == 8);  // ceil(7.5)
    CHECK(GAConfig::defaults_for(28).population_size == 42);
    CHECK(cfg.crossover_probability == doctest::Approx(0.2));
    CHECK(cfg.normalization_factor == doctest::Approx(15.0));
}

TEST_CASE("config validation") {
    auto cfg = small_config(5, 4);
    CHECK_NOTHROW(cfg.validate());
    auto bad = cfg;
    bad.normalization_factor = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.crossover_probability = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.population_size = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.elite_fraction = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("rank weights") {
    CHECK(rank_weight(1, 10, 15) == doctest::Approx(15));
    CHECK(rank_weight(10, 10, 15) == doctest::Approx(1));
    CHECK(rank_weight(5, 8, 15) == doctest::Approx(7));
    CHECK(rank_weight(1, 1, 15) == doctest::Approx(1));
    CHECK_THROWS_AS(rank_weight(0, 10, 15), std::invalid_argument);
    CHECK_THROWS_AS(rank_weight(11, 10, 15), std::invalid_argument);

    RankSelector two(2, 15);
    CHECK(two.probability(1) == doctest::Approx(15.0 / 16.0));
    CHECK(two.probability(2) == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("selection frequencies follow the rank weights") {
    const std::size_t s = 10;
    RankSelector selector(s, 15);
    Rng rng(8);
    const int draws = 100000;
    std::vector<int> counts(s + 1, 0);
    for (int i = 0; i < draws; ++i) ++counts[selector.draw_rank(rng)];
    double total = 0;
    for (std::size_t k = 1; k <= s; ++k) total += rank_weight(k, s, 15);
    for (std::size_t k = 1; k <= s; ++k) {
        double p = rank_weight(k, s, 15) / total;
        double sigma = std::sqrt(draws * p * (1 - p));
        CHECK(std::abs(counts[k] - draws * p) <= 3 * sigma);
    }
}

TEST_CASE("population ranks ties by insertion order") {
    std::vector<Individual> members(3);
    for (std::size_t i = 0; i < 3; ++i) {
        members[i].representation = LinearRepresentation(std::vector<NodeId>{0, 1});
        members[i].insertion_index = i;
    }
    members[0].fitness = 1;
    members[1].fitness = 2;
    members[2].fitness = 2;
    Population pop(members, 1);
    CHECK(pop.at_rank(1).insertion_index == 1);
    CHECK(pop.at_rank(2).insertion_index == 2);
    CHECK(pop.at_rank(3).insertion_index == 0);
}

TEST_CASE("elite count") {
    auto cfg = small_config(1, 300);
    CHECK(cfg.elite_count() == 15);
    cfg.population_size = 8;
    CHECK(cfg.elite_count() == 1);
    cfg.elite_fraction = 0;
    CHECK(cfg.elite_count() == 0);
}

TEST_CASE("branch probabilities at the extremes") {
    Graph g = cycle_graph(9);
    Rng rng(3);
    Population pop = random_population(g, 12, rng);
    auto cfg = small_config(10, 12);
    RankSelector selector(12, cfg.normalization_factor);
    Evaluator evaluate(g);

    cfg.crossover_probability = 0.0;
    auto mutants = next_generation(pop, cfg, selector, evaluate, rng);
    std::size_t elites = 0;
    for (const auto& ind : mutants.members()) {
        if (ind.origin == Origin::elite) ++elites;
        else CHECK(ind.origin == Origin::mutation);
    }
    CHECK(elites == cfg.elite_count());
    CHECK(mutants.size() == 12);

    cfg.crossover_probability = 1.0;
    auto crossed = next_generation(pop, cfg, selector, evaluate, rng);
    std::size_t from_crossover = 0, from_mutation = 0;
    for (const auto& ind : crossed.members()) {
        from_crossover += ind.origin == Origin::crossover;
        from_mutation += ind.origin == Origin::mutation;
    }
    // 11 open slots: five pairs, then one slot too few for a pair.
    CHECK(from_crossover == 10);
    CHECK(from_mutation == 1);
}

TEST_CASE("elites survive unchanged") {
    Rng rng(10);
    Graph g = testing::random_graph(15, 0.4, rng);
    auto cfg = small_config(10, 40);
    cfg.elite_fraction = 0.1;
    Population pop = random_population(g, 40, rng);
    RankSelector selector(40, cfg.normalization_factor);
    Evaluator evaluate(g);
    auto next = next_generation(pop, cfg, selector, evaluate, rng);
    CHECK(next.generation() == 2);
    std::size_t seen = 0;
    for (const auto& ind : next.members()) {
        if (ind.origin != Origin::elite) continue;
        CHECK(ind.representation == pop.at_rank(ind.insertion_index + 1).representation);
        ++seen;
    }
    CHECK(seen == 4);
    CHECK(next.fittest().fitness >= pop.fittest().fitness);
}

TEST_CASE("edgeless graph is solved by the first generation") {
    Graph g = empty_graph(10);
    auto r = run(g, small_config(100, 15), 1);
    CHECK(r.best_size == 10);
    CHECK(r.generation_found == 1);
    for (auto h : r.history) CHECK(h == 10);
}

TEST_CASE("complete graph") {
    auto r = run(complete_graph(8), small_config(20, 12), 4);
    CHECK(r.best_size == 1);
    CHECK(r.best_fitness == 1);
}

TEST_CASE("five-cycle reaches two") {
    auto r = run(cycle_graph(5), small_config(50, 8), 1);
    CHECK(r.best_size == 2);
    CHECK(r.history.size() == 50);
    CHECK(r.history.back() == 2);
}

TEST_CASE("history is monotone and sets verify") {
    Rng rng(55);
    for (int t = 0; t < 10; ++t) {
        Graph g = testing::random_graph(25, 0.3, rng);
        auto r = run(g, small_config(30, 20), 100 + t);
        CHECK(r.history.size() == 30);
        for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] >= r.history[i - 1]);
        CHECK_FALSE(verify_independent_set(g, r.best_set).has_value());
        CHECK(static_cast<std::int64_t>(r.best_size) >= r.best_fitness);
        CHECK(r.evaluations == 20 + 29 * (20 - 1));
    }
}

TEST_CASE("thread count does not change results") {
    Rng rng(77);
    Graph g = testing::random_graph(40, 0.2, rng);
    auto cfg = small_config(40, 30);
    auto one = run(g, cfg, 9);
    cfg.threads = 4;
    auto four = run(g, cfg, 9);
    CHECK(one.best_set == four.best_set);
    CHECK(one.history == four.history);
    CHECK(one.generation_found == four.generation_found);
}

TEST_CASE("multiple runs use consecutive seeds") {
    Graph g = cycle_graph(11);
    auto cfg = small_config(15, 10);
    cfg.seed = 7;
    cfg.runs = 3;
    auto multi = best_of_runs(g, cfg);
    REQUIRE(multi.runs.size() == 3);
    for (std::size_t r = 0; r < 3; ++r) {
        auto single = run(g, cfg, 7 + r);
        CHECK(multi.runs[r].seed == 7 + r);
        CHECK(multi.runs[r].best_set == single.best_set);
    }
    cfg.runs = 1;
    CHECK(best_of_runs(g, cfg).best_set == run(g, cfg, 7).best_set);
}

TEST_CASE("target stops early") {
    Graph g = empty_graph(6);
    auto cfg = small_config(100, 9);
    cfg.runs = 5;
    cfg.target = 6;
    auto multi = best_of_runs(g, cfg);
    CHECK(multi.runs.size() == 1);
    CHECK(multi.runs[0].generations_completed == 1);
}
