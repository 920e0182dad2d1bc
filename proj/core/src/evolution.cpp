#include "wao/evolution.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace wao {

GAConfig GAConfig::defaults_for(std::size_t node_count, double normalization_factor) {
    GAConfig cfg;
    cfg.generations = 10 * node_count;
    cfg.population_size = (3 * node_count + 1) / 2;
    cfg.normalization_factor = normalization_factor;
    return cfg;
}

void GAConfig::validate() const {
    if (generations < 1) throw std::invalid_argument("generations must be at least 1");
    if (population_size < 1) throw std::invalid_argument("population size must be at least 1");
    if (!(elite_fraction >= 0.0 && elite_fraction < 1.0))
        throw std::invalid_argument("elite fraction must lie in [0, 1)");
    if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0))
        throw std::invalid_argument("crossover probability must lie in [0, 1]");
    if (!(normalization_factor > 1.0))
        throw std::invalid_argument("normalization factor L must exceed 1");
    if (runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

std::size_t GAConfig::elite_count() const {
    if (elite_fraction <= 0.0) return 0;
    // The epsilon keeps products like 0.29 * 100 from rounding down a notch.
    auto count = static_cast<std::size_t>(
        std::floor(elite_fraction * static_cast<double>(population_size) + 1e-9));
    count = std::max<std::size_t>(count, 1);
    return std::min(count, population_size > 0 ? population_size - 1 : 0);
}

double rank_weight(std::size_t rank, std::size_t population_size, double normalization_factor) {
    if (population_size < 2) return 1.0;
    if (rank < 1 || rank > population_size) {
        throw std::invalid_argument("rank " + std::to_string(rank) + " outside [1, " +
                                    std::to_string(population_size) + "]");
    }
    const double step =
        (normalization_factor - 1.0) / static_cast<double>(population_size - 1);
    return normalization_factor - step * static_cast<double>(rank - 1);
}

Population::Population(std::vector<Individual> members, std::size_t generation)
    : members_(std::move(members)), generation_(generation) {
    std::sort(members_.begin(), members_.end(), [](const Individual& a, const Individual& b) {
        if (a.fitness != b.fitness) return a.fitness > b.fitness;
        return a.insertion_index < b.insertion_index;
    });
}

RankSelector::RankSelector(std::size_t population_size, double normalization_factor) {
    if (population_size == 0) {
        throw std::invalid_argument("cannot select from an empty population");
    }
    weights_.reserve(population_size);
    for (std::size_t k = 1; k <= population_size; ++k) {
        weights_.push_back(rank_weight(k, population_size, normalization_factor));
    }
    distribution_ = std::discrete_distribution<std::size_t>(weights_.begin(), weights_.end());
}

std::size_t RankSelector::draw_rank(Rng& rng) const { return distribution_(rng) + 1; }

const Individual& RankSelector::select(const Population& pop, Rng& rng) const {
    if (pop.size() != weights_.size()) {
        throw std::invalid_argument("selector built for a different population size");
    }
    return pop.at_rank(draw_rank(rng));
}

double RankSelector::probability(std::size_t rank) const {
    double total = 0.0;
    for (double w : weights_) total += w;
    return weights_.at(rank - 1) / total;
}

Evaluator::Evaluator(const Graph& g, std::size_t threads)
    : fitness_(g), threads_(std::max<std::size_t>(threads, 1)) {}

std::vector<Evaluation> Evaluator::operator()(std::span<const LinearRepresentation> batch,
                                              std::span<const Seeds> seeds) {
    if (!seeds.empty() && seeds.size() != batch.size()) {
        throw std::invalid_argument("seeds must match the batch");
    }
    std::vector<Evaluation> results(batch.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Seeds seed = seeds.empty() ? Seeds{} : seeds[i];
            FitnessResult r = fitness_(batch[i], seed.first, seed.second);
            results[i].fitness = r.fitness;
            results[i].independent_set = std::move(r.independent_set);
            results[i].successors = std::move(r.successors);
        }
    };
    const std::size_t workers = std::min(threads_, batch.size());
    if (workers <= 1) {
        work(0, batch.size());
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (batch.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            std::size_t begin = w * chunk;
            std::size_t end = std::min(batch.size(), begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
    }
    evaluations_ += batch.size();
    return results;
}

namespace {

std::vector<Individual> make_individuals(std::vector<LinearRepresentation> reps,
                                         std::vector<Origin> origins, Evaluator& evaluate,
                                         std::size_t first_index,
                                         std::span<const Seeds> seeds = {}) {
    std::vector<Evaluation> scores = evaluate(reps, seeds);
    std::vector<Individual> out;
    out.reserve(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        Individual ind;
        ind.representation = std::move(reps[i]);
        ind.fitness = scores[i].fitness;
        ind.independent_set = std::move(scores[i].independent_set);
        ind.successors = std::move(scores[i].successors);
        ind.insertion_index = first_index + i;
        ind.origin = origins[i];
        out.push_back(std::move(ind));
    }
    return out;
}

}  // namespace

Population next_generation(const Population& pop, const GAConfig& cfg,
                           const RankSelector& selector, Evaluator& evaluate, Rng& rng) {
    const std::size_t s = cfg.population_size;
    if (pop.size() != s) {
        throw std::invalid_argument("population is not full");
    }
    const std::size_t n = pop.fittest().representation.size();
    const std::size_t elites = std::min(cfg.elite_count(), s);

    std::vector<Individual> next;
    next.reserve(s);
    for (std::size_t i = 0; i < elites; ++i) {
        Individual copy = pop.members()[i];
        copy.insertion_index = i;
        copy.origin = Origin::elite;
        next.push_back(std::move(copy));
    }

    std::vector<LinearRepresentation> children;
    std::vector<Origin> origins;
    std::vector<Seeds> seeds;
    children.reserve(s - elites);
    std::uniform_real_distribution<double> branch(0.0, 1.0);
    while (elites + children.size() < s) {
        const std::size_t remaining = s - elites - children.size();
        const bool crossover_drawn = branch(rng) < cfg.crossover_probability;
        if (crossover_drawn && remaining >= 2 && n >= 2) {
            const auto& first = selector.select(pop, rng);
            const auto& second = selector.select(pop, rng);
            std::uniform_int_distribution<std::size_t> point(1, n - 1);
            auto [a, b] = crossover(first.representation, second.representation, point(rng));
            children.push_back(std::move(a));
            children.push_back(std::move(b));
            origins.push_back(Origin::crossover);
            origins.push_back(Origin::crossover);
            seeds.push_back({first.successors, second.successors});
            seeds.push_back({second.successors, first.successors});
        } else {
            const auto& parent = selector.select(pop, rng);
            std::uniform_int_distribution<std::size_t> point(1, n);
            children.push_back(mutate(parent.representation, point(rng)));
            origins.push_back(Origin::mutation);
            seeds.push_back({parent.successors, {}});
        }
    }

    auto evaluated = make_individuals(std::move(children), std::move(origins), evaluate, elites, seeds);
    std::move(evaluated.begin(), evaluated.end(), std::back_inserter(next));
    return Population(std::move(next), pop.generation() + 1);
}

RunResult run(const Graph& g, const GAConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (g.node_count() == 0) {
        throw std::invalid_argument("cannot search an empty graph");
    }
    const auto started = std::chrono::steady_clock::now();
    Rng rng(seed);
    Evaluator evaluate(g, cfg.threads);
    RankSelector selector(cfg.population_size, cfg.normalization_factor);

    RunResult result;
    result.seed = seed;
    result.best_fitness = -1;

    auto absorb = [&](const Population& pop) {
        for (const Individual& ind : pop.members()) {
            if (ind.origin == Origin::elite) continue;
            result.best_fitness = std::max(result.best_fitness, ind.fitness);
            if (result.generation_found == 0 || ind.independent_set.size() > result.best_size) {
                result.best_set = ind.independent_set;
                result.best_size = ind.independent_set.size();
                result.generation_found = pop.generation();
            }
        }
        result.history.push_back(result.best_fitness);
        result.generations_completed = pop.generation();
    };
    auto reached_target = [&] { return cfg.target && result.best_size >= *cfg.target; };

    std::vector<LinearRepresentation> initial;
    initial.reserve(cfg.population_size);
    for (std::size_t i = 0; i < cfg.population_size; ++i) {
        initial.push_back(random_representation(g.node_count(), rng));
    }
    std::vector<Origin> origins(cfg.population_size, Origin::initial);
    Population pop(make_individuals(std::move(initial), std::move(origins), evaluate, 0), 1);
    absorb(pop);

    while (pop.generation() < cfg.generations && !reached_target()) {
        pop = next_generation(pop, cfg, selector, evaluate, rng);
        absorb(pop);
    }
    result.evaluations = evaluate.evaluations();
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

MultiRunResult best_of_runs(const Graph& g, const GAConfig& cfg) {
    cfg.validate();
    MultiRunResult out;
    for (std::size_t r = 0; r < cfg.runs; ++r) {
        out.runs.push_back(run(g, cfg, cfg.seed + r));
        const RunResult& latest = out.runs.back();
        if (r == 0 || latest.best_size > out.best_size) {
            out.best_run = r;
            out.best_size = latest.best_size;
            out.best_set = latest.best_set;
        }
        if (cfg.target && out.best_size >= *cfg.target) break;
    }
    return out;
}

}  // namespace wao
