#ifndef WAO_EVOLUTION_HPP
#define WAO_EVOLUTION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "wao/flow_fitness.hpp"
#include "wao/graph.hpp"
#include "wao/orientation.hpp"

namespace wao {

struct GAConfig {
    std::size_t generations = 0;      // g, counting the initial population
    std::size_t population_size = 0;  // s
    double elite_fraction = 0.05;     // f
    double crossover_probability = 0.2;
    double normalization_factor = 15.0;  // L
    std::uint64_t seed = 1;
    std::size_t runs = 20;
    std::optional<std::size_t> target;  // stop once a set this large is found
    std::size_t threads = 1;            // fitness evaluation workers

    // g = 10n, s = ceil(1.5n), f = 0.05, p_c = 0.2.
    static GAConfig defaults_for(std::size_t node_count, double normalization_factor = 15.0);

    // Throws std::invalid_argument on out-of-range parameters.
    void validate() const;

    // floor(f * s), but at least one when f > 0.
    std::size_t elite_count() const;
};

// Selection weight of the k-th fittest individual (1-based rank) in a
// population of s: a linear ramp from L at k = 1 down to 1 at k = s.
// Returns 1 for every rank when s < 2.
double rank_weight(std::size_t rank, std::size_t population_size, double normalization_factor);

enum class Origin { initial, elite, crossover, mutation };

struct Individual {
    LinearRepresentation representation;
    std::int64_t fitness = 0;
    std::vector<NodeId> independent_set;  // witnessed by the minimum cut
    std::vector<NodeId> successors;       // chains, reused to seed offspring
    std::size_t insertion_index = 0;
    Origin origin = Origin::initial;
};

// Fixed-size collection ranked by fitness (descending), ties going to the
// earlier insertion.
class Population {
public:
    Population() = default;
    Population(std::vector<Individual> members, std::size_t generation);

    const std::vector<Individual>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    std::size_t generation() const { return generation_; }
    const Individual& fittest() const { return members_.front(); }
    const Individual& at_rank(std::size_t rank) const { return members_[rank - 1]; }

private:
    std::vector<Individual> members_;
    std::size_t generation_ = 0;
};

// Rank-proportional parent selection. The weights depend only on s and L,
// so one selector serves a whole run.
class RankSelector {
public:
    RankSelector(std::size_t population_size, double normalization_factor);

    // 1-based rank of the chosen individual.
    std::size_t draw_rank(Rng& rng) const;
    const Individual& select(const Population& pop, Rng& rng) const;

    double probability(std::size_t rank) const;

private:
    std::vector<double> weights_;
    mutable std::discrete_distribution<std::size_t> distribution_;
};

struct Evaluation {
    std::int64_t fitness = 0;
    std::vector<NodeId> independent_set;
    std::vector<NodeId> successors;
};

// Parent chains handed to evaluate_fitness as a warm start.
struct Seeds {
    std::span<const NodeId> first;
    std::span<const NodeId> second;
};

// Fitness of a batch of representations. Results are in input order no
// matter how many worker threads share the batch.
class Evaluator {
public:
    Evaluator(const Graph& g, std::size_t threads = 1);

    // seeds is empty or parallel to batch.
    std::vector<Evaluation> operator()(std::span<const LinearRepresentation> batch,
                                       std::span<const Seeds> seeds = {});

    std::size_t evaluations() const { return evaluations_; }
    const Graph& graph() const { return fitness_.graph(); }

private:
    FitnessEvaluator fitness_;
    std::size_t threads_;
    std::size_t evaluations_ = 0;
};

// Elites first, then crossover pairs / mutants until the population is full.
// All random draws come from rng on the calling thread, in this order per
// slot: branch draw, parent rank(s), cut point.
Population next_generation(const Population& pop, const GAConfig& cfg,
                           const RankSelector& selector, Evaluator& evaluate, Rng& rng);

struct RunResult {
    std::uint64_t seed = 0;
    std::vector<NodeId> best_set;  // sorted, 0-based
    std::size_t best_size = 0;
    std::int64_t best_fitness = 0;
    std::size_t generation_found = 0;  // 1-based generation of best_set
    std::size_t generations_completed = 0;
    std::vector<std::int64_t> history;  // best fitness so far, per generation
    std::size_t evaluations = 0;
    double wall_seconds = 0.0;  // informational only
};

// One run seeded with `seed`. The best set is the largest independent set
// extracted from any evaluated individual.
RunResult run(const Graph& g, const GAConfig& cfg, std::uint64_t seed);

struct MultiRunResult {
    std::vector<RunResult> runs;
    std::size_t best_run = 0;  // index into runs
    std::size_t best_size = 0;
    std::vector<NodeId> best_set;
};

// cfg.runs runs with seeds seed, seed + 1, ... . With a target set, no
// further runs start once one of them reaches it.
MultiRunResult best_of_runs(const Graph& g, const GAConfig& cfg);

}  // namespace wao

#endif  // WAO_EVOLUTION_HPP
