#include "report.hpp"

#include <sstream>

namespace wao::cli {

using nlohmann::json;

json config_to_json(const GAConfig& cfg) {
    json j;
    j["generations"] = cfg.generations;
    j["population_size"] = cfg.population_size;
    j["elite_fraction"] = cfg.elite_fraction;
    j["crossover_probability"] = cfg.crossover_probability;
    j["L"] = cfg.normalization_factor;
    j["seed"] = cfg.seed;
    j["runs"] = cfg.runs;
    j["target"] = cfg.target ? json(*cfg.target) : json(nullptr);
    j["threads"] = cfg.threads;
    return j;
}

GAConfig config_from_json(const json& j, GAConfig base) {
    const json& c = j.contains("config") ? j.at("config") : j;
    if (c.contains("generations")) base.generations = c.at("generations").get<std::size_t>();
    if (c.contains("population_size"))
        base.population_size = c.at("population_size").get<std::size_t>();
    if (c.contains("elite_fraction")) base.elite_fraction = c.at("elite_fraction").get<double>();
    if (c.contains("crossover_probability"))
        base.crossover_probability = c.at("crossover_probability").get<double>();
    if (c.contains("L")) base.normalization_factor = c.at("L").get<double>();
    if (c.contains("seed")) base.seed = c.at("seed").get<std::uint64_t>();
    if (c.contains("runs")) base.runs = c.at("runs").get<std::size_t>();
    if (c.contains("target")) {
        if (c.at("target").is_null()) {
            base.target.reset();
        } else {
            base.target = c.at("target").get<std::size_t>();
        }
    }
    if (c.contains("threads")) base.threads = c.at("threads").get<std::size_t>();
    return base;
}

std::vector<std::size_t> to_one_based(const std::vector<NodeId>& nodes) {
    std::vector<std::size_t> out;
    out.reserve(nodes.size());
    for (NodeId v : nodes) out.push_back(std::size_t{v} + 1);
    return out;
}

json run_to_json(const RunResult& run, std::size_t index, bool timing) {
    json j;
    j["run"] = index + 1;
    j["seed"] = run.seed;
    j["best_size"] = run.best_size;
    j["best_fitness"] = run.best_fitness;
    j["best_set"] = to_one_based(run.best_set);
    j["generation_found"] = run.generation_found;
    j["generations_completed"] = run.generations_completed;
    j["evaluations"] = run.evaluations;
    j["history"] = run.history;
    if (timing) j["wall_seconds"] = run.wall_seconds;
    return j;
}

json report_to_json(const SolveReport& report, bool timing) {
    json j;
    j["instance"] = report.instance;
    j["n"] = report.n;
    j["m"] = report.m;
    j["complemented"] = report.complemented;
    j["config"] = config_to_json(report.config);
    json runs = json::array();
    for (std::size_t r = 0; r < report.result.runs.size(); ++r) {
        runs.push_back(run_to_json(report.result.runs[r], r, timing));
    }
    j["runs"] = std::move(runs);
    j["best_run"] = report.result.best_run + 1;
    j["best_size"] = report.result.best_size;
    j["best_set"] = to_one_based(report.result.best_set);
    return j;
}

namespace {

std::string join(const std::vector<std::size_t>& values, char sep) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << sep;
        out << values[i];
    }
    return out.str();
}

}  // namespace

std::string report_to_csv(const SolveReport& report, bool timing) {
    std::ostringstream out;
    out << "instance,complemented,n,m,run,seed,best_size,best_fitness,generation_found,"
           "generations_completed,evaluations";
    if (timing) out << ",wall_seconds";
    out << ",best_set\n";
    for (std::size_t r = 0; r < report.result.runs.size(); ++r) {
        const RunResult& run = report.result.runs[r];
        out << report.instance << ',' << (report.complemented ? 1 : 0) << ',' << report.n << ','
            << report.m << ',' << r + 1 << ',' << run.seed << ',' << run.best_size << ','
            << run.best_fitness << ',' << run.generation_found << ','
            << run.generations_completed << ',' << run.evaluations;
        if (timing) out << ',' << run.wall_seconds;
        out << ',' << join(to_one_based(run.best_set), ' ') << '\n';
    }
    return out.str();
}

std::string history_to_csv(const std::vector<std::int64_t>& history) {
    std::ostringstream out;
    out << "generation,best_fitness_so_far\n";
    for (std::size_t i = 0; i < history.size(); ++i) {
        out << i + 1 << ',' << history[i] << '\n';
    }
    return out.str();
}

}  // namespace wao::cli
