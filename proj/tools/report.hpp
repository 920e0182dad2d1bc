#ifndef WAO_TOOLS_REPORT_HPP
#define WAO_TOOLS_REPORT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "wao/evolution.hpp"
#include "wao/graph.hpp"

namespace wao::cli {

// JSON schema of `wao solve` (field names are part of the interface):
//
//   instance, n, m, complemented, config{...}, runs[...], best_run,
//   best_size, best_set
//
// Node ids in best_set and runs[].best_set are 1-based and sorted.
// runs[].wall_seconds is informational and omitted with --no-timing.
struct SolveReport {
    std::string instance;
    std::size_t n = 0;
    std::size_t m = 0;
    bool complemented = true;
    GAConfig config;
    MultiRunResult result;
};

nlohmann::json config_to_json(const GAConfig& cfg);

// Starts from `base` and overwrites every field present in j.
GAConfig config_from_json(const nlohmann::json& j, GAConfig base);

nlohmann::json run_to_json(const RunResult& run, std::size_t index, bool timing);
nlohmann::json report_to_json(const SolveReport& report, bool timing);

std::vector<std::size_t> to_one_based(const std::vector<NodeId>& nodes);

// CSV with one row per run; history is not included.
std::string report_to_csv(const SolveReport& report, bool timing);

// `generation,best_fitness_so_far` rows.
std::string history_to_csv(const std::vector<std::int64_t>& history);

}  // namespace wao::cli

#endif  // WAO_TOOLS_REPORT_HPP
