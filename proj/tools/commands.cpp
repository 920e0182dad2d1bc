#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "report.hpp"
#include "wao/evolution.hpp"
#include "wao/flow_fitness.hpp"
#include "wao/graph.hpp"
#include "wao/oracle.hpp"

namespace wao::cli {

using nlohmann::json;

namespace {

// Anything that should end the command with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GraphOptions {
    std::string path;
    std::string name;
    bool complement = false;
    bool no_complement = false;
};

struct LoadedGraph {
    std::string name;
    Graph graph;
    bool complemented = true;
};

void add_graph_options(CLI::App* cmd, GraphOptions& opts) {
    cmd->add_option("--graph,-g", opts.path, "DIMACS ASCII graph file")->required();
    cmd->add_option("--name", opts.name, "Instance name for reports (default: file stem)");
    auto* on = cmd->add_flag("--complement", opts.complement,
                             "Solve the complement of the file's graph (default)");
    auto* off = cmd->add_flag("--no-complement", opts.no_complement,
                              "Solve the file's graph as written");
    on->excludes(off);
}

LoadedGraph load_graph(const std::string& path, bool complemented, const std::string& name,
                       std::ostream& err) {
    DimacsParseResult parsed = parse_dimacs_file(path);
    for (const auto& w : parsed.warnings) err << "warning: " << path << ": " << w << '\n';
    LoadedGraph loaded;
    loaded.name = name.empty() ? std::filesystem::path(path).stem().string() : name;
    loaded.complemented = complemented;
    loaded.graph = complemented ? complement(parsed.graph) : std::move(parsed.graph);
    return loaded;
}

LoadedGraph load_graph(const GraphOptions& opts, std::ostream& err) {
    return load_graph(opts.path, !opts.no_complement, opts.name, err);
}

struct GaOptions {
    std::optional<std::size_t> generations;
    std::optional<std::size_t> population_size;
    std::optional<double> elite_fraction;
    std::optional<double> crossover_probability;
    std::optional<double> normalization_factor;
    std::optional<std::size_t> runs;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> target;
    std::optional<std::size_t> threads;
    std::string config_path;
};

void add_ga_options(CLI::App* cmd, GaOptions& opts) {
    cmd->add_option("--generations", opts.generations, "Generations g (default 10n)");
    cmd->add_option("--pop-size", opts.population_size, "Population size s (default ceil(1.5n))");
    cmd->add_option("--elite-frac", opts.elite_fraction, "Elite fraction f (default 0.05)");
    cmd->add_option("--pc", opts.crossover_probability, "Crossover probability (default 0.2)");
    cmd->add_option("--L", opts.normalization_factor, "Selection factor L (default 15)");
    cmd->add_option("--runs", opts.runs, "Independent runs (default 20)");
    cmd->add_option("--seed", opts.seed, "Seed of run 1; run r uses seed + r - 1 (default 1)");
    cmd->add_option("--target", opts.target, "Stop once an independent set this large is found");
    cmd->add_option("--threads", opts.threads, "Fitness evaluation threads (default 1)");
    cmd->add_option("--config", opts.config_path,
                    "JSON config (or a previous solve report) to start from");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

GAConfig resolve_config(const GaOptions& opts, std::size_t n) {
    GAConfig cfg = GAConfig::defaults_for(n);
    if (!opts.config_path.empty()) {
        try {
            cfg = config_from_json(read_json_file(opts.config_path), cfg);
        } catch (const json::exception& e) {
            throw UsageError(opts.config_path + ": " + e.what());
        }
    }
    if (opts.generations) cfg.generations = *opts.generations;
    if (opts.population_size) cfg.population_size = *opts.population_size;
    if (opts.elite_fraction) cfg.elite_fraction = *opts.elite_fraction;
    if (opts.crossover_probability) cfg.crossover_probability = *opts.crossover_probability;
    if (opts.normalization_factor) cfg.normalization_factor = *opts.normalization_factor;
    if (opts.runs) cfg.runs = *opts.runs;
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.target) cfg.target = *opts.target;
    if (opts.threads) cfg.threads = *opts.threads;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

SolveReport solve(const LoadedGraph& loaded, const GAConfig& cfg) {
    SolveReport report;
    report.instance = loaded.name;
    report.n = loaded.graph.node_count();
    report.m = loaded.graph.edge_count();
    report.complemented = loaded.complemented;
    report.config = cfg;
    report.result = best_of_runs(loaded.graph, cfg);
    if (auto bad = verify_independent_set(loaded.graph, report.result.best_set)) {
        throw std::logic_error("solver produced a dependent set; edge {" +
                               std::to_string(bad->first + 1) + "," +
                               std::to_string(bad->second + 1) + "}");
    }
    return report;
}

// Writes to --output when given, otherwise to out.
class Sink {
public:
    Sink(const std::string& path, std::ostream& out) : out_(&out) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot write " + path);
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

// ---- solve -----------------------------------------------------------------

struct SolveOptions {
    GraphOptions graph;
    GaOptions ga;
    std::string format = "json";
    std::string output;
    bool no_timing = false;
};

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
    LoadedGraph loaded = load_graph(opts.graph, err);
    GAConfig cfg = resolve_config(opts.ga, loaded.graph.node_count());
    SolveReport report = solve(loaded, cfg);
    Sink sink(opts.output, out);
    if (opts.format == "csv") {
        sink.stream() << report_to_csv(report, !opts.no_timing);
    } else {
        sink.stream() << report_to_json(report, !opts.no_timing).dump(2) << '\n';
    }
    return kExitOk;
}

// ---- history ---------------------------------------------------------------

struct HistoryOptions {
    GraphOptions graph;
    GaOptions ga;
    std::string report_path;
    std::optional<std::size_t> run_index;
    std::string output;
};

int cmd_history(const HistoryOptions& opts, std::ostream& out, std::ostream& err) {
    std::vector<std::int64_t> history;
    if (!opts.report_path.empty()) {
        json report = read_json_file(opts.report_path);
        try {
            std::size_t index = opts.run_index.value_or(report.at("best_run").get<std::size_t>());
            const json& runs = report.at("runs");
            if (index < 1 || index > runs.size()) {
                throw UsageError("run " + std::to_string(index) + " not in report");
            }
            history = runs.at(index - 1).at("history").get<std::vector<std::int64_t>>();
        } catch (const json::exception& e) {
            throw UsageError(opts.report_path + ": " + e.what());
        }
    } else {
        if (opts.graph.path.empty()) throw UsageError("history needs --graph or --report");
        LoadedGraph loaded = load_graph(opts.graph, err);
        GAConfig cfg = resolve_config(opts.ga, loaded.graph.node_count());
        MultiRunResult result = best_of_runs(loaded.graph, cfg);
        std::size_t index = opts.run_index.value_or(result.best_run + 1);
        if (index < 1 || index > result.runs.size()) {
            throw UsageError("run " + std::to_string(index) + " was not executed");
        }
        history = result.runs[index - 1].history;
    }
    Sink sink(opts.output, out);
    sink.stream() << history_to_csv(history);
    return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchOptions {
    std::string manifest;
    std::string format = "csv";
    std::string output;
    std::optional<std::size_t> threads;
    bool no_timing = false;
};

struct BenchRow {
    std::string instance;
    double L = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    bool complemented = true;
    std::size_t runs = 0;
    std::uint64_t seed = 0;
    std::optional<std::size_t> best_size;
    std::optional<std::size_t> known_alpha;
    std::size_t best_run = 0;
    std::size_t generation_found = 0;
    double wall_seconds = 0;
    std::string error;
};

std::string csv_optional(const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string{};
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
    std::ifstream in(opts.manifest);
    if (!in) throw UsageError("cannot open manifest " + opts.manifest);
    std::stringstream buffer;
    buffer << in.rdbuf();
    json manifest = json::object();
    if (buffer.str().find_first_not_of(" \t\r\n") != std::string::npos) {
        try {
            manifest = json::parse(buffer.str());
        } catch (const json::exception& e) {
            throw UsageError(opts.manifest + ": " + e.what());
        }
    }
    const std::filesystem::path base = std::filesystem::path(opts.manifest).parent_path();

    std::vector<BenchRow> rows;
    bool any_error = false;
    try {
        std::vector<double> L_values{15.0};
        if (manifest.contains("L")) {
            L_values = manifest.at("L").is_array() ? manifest.at("L").get<std::vector<double>>()
                                                   : std::vector<double>{manifest.at("L").get<double>()};
        }
        const bool stop_at_known = manifest.value("stop_at_known", false);
        const json instances = manifest.value("instances", json::array());
        // Top-level GA settings shared by every instance; L is swept separately.
        json shared = manifest;
        shared.erase("L");
        shared.erase("instances");

        for (const json& entry : instances) {
            std::filesystem::path file = entry.at("file").get<std::string>();
            if (file.is_relative()) file = base / file;
            std::optional<std::size_t> known;
            if (entry.contains("known_alpha") && !entry.at("known_alpha").is_null()) {
                known = entry.at("known_alpha").get<std::size_t>();
            }
            const bool complemented = entry.value("complement", true);
            const std::string name = entry.value("name", file.stem().string());

            std::optional<LoadedGraph> loaded;
            std::string load_error;
            try {
                loaded = load_graph(file.string(), complemented, name, err);
            } catch (const std::exception& e) {
                load_error = e.what();
                err << "error: " << name << ": " << load_error << '\n';
                any_error = true;
            }

            for (double L : L_values) {
                BenchRow row;
                row.instance = name;
                row.L = L;
                row.complemented = complemented;
                row.known_alpha = known;
                if (!loaded) {
                    row.error = load_error;
                    rows.push_back(row);
                    continue;
                }
                GAConfig cfg = GAConfig::defaults_for(loaded->graph.node_count(), L);
                cfg = config_from_json(shared, cfg);
                if (entry.contains("overrides")) cfg = config_from_json(entry.at("overrides"), cfg);
                cfg.normalization_factor = L;
                if (opts.threads) cfg.threads = *opts.threads;
                if (stop_at_known && known && !cfg.target) cfg.target = known;
                cfg.validate();

                SolveReport report = solve(*loaded, cfg);
                row.n = report.n;
                row.m = report.m;
                row.runs = report.result.runs.size();
                row.seed = cfg.seed;
                row.best_size = report.result.best_size;
                row.best_run = report.result.best_run + 1;
                row.generation_found = report.result.runs[report.result.best_run].generation_found;
                for (const auto& r : report.result.runs) row.wall_seconds += r.wall_seconds;
                rows.push_back(row);
            }
        }
    } catch (const json::exception& e) {
        throw UsageError(opts.manifest + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(opts.manifest + ": " + e.what());
    }

    auto match = [](const BenchRow& r) -> std::optional<bool> {
        if (!r.best_size || !r.known_alpha) return std::nullopt;
        return *r.best_size >= *r.known_alpha;
    };

    Sink sink(opts.output, out);
    const bool timing = !opts.no_timing;
    if (opts.format == "json") {
        json table = json::array();
        for (const auto& r : rows) {
            json j;
            j["instance"] = r.instance;
            j["L"] = r.L;
            j["n"] = r.n;
            j["m"] = r.m;
            j["complemented"] = r.complemented;
            j["runs"] = r.runs;
            j["seed"] = r.seed;
            j["best_size"] = r.best_size ? json(*r.best_size) : json(nullptr);
            j["known_alpha"] = r.known_alpha ? json(*r.known_alpha) : json(nullptr);
            auto m = match(r);
            j["match"] = m ? json(*m) : json(nullptr);
            j["best_run"] = r.best_run;
            j["generation_found"] = r.generation_found;
            if (timing) j["wall_seconds"] = r.wall_seconds;
            j["error"] = r.error.empty() ? json(nullptr) : json(r.error);
            table.push_back(std::move(j));
        }
        sink.stream() << table.dump(2) << '\n';
    } else {
        auto& s = sink.stream();
        s << "instance,L,n,m,complemented,runs,seed,best_size,known_alpha,match,best_run,"
             "generation_found";
        if (timing) s << ",wall_seconds";
        s << ",error\n";
        for (const auto& r : rows) {
            auto m = match(r);
            s << r.instance << ',' << r.L << ',' << r.n << ',' << r.m << ','
              << (r.complemented ? 1 : 0) << ',' << r.runs << ',' << r.seed << ','
              << csv_optional(r.best_size) << ',' << csv_optional(r.known_alpha) << ','
              << (m ? (*m ? "1" : "0") : "") << ',' << r.best_run << ',' << r.generation_found;
            if (timing) s << ',' << r.wall_seconds;
            s << ',' << r.error << '\n';
        }
    }
    return any_error ? kExitUsage : kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyOptions {
    GraphOptions graph;
    std::string certificate;
};

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    std::ifstream in(opts.certificate);
    if (!in) throw UsageError("cannot open certificate " + opts.certificate);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::vector<long long> labels;
    bool complemented = !opts.graph.no_complement;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            json report = json::parse(text);
            labels = report.at("best_set").get<std::vector<long long>>();
            if (!opts.graph.complement && !opts.graph.no_complement &&
                report.contains("complemented")) {
                complemented = report.at("complemented").get<bool>();
            }
        } catch (const json::exception& e) {
            throw UsageError(opts.certificate + ": " + e.what());
        }
    } else {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            line = line.substr(0, line.find('#'));
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream tokens(line);
            std::string token;
            while (tokens >> token) {
                try {
                    std::size_t used = 0;
                    long long v = std::stoll(token, &used);
                    if (used != token.size()) throw std::invalid_argument(token);
                    labels.push_back(v);
                } catch (const std::exception&) {
                    throw UsageError(opts.certificate + ": non-numeric node id '" + token + "'");
                }
            }
        }
    }

    LoadedGraph loaded = load_graph(opts.graph.path, complemented, opts.graph.name, err);
    const std::size_t n = loaded.graph.node_count();
    std::vector<NodeId> nodes;
    for (long long label : labels) {
        if (label < 1 || static_cast<unsigned long long>(label) > n) {
            throw UsageError("node id " + std::to_string(label) + " outside [1, " +
                             std::to_string(n) + "]");
        }
        nodes.push_back(static_cast<NodeId>(label - 1));
    }
    std::sort(nodes.begin(), nodes.end());
    if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
        err << "warning: duplicate node ids ignored\n";
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    }

    out << "graph: " << loaded.name << (loaded.complemented ? " (complemented)" : "") << '\n';
    out << "size: " << nodes.size() << '\n';
    if (auto bad = verify_independent_set(loaded.graph, nodes)) {
        out << "independent: no\n";
        out << "offending edge: " << bad->first + 1 << ' ' << bad->second + 1 << '\n';
        return kExitVerifyFailed;
    }
    out << "independent: yes\n";
    return kExitOk;
}

// ---- oracle ----------------------------------------------------------------

struct OracleOptions {
    GraphOptions graph;
    std::optional<std::uint64_t> budget;
};

int cmd_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err) {
    LoadedGraph loaded = load_graph(opts.graph, err);
    OracleLimits limits;
    if (opts.budget) limits.search_node_budget = *opts.budget;
    OracleResult result;
    try {
        result = exact_mis(loaded.graph, limits);
    } catch (const OracleLimitError& e) {
        throw UsageError(std::string("oracle refused: ") + e.what());
    }
    json j;
    j["instance"] = loaded.name;
    j["n"] = loaded.graph.node_count();
    j["m"] = loaded.graph.edge_count();
    j["complemented"] = loaded.complemented;
    j["alpha"] = result.alpha;
    j["witness"] = to_one_based(result.witness);
    j["method"] = to_string(result.method);
    j["search_nodes"] = result.search_nodes;
    out << j.dump(2) << '\n';
    return kExitOk;
}

// ---- complement ------------------------------------------------------------

struct ComplementOptions {
    std::string graph;
    std::string output;
};

int cmd_complement(const ComplementOptions& opts, std::ostream& out, std::ostream& err) {
    DimacsParseResult parsed = parse_dimacs_file(opts.graph);
    for (const auto& w : parsed.warnings) err << "warning: " << opts.graph << ": " << w << '\n';
    Graph result = complement(parsed.graph);
    Sink sink(opts.output, out);
    write_dimacs(sink.stream(), result, "complement of " + opts.graph);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Evolutionary maximum independent set search over acyclic orientations", "wao"};
    app.require_subcommand(1);

    SolveOptions solve_opts;
    auto* solve_cmd = app.add_subcommand("solve", "Run the evolutionary search on one graph");
    add_graph_options(solve_cmd, solve_opts.graph);
    add_ga_options(solve_cmd, solve_opts.ga);
    solve_cmd->add_option("--format", solve_opts.format, "json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    solve_cmd->add_option("--output,-o", solve_opts.output, "Write the report here");
    solve_cmd->add_flag("--no-timing", solve_opts.no_timing, "Omit wall-clock fields");

    HistoryOptions history_opts;
    auto* history_cmd =
        app.add_subcommand("history", "Best-fitness-so-far per generation as CSV");
    history_cmd->add_option("--graph,-g", history_opts.graph.path, "DIMACS ASCII graph file");
    history_cmd->add_option("--name", history_opts.graph.name, "Instance name");
    auto* h_on = history_cmd->add_flag("--complement", history_opts.graph.complement,
                                       "Solve the complement (default)");
    auto* h_off = history_cmd->add_flag("--no-complement", history_opts.graph.no_complement,
                                        "Solve the graph as written");
    h_on->excludes(h_off);
    add_ga_options(history_cmd, history_opts.ga);
    auto* report_opt = history_cmd->add_option("--report", history_opts.report_path,
                                               "Read the history from a solve report instead");
    report_opt->excludes(history_cmd->get_option("--graph"));
    history_cmd->add_option("--run", history_opts.run_index, "1-based run (default: best run)");
    history_cmd->add_option("--output,-o", history_opts.output, "Write the CSV here");

    BenchOptions bench_opts;
    auto* bench_cmd = app.add_subcommand("bench", "Run a manifest of instances");
    bench_cmd->add_option("--manifest,-m", bench_opts.manifest, "JSON manifest")->required();
    bench_cmd->add_option("--format", bench_opts.format, "csv (default) or json")
        ->check(CLI::IsMember({"json", "csv"}));
    bench_cmd->add_option("--output,-o", bench_opts.output, "Write the table here");
    bench_cmd->add_option("--threads", bench_opts.threads, "Fitness evaluation threads");
    bench_cmd->add_flag("--no-timing", bench_opts.no_timing, "Omit wall-clock columns");

    VerifyOptions verify_opts;
    auto* verify_cmd = app.add_subcommand("verify", "Check an independent-set certificate");
    add_graph_options(verify_cmd, verify_opts.graph);
    verify_cmd->add_option("--certificate,-c", verify_opts.certificate,
                           "1-based node ids, or a solve report")
        ->required();

    OracleOptions oracle_opts;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exact independence number (small graphs)");
    add_graph_options(oracle_cmd, oracle_opts.graph);
    oracle_cmd->add_option("--budget", oracle_opts.budget, "Search node budget");

    ComplementOptions complement_opts;
    auto* complement_cmd = app.add_subcommand("complement", "Write the complement graph");
    complement_cmd->add_option("--graph,-g", complement_opts.graph, "DIMACS ASCII graph file")
        ->required();
    complement_cmd->add_option("--output,-o", complement_opts.output, "Write DIMACS here");

    std::vector<std::string> argv_storage{"wao"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve_opts, out, err);
        if (*history_cmd) return cmd_history(history_opts, out, err);
        if (*bench_cmd) return cmd_bench(bench_opts, out, err);
        if (*verify_cmd) return cmd_verify(verify_opts, out, err);
        if (*oracle_cmd) return cmd_oracle(oracle_opts, out, err);
        if (*complement_cmd) return cmd_complement(complement_opts, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace wao::cli
