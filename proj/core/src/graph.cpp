#include "wao/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace wao {

Graph::Graph(std::size_t node_count, std::span<const Edge> edges)
    : node_count_(node_count), adjacency_(node_count) {
    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.first >= node_count || e.second >= node_count) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (e.first == e.second) {
            throw std::invalid_argument("self-loop on node " + std::to_string(e.first + 1));
        }
        edges_.push_back(e.first < e.second ? e : Edge{e.second, e.first});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    for (const Edge& e : edges_) {
        adjacency_[e.first].push_back(e.second);
        adjacency_[e.second].push_back(e.first);
    }
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end());
    }
}

Graph Graph::from_parts_unchecked(std::size_t node_count,
                                  std::vector<Edge> edges,
                                  std::vector<std::vector<NodeId>> adjacency) {
    Graph g;
    g.node_count_ = node_count;
    g.edges_ = std::move(edges);
    g.adjacency_ = std::move(adjacency);
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u >= node_count_ || v >= node_count_) {
        return false;
    }
    const auto& list = adjacency_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

DimacsError::DimacsError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

std::size_t parse_count(std::string_view token, std::size_t line_no) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw DimacsError(line_no, "non-numeric token '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

DimacsParseResult parse_dimacs(std::istream& in) {
    DimacsParseResult result;
    bool have_problem = false;
    std::size_t n = 0;
    std::vector<Edge> edges;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0] == "c") {
            continue;
        }
        if (tokens[0] == "p") {
            if (have_problem) {
                throw DimacsError(line_no, "duplicate problem line");
            }
            if (tokens.size() != 4 || (tokens[1] != "edge" && tokens[1] != "col")) {
                throw DimacsError(line_no, "expected 'p edge <n> <m>'");
            }
            n = parse_count(tokens[2], line_no);
            result.declared_edges = parse_count(tokens[3], line_no);
            if (n == 0) {
                throw DimacsError(line_no, "graph must have at least one node");
            }
            edges.reserve(result.declared_edges);
            have_problem = true;
        } else if (tokens[0] == "e") {
            if (!have_problem) {
                throw DimacsError(line_no, "edge line before problem line");
            }
            if (tokens.size() != 3) {
                throw DimacsError(line_no, "expected 'e <i> <j>'");
            }
            std::size_t i = parse_count(tokens[1], line_no);
            std::size_t j = parse_count(tokens[2], line_no);
            if (i < 1 || i > n || j < 1 || j > n) {
                throw DimacsError(line_no, "endpoint out of range [1, " + std::to_string(n) + "]");
            }
            if (i == j) {
                throw DimacsError(line_no, "self-loop on node " + std::to_string(i));
            }
            edges.push_back(Edge{static_cast<NodeId>(i - 1), static_cast<NodeId>(j - 1)});
        } else {
            throw DimacsError(line_no, "unknown line type '" + std::string(tokens[0]) + "'");
        }
    }
    if (!have_problem) {
        throw DimacsError(0, "missing problem line");
    }

    result.graph = Graph(n, edges);
    result.duplicate_edges = edges.size() - result.graph.edge_count();
    if (result.duplicate_edges > 0) {
        result.warnings.push_back(std::to_string(result.duplicate_edges) +
                                  " duplicate edge line(s) collapsed");
    }
    if (result.declared_edges != result.graph.edge_count()) {
        result.warnings.push_back("problem line declares " + std::to_string(result.declared_edges) +
                                  " edges, parsed " + std::to_string(result.graph.edge_count()));
    }
    return result;
}

DimacsParseResult parse_dimacs_string(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

DimacsParseResult parse_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment) {
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string line;
        while (std::getline(lines, line)) {
            out << "c " << line << '\n';
        }
    }
    out << "p edge " << g.node_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) {
        out << "e " << e.first + 1 << ' ' << e.second + 1 << '\n';
    }
}

std::string to_dimacs(const Graph& g, const std::string& comment) {
    std::ostringstream out;
    write_dimacs(out, g, comment);
    return out.str();
}

Graph complement(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<Edge> edges;
    const std::size_t total = n * (n - (n > 0 ? 1 : 0)) / 2;
    edges.reserve(total - std::min(total, g.edge_count()));
    std::vector<char> adjacent(n, 0);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : g.neighbors(u)) adjacent[v] = 1;
        for (NodeId v = u + 1; v < n; ++v) {
            if (!adjacent[v]) edges.push_back(Edge{u, v});
        }
        for (NodeId v : g.neighbors(u)) adjacent[v] = 0;
    }
    return Graph(n, edges);
}

std::vector<std::string> validate(const Graph& g) {
    std::vector<std::string> violations;
    const std::size_t n = g.node_count();
    auto pair_name = [](const Edge& e) {
        return "{" + std::to_string(std::size_t{e.first} + 1) + "," +
               std::to_string(std::size_t{e.second} + 1) + "}";
    };

    if (n == 0) {
        violations.push_back("node count must be positive");
    }

    bool edges_in_range = true;
    for (const Edge& e : g.edges()) {
        if (e.first >= n || e.second >= n) {
            violations.push_back("endpoint out of range in edge " + pair_name(e));
            edges_in_range = false;
        } else if (e.first == e.second) {
            violations.push_back("self-loop on node " + std::to_string(std::size_t{e.first} + 1));
        } else if (e.first > e.second) {
            violations.push_back("edge " + pair_name(e) + " not stored as (low, high)");
        }
    }
    for (std::size_t i = 1; i < g.edges().size(); ++i) {
        if (g.edges()[i] == g.edges()[i - 1]) {
            violations.push_back("duplicate edge " + pair_name(g.edges()[i]));
        } else if (g.edges()[i] < g.edges()[i - 1]) {
            violations.push_back("edge list not sorted at position " + std::to_string(i));
        }
    }

    std::size_t degree_sum = 0;
    bool asymmetric = false;
    for (NodeId u = 0; u < n; ++u) {
        auto list = g.neighbors(u);
        degree_sum += list.size();
        if (!std::is_sorted(list.begin(), list.end())) {
            violations.push_back("adjacency of node " + std::to_string(u + 1) + " not sorted");
        }
        for (NodeId v : list) {
            if (v >= n) {
                violations.push_back("endpoint out of range in adjacency of node " +
                                     std::to_string(u + 1));
                continue;
            }
            if (v == u) {
                violations.push_back("self-loop on node " + std::to_string(u + 1));
                continue;
            }
            auto back = g.neighbors(v);
            if (!asymmetric && !std::binary_search(back.begin(), back.end(), u)) {
                violations.push_back("asymmetric adjacency between nodes " +
                                     std::to_string(u + 1) + " and " + std::to_string(v + 1));
                asymmetric = true;
            }
        }
    }

    if (edges_in_range) {
        for (const Edge& e : g.edges()) {
            if (e.first != e.second && e.first < n && e.second < n &&
                !g.has_edge(e.first, e.second)) {
                violations.push_back("edge " + pair_name(e) + " missing from adjacency");
            }
        }
    }
    if (degree_sum != 2 * g.edge_count()) {
        violations.push_back("edge count " + std::to_string(g.edge_count()) +
                             " inconsistent with adjacency degree sum " +
                             std::to_string(degree_sum));
    }
    return violations;
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Graph(n, edges);
}

Graph cycle_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    if (n >= 3) edges.push_back({0, static_cast<NodeId>(n - 1)});
    return Graph(n, edges);
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j});
    return Graph(n, edges);
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < a; ++i)
        for (NodeId j = 0; j < b; ++j) edges.push_back({i, static_cast<NodeId>(a + j)});
    return Graph(a + b, edges);
}

Graph empty_graph(std::size_t n) { return Graph(n, {}); }

}  // namespace wao
