#ifndef WAO_GRAPH_HPP
#define WAO_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wao {

// Nodes are 0-based inside the library. Everything that faces a user
// (DIMACS text, CLI output, JSON) is 1-based.
using NodeId = std::uint32_t;

// Unordered pair stored with first < second.
struct Edge {
    NodeId first;
    NodeId second;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph. Immutable once built.
class Graph {
public:
    Graph() = default;

    // Builds a graph on node_count nodes. Self-loops and out-of-range
    // endpoints throw std::invalid_argument; repeated pairs collapse.
    Graph(std::size_t node_count, std::span<const Edge> edges);

    // Stores the parts exactly as given, without normalisation. Only useful
    // for exercising validate() on deliberately broken graphs.
    static Graph from_parts_unchecked(std::size_t node_count,
                                      std::vector<Edge> edges,
                                      std::vector<std::vector<NodeId>> adjacency);

    std::size_t node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    // Sorted by (first, second).
    const std::vector<Edge>& edges() const { return edges_; }

    // Sorted neighbour list of v.
    std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
    std::size_t degree(NodeId v) const { return adjacency_[v].size(); }

    bool has_edge(NodeId u, NodeId v) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adjacency_;
};

// Raised by parse_dimacs. line() is 1-based; 0 means "end of input".
class DimacsError : public std::runtime_error {
public:
    DimacsError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct DimacsParseResult {
    Graph graph;
    std::size_t declared_edges = 0;   // m from the problem line
    std::size_t duplicate_edges = 0;  // repeated `e` lines (either direction)
    std::vector<std::string> warnings;
};

// Reads DIMACS ASCII (`c`, `p edge|col n m`, `e i j`).
DimacsParseResult parse_dimacs(std::istream& in);
DimacsParseResult parse_dimacs_string(const std::string& text);
DimacsParseResult parse_dimacs_file(const std::string& path);

// Emits `c` comment lines, `p edge n m` and sorted 1-based `e i j` lines.
void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment = {});
std::string to_dimacs(const Graph& g, const std::string& comment = {});

// Same nodes; an edge exactly where g has none.
Graph complement(const Graph& g);

// Every invariant violation found, not just the first. Empty means valid.
std::vector<std::string> validate(const Graph& g);

// Convenience constructors used throughout tests and tools.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph complete_bipartite_graph(std::size_t a, std::size_t b);
Graph empty_graph(std::size_t n);

}  // namespace wao

#endif  // WAO_GRAPH_HPP
