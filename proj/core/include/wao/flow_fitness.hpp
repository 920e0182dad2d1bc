#ifndef WAO_FLOW_FITNESS_HPP
#define WAO_FLOW_FITNESS_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "wao/graph.hpp"
#include "wao/orientation.hpp"

namespace wao {

// The split network of an oriented graph. Nodes are numbered
//   0 = source, 1 = sink, 2 + i = out-copy of i, 2 + n + i = in-copy of i.
// Arcs: source -> out(i) with capacity 1 for every i, then in(i) -> sink
// with capacity 1 for every i, then out(i) -> in(j) for every arc i -> j of
// the orientation, in orientation order. Middle arcs carry capacity n + 1,
// which no minimum cut can contain because the total flow is at most n.
class FlowNetwork {
public:
    struct Arc {
        std::uint32_t tail;
        std::uint32_t head;
        std::int32_t capacity;
    };

    FlowNetwork(std::size_t graph_nodes, std::vector<Arc> arcs)
        : graph_nodes_(graph_nodes), arcs_(std::move(arcs)) {}

    std::size_t graph_node_count() const { return graph_nodes_; }
    std::size_t node_count() const { return 2 * graph_nodes_ + 2; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    static constexpr std::uint32_t source() { return 0; }
    static constexpr std::uint32_t sink() { return 1; }
    std::uint32_t out_copy(NodeId v) const { return 2 + v; }
    std::uint32_t in_copy(NodeId v) const { return static_cast<std::uint32_t>(2 + graph_nodes_ + v); }
    std::int32_t infinite_capacity() const { return static_cast<std::int32_t>(graph_nodes_ + 1); }

private:
    std::size_t graph_nodes_;
    std::vector<Arc> arcs_;
};

// Throws std::invalid_argument when o does not orient g's edges.
FlowNetwork build_network(const Graph& g, const Orientation& o);

struct MaxFlowResult {
    std::int64_t value = 0;
    // Nodes reachable from the source in the final residual graph, i.e. the
    // source side of the minimum cut closest to the source. Indexed by
    // network node id.
    std::vector<char> source_side;
};

// Highest-label push-relabel with gap and global relabelling. The first
// phase alone fixes the value (the sink's inflow); leftover excess is then
// returned to the source in one linear sweep so the residual graph belongs
// to a proper flow and the cut can be read off it.
MaxFlowResult max_flow(const FlowNetwork& net);

struct CutSets {
    std::vector<NodeId> independent_set;  // sorted
    std::vector<NodeId> cover;            // sorted
};

// cover = {i : out(i) outside the source side} + {i : in(i) inside it};
// the independent set is everything else.
CutSets extract_independent_set(const Graph& g, std::span<const char> source_side);

inline constexpr NodeId kNoSuccessor = std::numeric_limits<NodeId>::max();

struct FitnessResult {
    std::int64_t flow_value = 0;
    std::int64_t fitness = 0;  // n - flow_value
    std::vector<char> source_side;
    std::vector<NodeId> independent_set;
    std::vector<NodeId> cover;
    // Next node on each chain of a minimum decomposition, kNoSuccessor at
    // chain ends.
    std::vector<NodeId> successors;
};

// Size of the minimum chain decomposition of g under o, plus the
// independent set read off the minimum cut (at least `fitness` nodes).
// Solved as a Hopcroft-Karp matching between out- and in-copies, which is
// the same max-flow problem; source_side equals max_flow's on the network.
FitnessResult evaluate_fitness(const Graph& g, const Orientation& o);

// Same as evaluate_fitness(g, induce_orientation(g, rep)), without
// materialising the orientation. Successor lists from earlier results (for
// example the parents') seed the matching wherever their links are still
// arcs. Only the running time and `successors` depend on them; the value,
// cut and sets do not.
FitnessResult evaluate_fitness(const Graph& g, const LinearRepresentation& rep,
                               std::span<const NodeId> seed = {},
                               std::span<const NodeId> second_seed = {});

// Fitness of many representations of one graph. With bit rows each
// evaluation costs about n^2/64 word operations plus the augmenting
// searches, independent of m; arc lists cost O(m) per evaluation and suit
// sparse graphs. `automatic` picks whichever scans fewer words per node.
class FitnessEvaluator {
public:
    enum class Layout { automatic, bit_rows, arc_lists };
    static constexpr std::size_t kMaxBitRowNodes = 1U << 15;

    explicit FitnessEvaluator(const Graph& g, Layout layout = Layout::automatic);

    // See evaluate_fitness. Safe to call from several threads at once.
    FitnessResult operator()(const LinearRepresentation& rep, std::span<const NodeId> seed = {},
                             std::span<const NodeId> second_seed = {}) const;

    const Graph& graph() const { return graph_; }
    Layout layout() const { return layout_; }

private:
    const Graph& graph_;
    Layout layout_ = Layout::arc_lists;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> rows_;
};

// nullopt when no edge joins two members of nodes; otherwise one such edge.
// Throws std::invalid_argument for ids outside the graph.
std::optional<Edge> verify_independent_set(const Graph& g, std::span<const NodeId> nodes);

}  // namespace wao

#endif  // WAO_FLOW_FITNESS_HPP
