#ifndef WAO_ORIENTATION_HPP
#define WAO_ORIENTATION_HPP

#include <cstddef>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "wao/graph.hpp"

namespace wao {

// Master random stream used by every stochastic operation in the library.
using Rng = std::mt19937_64;

// A permutation of the nodes. It is the canonical encoding of an acyclic
// orientation: every edge points from the earlier node to the later one.
class LinearRepresentation {
public:
    LinearRepresentation() = default;

    // Throws std::invalid_argument unless sequence is a permutation of
    // {0, ..., size-1}.
    explicit LinearRepresentation(std::vector<NodeId> sequence);

    // Same, from 1-based node labels.
    static LinearRepresentation from_one_based(std::span<const std::size_t> labels);

    std::size_t size() const { return sequence_.size(); }
    const std::vector<NodeId>& sequence() const { return sequence_; }
    NodeId at(std::size_t index) const { return sequence_[index]; }
    std::size_t position(NodeId v) const { return position_[v]; }

    // 1-based labels, for printing.
    std::vector<std::size_t> to_one_based() const;

    friend bool operator==(const LinearRepresentation& a, const LinearRepresentation& b) {
        return a.sequence_ == b.sequence_;
    }

private:
    std::vector<NodeId> sequence_;
    std::vector<std::size_t> position_;
};

// One directed arc per graph edge, aligned index-for-index with
// Graph::edges(). Always induced from a linear representation.
class Orientation {
public:
    struct Arc {
        NodeId tail;
        NodeId head;
        friend bool operator==(const Arc&, const Arc&) = default;
    };

    Orientation() = default;
    explicit Orientation(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {}

    const std::vector<Arc>& arcs() const { return arcs_; }
    std::size_t size() const { return arcs_.size(); }

    friend bool operator==(const Orientation&, const Orientation&) = default;

private:
    std::vector<Arc> arcs_;
};

// Every edge is directed from the node that comes first in rep.
// Throws std::invalid_argument when rep does not cover g's nodes.
Orientation induce_orientation(const Graph& g, const LinearRepresentation& rep);

// Kahn's algorithm on the oriented graph. Also checks that the arcs match
// g's edges one-to-one.
bool is_acyclic_orientation(const Graph& g, const Orientation& o);

// Fisher-Yates shuffle driven by rng.
LinearRepresentation random_representation(std::size_t node_count, Rng& rng);

// Prefix of `first` up to the crossover point, then the remaining nodes in
// the order they appear in `second`; the second child swaps the roles.
// crossover_point is in [1, n-1].
std::pair<LinearRepresentation, LinearRepresentation> crossover(
    const LinearRepresentation& first, const LinearRepresentation& second,
    std::size_t crossover_point);

// Turns the node at 1-based position mutation_point into a source by moving
// it to the front. mutation_point is in [1, n].
LinearRepresentation mutate(const LinearRepresentation& rep, std::size_t mutation_point);

}  // namespace wao

#endif  // WAO_ORIENTATION_HPP
