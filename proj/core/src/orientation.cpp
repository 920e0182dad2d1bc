#include "wao/orientation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wao {

LinearRepresentation::LinearRepresentation(std::vector<NodeId> sequence)
    : sequence_(std::move(sequence)), position_(sequence_.size(), sequence_.size()) {
    for (std::size_t i = 0; i < sequence_.size(); ++i) {
        NodeId v = sequence_[i];
        if (v >= sequence_.size()) {
            throw std::invalid_argument("node " + std::to_string(v + 1) +
                                        " out of range for a representation of length " +
                                        std::to_string(sequence_.size()));
        }
        if (position_[v] != sequence_.size()) {
            throw std::invalid_argument("node " + std::to_string(v + 1) +
                                        " repeated in representation");
        }
        position_[v] = i;
    }
}

LinearRepresentation LinearRepresentation::from_one_based(std::span<const std::size_t> labels) {
    std::vector<NodeId> sequence;
    sequence.reserve(labels.size());
    for (std::size_t label : labels) {
        if (label == 0) {
            throw std::invalid_argument("node labels are 1-based");
        }
        sequence.push_back(static_cast<NodeId>(label - 1));
    }
    return LinearRepresentation(std::move(sequence));
}

std::vector<std::size_t> LinearRepresentation::to_one_based() const {
    std::vector<std::size_t> labels(sequence_.size());
    std::transform(sequence_.begin(), sequence_.end(), labels.begin(),
                   [](NodeId v) { return std::size_t{v} + 1; });
    return labels;
}

Orientation induce_orientation(const Graph& g, const LinearRepresentation& rep) {
    if (rep.size() != g.node_count()) {
        throw std::invalid_argument("representation length " + std::to_string(rep.size()) +
                                    " does not match node count " +
                                    std::to_string(g.node_count()));
    }
    std::vector<Orientation::Arc> arcs;
    arcs.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        if (rep.position(e.first) < rep.position(e.second)) {
            arcs.push_back({e.first, e.second});
        } else {
            arcs.push_back({e.second, e.first});
        }
    }
    return Orientation(std::move(arcs));
}

bool is_acyclic_orientation(const Graph& g, const Orientation& o) {
    const std::size_t n = g.node_count();
    if (o.size() != g.edge_count()) {
        return false;
    }
    std::vector<std::vector<NodeId>> out(n);
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t k = 0; k < o.size(); ++k) {
        const auto& arc = o.arcs()[k];
        const Edge& e = g.edges()[k];
        bool matches = (arc.tail == e.first && arc.head == e.second) ||
                       (arc.tail == e.second && arc.head == e.first);
        if (!matches) {
            return false;
        }
        out[arc.tail].push_back(arc.head);
        ++indegree[arc.head];
    }
    std::vector<NodeId> ready;
    for (NodeId v = 0; v < n; ++v) {
        if (indegree[v] == 0) ready.push_back(v);
    }
    std::size_t visited = 0;
    while (!ready.empty()) {
        NodeId v = ready.back();
        ready.pop_back();
        ++visited;
        for (NodeId w : out[v]) {
            if (--indegree[w] == 0) ready.push_back(w);
        }
    }
    return visited == n;
}

LinearRepresentation random_representation(std::size_t node_count, Rng& rng) {
    std::vector<NodeId> sequence(node_count);
    std::iota(sequence.begin(), sequence.end(), NodeId{0});
    std::shuffle(sequence.begin(), sequence.end(), rng);
    return LinearRepresentation(std::move(sequence));
}

namespace {

// Prefix of `head` followed by the rest of the nodes in `tail` order.
LinearRepresentation splice(const LinearRepresentation& head, const LinearRepresentation& tail,
                            std::size_t point) {
    const std::size_t n = head.size();
    std::vector<char> taken(n, 0);
    std::vector<NodeId> sequence;
    sequence.reserve(n);
    for (std::size_t i = 0; i < point; ++i) {
        sequence.push_back(head.at(i));
        taken[head.at(i)] = 1;
    }
    for (NodeId v : tail.sequence()) {
        if (!taken[v]) sequence.push_back(v);
    }
    return LinearRepresentation(std::move(sequence));
}

}  // namespace

std::pair<LinearRepresentation, LinearRepresentation> crossover(
    const LinearRepresentation& first, const LinearRepresentation& second,
    std::size_t crossover_point) {
    const std::size_t n = first.size();
    if (second.size() != n) {
        throw std::invalid_argument("crossover parents have different lengths");
    }
    if (crossover_point < 1 || crossover_point >= n) {
        throw std::invalid_argument("crossover point " + std::to_string(crossover_point) +
                                    " outside [1, " + std::to_string(n > 0 ? n - 1 : 0) + "]");
    }
    return {splice(first, second, crossover_point), splice(second, first, crossover_point)};
}

LinearRepresentation mutate(const LinearRepresentation& rep, std::size_t mutation_point) {
    const std::size_t n = rep.size();
    if (mutation_point < 1 || mutation_point > n) {
        throw std::invalid_argument("mutation point " + std::to_string(mutation_point) +
                                    " outside [1, " + std::to_string(n) + "]");
    }
    std::vector<NodeId> sequence = rep.sequence();
    auto pos = sequence.begin() + static_cast<std::ptrdiff_t>(mutation_point - 1);
    std::rotate(sequence.begin(), pos, pos + 1);
    return LinearRepresentation(std::move(sequence));
}

}  // namespace wao
