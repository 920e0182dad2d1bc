#include "wao/flow_fitness.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace wao {

FlowNetwork build_network(const Graph& g, const Orientation& o) {
    const std::size_t n = g.node_count();
    if (o.size() != g.edge_count()) {
        throw std::invalid_argument("orientation has " + std::to_string(o.size()) +
                                    " arcs, graph has " + std::to_string(g.edge_count()) +
                                    " edges");
    }
    const auto infinite = static_cast<std::int32_t>(n + 1);
    std::vector<FlowNetwork::Arc> arcs;
    arcs.reserve(2 * n + o.size());
    for (NodeId i = 0; i < n; ++i) {
        arcs.push_back({FlowNetwork::source(), static_cast<std::uint32_t>(2 + i), 1});
    }
    for (NodeId i = 0; i < n; ++i) {
        arcs.push_back({static_cast<std::uint32_t>(2 + n + i), FlowNetwork::sink(), 1});
    }
    for (std::size_t k = 0; k < o.size(); ++k) {
        const auto& arc = o.arcs()[k];
        const Edge& e = g.edges()[k];
        bool matches = (arc.tail == e.first && arc.head == e.second) ||
                       (arc.tail == e.second && arc.head == e.first);
        if (!matches) {
            throw std::invalid_argument("orientation arc " + std::to_string(k) +
                                        " does not match graph edge");
        }
        arcs.push_back({static_cast<std::uint32_t>(2 + arc.tail),
                        static_cast<std::uint32_t>(2 + n + arc.head), infinite});
    }
    return FlowNetwork(n, std::move(arcs));
}

namespace {

// Residual graph in compressed form. Every network arc becomes a forward
// and a reverse residual arc; rev[a] is the partner of a.
struct Residual {
    std::vector<std::uint32_t> first;  // size N + 1
    std::vector<std::uint32_t> head;
    std::vector<std::int32_t> capacity;
    std::vector<std::uint32_t> rev;
    std::vector<char> forward;  // 1 for arcs of the network, 0 for partners

    explicit Residual(const FlowNetwork& net) {
        const std::size_t nodes = net.node_count();
        const auto& arcs = net.arcs();
        first.assign(nodes + 1, 0);
        for (const auto& a : arcs) {
            ++first[a.tail + 1];
            ++first[a.head + 1];
        }
        for (std::size_t v = 0; v < nodes; ++v) first[v + 1] += first[v];
        head.resize(2 * arcs.size());
        capacity.resize(2 * arcs.size());
        rev.resize(2 * arcs.size());
        forward.resize(2 * arcs.size());
        std::vector<std::uint32_t> fill(first.begin(), first.end() - 1);
        for (const auto& a : arcs) {
            std::uint32_t fwd = fill[a.tail]++;
            std::uint32_t bwd = fill[a.head]++;
            head[fwd] = a.head;
            capacity[fwd] = a.capacity;
            rev[fwd] = bwd;
            forward[fwd] = 1;
            head[bwd] = a.tail;
            capacity[bwd] = 0;
            rev[bwd] = fwd;
            forward[bwd] = 0;
        }
    }
};

class PushRelabel {
public:
    PushRelabel(Residual& r, std::uint32_t source, std::uint32_t sink)
        : r_(r),
          nodes_(static_cast<std::uint32_t>(r.first.size() - 1)),
          source_(source),
          sink_(sink),
          label_(nodes_, 0),
          excess_(nodes_, 0),
          current_(r.first.begin(), r.first.end() - 1),
          buckets_(nodes_),
          label_count_(nodes_ + 1, 0) {}

    std::int64_t run() {
        for (std::uint32_t a = r_.first[source_]; a < r_.first[source_ + 1]; ++a) {
            std::int32_t c = r_.capacity[a];
            if (c > 0) {
                r_.capacity[a] = 0;
                r_.capacity[r_.rev[a]] += c;
                excess_[r_.head[a]] += c;
                excess_[source_] -= c;
            }
        }
        global_relabel();

        while (highest_active_ >= 0) {
            auto& bucket = buckets_[static_cast<std::size_t>(highest_active_)];
            if (bucket.empty()) {
                --highest_active_;
                continue;
            }
            std::uint32_t v = bucket.back();
            bucket.pop_back();
            if (label_[v] >= nodes_) continue;  // lifted by a gap
            discharge(v);
            if (relabels_since_global_ >= relabel_interval()) {
                global_relabel();
            }
        }
        return excess_[sink_];
    }

    std::vector<std::int64_t>& excess() { return excess_; }

private:
    std::size_t relabel_interval() const { return 6 * static_cast<std::size_t>(nodes_) + r_.head.size() / 2; }

    void activate(std::uint32_t v) {
        std::uint32_t d = label_[v];
        buckets_[d].push_back(v);
        if (static_cast<std::int64_t>(d) > highest_active_) highest_active_ = d;
    }

    // Exact distances to the sink over residual arcs. Nodes that cannot
    // reach the sink are parked at label N and never touched again.
    void global_relabel() {
        relabels_since_global_ = 0;
        std::fill(label_.begin(), label_.end(), nodes_);
        std::fill(label_count_.begin(), label_count_.end(), 0);
        for (auto& b : buckets_) b.clear();
        highest_active_ = -1;

        std::vector<std::uint32_t>& queue = scratch_;
        queue.clear();
        label_[sink_] = 0;
        queue.push_back(sink_);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            std::uint32_t w = queue[qi];
            for (std::uint32_t a = r_.first[w]; a < r_.first[w + 1]; ++a) {
                std::uint32_t v = r_.head[a];
                if (v == source_ || label_[v] != nodes_) continue;
                if (r_.capacity[r_.rev[a]] > 0) {
                    label_[v] = label_[w] + 1;
                    queue.push_back(v);
                }
            }
        }
        label_[source_] = nodes_;
        for (std::uint32_t v = 0; v < nodes_; ++v) {
            current_[v] = r_.first[v];
            if (label_[v] < nodes_) {
                ++label_count_[label_[v]];
                if (v != sink_ && excess_[v] > 0) activate(v);
            }
        }
    }

    void discharge(std::uint32_t v) {
        while (excess_[v] > 0) {
            const std::uint32_t end = r_.first[v + 1];
            std::uint32_t a = current_[v];
            for (; a < end; ++a) {
                if (r_.capacity[a] <= 0) continue;
                std::uint32_t w = r_.head[a];
                if (label_[v] != label_[w] + 1) continue;
                std::int32_t delta = static_cast<std::int32_t>(
                    std::min<std::int64_t>(excess_[v], r_.capacity[a]));
                r_.capacity[a] -= delta;
                r_.capacity[r_.rev[a]] += delta;
                excess_[v] -= delta;
                bool was_idle = excess_[w] == 0;
                excess_[w] += delta;
                if (was_idle && w != sink_ && w != source_) activate(w);
                if (excess_[v] == 0) break;
            }
            current_[v] = a;
            if (excess_[v] == 0) return;
            if (!relabel(v)) return;
        }
    }

    // Returns false when v leaves the first phase (label reaches N).
    bool relabel(std::uint32_t v) {
        ++relabels_since_global_;
        const std::uint32_t old = label_[v];
        std::uint32_t lowest = nodes_;
        std::uint32_t lowest_arc = r_.first[v];
        for (std::uint32_t a = r_.first[v]; a < r_.first[v + 1]; ++a) {
            if (r_.capacity[a] > 0 && label_[r_.head[a]] + 1 < lowest) {
                lowest = label_[r_.head[a]] + 1;
                lowest_arc = a;
            }
        }
        --label_count_[old];
        if (label_count_[old] == 0) {
            // Gap: nothing at `old` any more, so every node above it is cut
            // off from the sink.
            for (std::uint32_t u = 0; u < nodes_; ++u) {
                if (label_[u] > old && label_[u] < nodes_) {
                    --label_count_[label_[u]];
                    label_[u] = nodes_;
                }
            }
            label_[v] = nodes_;
            return false;
        }
        label_[v] = std::min(lowest, nodes_);
        current_[v] = lowest_arc;
        if (label_[v] >= nodes_) return false;
        ++label_count_[label_[v]];
        return true;
    }

    Residual& r_;
    std::uint32_t nodes_;
    std::uint32_t source_;
    std::uint32_t sink_;
    std::vector<std::uint32_t> label_;
    std::vector<std::int64_t> excess_;
    std::vector<std::uint32_t> current_;
    std::vector<std::vector<std::uint32_t>> buckets_;
    std::vector<std::uint32_t> label_count_;
    std::vector<std::uint32_t> scratch_;
    std::int64_t highest_active_ = -1;
    std::size_t relabels_since_global_ = 0;
};

// Turns the phase-one preflow into a flow by sending every leftover excess
// back towards the source. Arcs carrying flow run source -> out -> in ->
// sink, so they form a DAG and one sweep in reverse topological order
// suffices. The value reaching the sink is unchanged.
void return_excess(Residual& r, std::vector<std::int64_t>& excess, std::uint32_t source,
                   std::uint32_t sink) {
    const std::size_t nodes = r.first.size() - 1;
    // No network arc has an antiparallel twin, so the flow on forward arc a
    // is capacity[rev[a]].
    std::vector<std::uint32_t> indegree(nodes, 0);
    for (std::uint32_t v = 0; v < nodes; ++v) {
        for (std::uint32_t a = r.first[v]; a < r.first[v + 1]; ++a) {
            if (r.forward[a] && r.capacity[r.rev[a]] > 0) ++indegree[r.head[a]];
        }
    }
    std::vector<std::uint32_t> order;
    order.reserve(nodes);
    for (std::uint32_t v = 0; v < nodes; ++v) {
        if (indegree[v] == 0) order.push_back(v);
    }
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        std::uint32_t v = order[qi];
        for (std::uint32_t a = r.first[v]; a < r.first[v + 1]; ++a) {
            if (r.forward[a] && r.capacity[r.rev[a]] > 0 && --indegree[r.head[a]] == 0) {
                order.push_back(r.head[a]);
            }
        }
    }
    if (order.size() != nodes) {
        throw std::logic_error("flow-carrying arcs contain a cycle");
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::uint32_t v = *it;
        if (v == source || v == sink) continue;
        for (std::uint32_t b = r.first[v]; b < r.first[v + 1] && excess[v] > 0; ++b) {
            // b is the residual partner of a flow-carrying arc u -> v.
            if (r.forward[b] || r.capacity[b] <= 0) continue;
            auto delta = static_cast<std::int32_t>(std::min<std::int64_t>(excess[v], r.capacity[b]));
            r.capacity[b] -= delta;
            r.capacity[r.rev[b]] += delta;
            excess[v] -= delta;
            excess[r.head[b]] += delta;
        }
    }
}

// Nodes reachable from the source over residual arcs: the source side of
// the minimum cut closest to the source.
std::vector<char> residual_reachable(const Residual& r, std::uint32_t source) {
    const std::size_t nodes = r.first.size() - 1;
    std::vector<char> reached(nodes, 0);
    std::vector<std::uint32_t> queue{source};
    reached[source] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::uint32_t v = queue[qi];
        for (std::uint32_t a = r.first[v]; a < r.first[v + 1]; ++a) {
            std::uint32_t w = r.head[a];
            if (!reached[w] && r.capacity[a] > 0) {
                reached[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return reached;
}

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net) {
    Residual residual(net);
    PushRelabel solver(residual, FlowNetwork::source(), FlowNetwork::sink());
    MaxFlowResult result;
    result.value = solver.run();
    return_excess(residual, solver.excess(), FlowNetwork::source(), FlowNetwork::sink());
    result.source_side = residual_reachable(residual, FlowNetwork::source());
    return result;
}

CutSets extract_independent_set(const Graph& g, std::span<const char> source_side) {
    const std::size_t n = g.node_count();
    if (source_side.size() != 2 * n + 2) {
        throw std::invalid_argument("cut indicator has wrong size for this graph");
    }
    CutSets sets;
    for (NodeId i = 0; i < n; ++i) {
        bool out_cut = !source_side[2 + i];
        bool in_cut = source_side[2 + n + i];
        if (out_cut || in_cut) {
            sets.cover.push_back(i);
        } else {
            sets.independent_set.push_back(i);
        }
    }
    return sets;
}

namespace {

// Out-arcs of the oriented graph in compressed form.
struct OutArcs {
    std::vector<std::uint32_t> first;
    std::vector<NodeId> head;
};

// Hopcroft-Karp on the middle layer of the split network: out(u) on the
// left, in(v) on the right, one edge per arc u -> v. A maximum matching is
// a maximum flow of the network, and the residual s-side is found by an
// alternating search from the unmatched left nodes.
class SplitMatching {
public:
    explicit SplitMatching(const OutArcs& arcs)
        : arcs_(arcs),
          n_(arcs.first.size() - 1),
          match_left_(n_, kFree),
          match_right_(n_, kFree),
          layer_(n_),
          next_(n_) {}

    // Takes the pair u -> v unless either side is already matched. The
    // caller guarantees that u -> v is an arc.
    void preset(NodeId u, NodeId v) {
        if (match_left_[u] != kFree || match_right_[v] != kFree) return;
        match_left_[u] = v;
        match_right_[v] = u;
        ++size_;
    }

    std::int64_t run() {
        std::int64_t& size = size_;
        // Greedy start.
        for (NodeId u = 0; u < n_; ++u) {
            if (match_left_[u] != kFree) continue;
            for (std::uint32_t a = arcs_.first[u]; a < arcs_.first[u + 1]; ++a) {
                NodeId v = arcs_.head[a];
                if (match_right_[v] == kFree) {
                    match_left_[u] = v;
                    match_right_[v] = u;
                    ++size;
                    break;
                }
            }
        }
        while (build_layers()) {
            for (NodeId u = 0; u < n_; ++u) next_[u] = arcs_.first[u];
            for (NodeId u = 0; u < n_; ++u) {
                if (match_left_[u] == kFree && augment(u)) ++size;
            }
        }
        return size;
    }

    const std::vector<NodeId>& successors() const { return match_left_; }

    // Indexed like the network: 0 source, 1 sink, 2 + i out, 2 + n + i in.
    std::vector<char> source_side() const {
        std::vector<char> side(2 * n_ + 2, 0);
        side[FlowNetwork::source()] = 1;
        std::vector<NodeId> queue;
        for (NodeId u = 0; u < n_; ++u) {
            if (match_left_[u] == kFree) {
                side[2 + u] = 1;
                queue.push_back(u);
            }
        }
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            NodeId u = queue[qi];
            for (std::uint32_t a = arcs_.first[u]; a < arcs_.first[u + 1]; ++a) {
                NodeId v = arcs_.head[a];
                if (side[2 + n_ + v]) continue;
                side[2 + n_ + v] = 1;
                // A free in(v) here would be an augmenting path.
                NodeId w = match_right_[v];
                if (w != kFree && !side[2 + w]) {
                    side[2 + w] = 1;
                    queue.push_back(w);
                }
            }
        }
        return side;
    }

private:
    static constexpr NodeId kFree = kNoSuccessor;
    static constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

    bool build_layers() {
        std::vector<NodeId>& queue = queue_;
        queue.clear();
        for (NodeId u = 0; u < n_; ++u) {
            if (match_left_[u] == kFree) {
                layer_[u] = 0;
                queue.push_back(u);
            } else {
                layer_[u] = kUnreached;
            }
        }
        bool found = false;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            NodeId u = queue[qi];
            for (std::uint32_t a = arcs_.first[u]; a < arcs_.first[u + 1]; ++a) {
                NodeId w = match_right_[arcs_.head[a]];
                if (w == kFree) {
                    found = true;
                } else if (layer_[w] == kUnreached) {
                    layer_[w] = layer_[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        return found;
    }

    bool augment(NodeId u) {
        for (std::uint32_t& a = next_[u]; a < arcs_.first[u + 1]; ++a) {
            NodeId v = arcs_.head[a];
            NodeId w = match_right_[v];
            if (w == kFree || (layer_[w] == layer_[u] + 1 && augment(w))) {
                match_left_[u] = v;
                match_right_[v] = u;
                ++a;
                return true;
            }
        }
        layer_[u] = kUnreached;
        return false;
    }

    const OutArcs& arcs_;
    std::size_t n_;
    std::vector<NodeId> match_left_;
    std::vector<NodeId> match_right_;
    std::vector<std::uint32_t> layer_;
    std::vector<std::uint32_t> next_;
    std::vector<NodeId> queue_;
    std::int64_t size_ = 0;
};

template <typename Matching>
FitnessResult fitness_from_matching(const Graph& g, Matching& matching) {
    FitnessResult result;
    result.flow_value = matching.run();
    result.fitness = static_cast<std::int64_t>(g.node_count()) - result.flow_value;
    result.source_side = matching.source_side();
    CutSets sets = extract_independent_set(g, result.source_side);
    result.independent_set = std::move(sets.independent_set);
    result.cover = std::move(sets.cover);
    result.successors = matching.successors();
    return result;
}

}  // namespace

FitnessResult evaluate_fitness(const Graph& g, const Orientation& o) {
    // Same checks as the explicit network.
    FlowNetwork net = build_network(g, o);
    const std::size_t n = g.node_count();
    OutArcs arcs;
    arcs.first.assign(n + 1, 0);
    for (const auto& a : o.arcs()) ++arcs.first[a.tail + 1];
    for (std::size_t v = 0; v < n; ++v) arcs.first[v + 1] += arcs.first[v];
    arcs.head.resize(o.size());
    std::vector<std::uint32_t> fill(arcs.first.begin(), arcs.first.end() - 1);
    for (const auto& a : o.arcs()) arcs.head[fill[a.tail]++] = a.head;
    SplitMatching matching(arcs);
    return fitness_from_matching(g, matching);
}

namespace {

// Maximum matching between out- and in-copies with adjacency rows as
// bitsets. The out-set of u is row(u) & later(position of u), where later(p)
// holds the nodes placed after position p.
class BitMatching {
public:
    BitMatching(std::span<const std::uint64_t> rows, std::size_t words,
                const LinearRepresentation& rep)
        : rows_(rows),
          words_(words),
          n_(rep.size()),
          rep_(rep),
          later_(n_ * words_, 0),
          match_left_(n_, kNoSuccessor),
          match_right_(n_, kNoSuccessor) {
        for (std::size_t p = n_ - 1; p > 0; --p) {
            std::uint64_t* row = &later_[(p - 1) * words_];
            std::copy_n(&later_[p * words_], words_, row);
            NodeId v = rep.at(p);
            row[v / 64] |= std::uint64_t{1} << (v % 64);
        }
    }

    void preset(NodeId u, NodeId v) {
        if (match_left_[u] != kNoSuccessor || match_right_[v] != kNoSuccessor) return;
        match_left_[u] = v;
        match_right_[v] = u;
        ++size_;
    }

    std::int64_t run() {
        std::vector<std::uint64_t> free_right(words_, 0);
        for (NodeId v = 0; v < n_; ++v)
            if (match_right_[v] == kNoSuccessor) free_right[v / 64] |= std::uint64_t{1} << (v % 64);
        // Greedy start: first free successor.
        for (NodeId u = 0; u < n_; ++u) {
            if (match_left_[u] != kNoSuccessor) continue;
            const std::uint64_t* later = later_row(u);
            for (std::size_t k = 0; k < words_; ++k) {
                std::uint64_t w = rows_[u * words_ + k] & later[k] & free_right[k];
                if (!w) continue;
                auto v = static_cast<NodeId>(64 * k + std::countr_zero(w));
                match_left_[u] = v;
                match_right_[v] = u;
                free_right[k] &= ~(std::uint64_t{1} << (v % 64));
                ++size_;
                break;
            }
        }
        // Augmenting searches. A failed search leaves its visited in-copies
        // useless for later searches until the matching changes.
        std::vector<std::uint64_t> visited(words_, 0);
        std::vector<NodeId> parent(n_);
        std::vector<NodeId> queue;
        queue.reserve(n_);
        for (NodeId root = 0; root < n_; ++root) {
            if (match_left_[root] != kNoSuccessor) continue;
            queue.assign(1, root);
            NodeId end = kNoSuccessor;
            for (std::size_t qi = 0; qi < queue.size() && end == kNoSuccessor; ++qi) {
                NodeId x = queue[qi];
                const std::uint64_t* later = later_row(x);
                for (std::size_t k = 0; k < words_ && end == kNoSuccessor; ++k) {
                    std::uint64_t w = rows_[x * words_ + k] & later[k] & ~visited[k];
                    visited[k] |= w;
                    for (; w; w &= w - 1) {
                        auto v = static_cast<NodeId>(64 * k + std::countr_zero(w));
                        parent[v] = x;
                        if (match_right_[v] == kNoSuccessor) {
                            end = v;
                            break;
                        }
                        queue.push_back(match_right_[v]);
                    }
                }
            }
            if (end == kNoSuccessor) continue;
            for (NodeId v = end; v != kNoSuccessor;) {
                NodeId x = parent[v];
                NodeId previous = match_left_[x];
                match_left_[x] = v;
                match_right_[v] = x;
                v = previous;
            }
            ++size_;
            std::fill(visited.begin(), visited.end(), 0);
        }
        return size_;
    }

    std::vector<char> source_side() const {
        std::vector<char> side(2 * n_ + 2, 0);
        side[FlowNetwork::source()] = 1;
        std::vector<std::uint64_t> reached(words_, 0);
        std::vector<NodeId> queue;
        for (NodeId u = 0; u < n_; ++u) {
            if (match_left_[u] == kNoSuccessor) {
                side[2 + u] = 1;
                queue.push_back(u);
            }
        }
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            NodeId x = queue[qi];
            const std::uint64_t* later = later_row(x);
            for (std::size_t k = 0; k < words_; ++k) {
                std::uint64_t w = rows_[x * words_ + k] & later[k] & ~reached[k];
                reached[k] |= w;
                for (; w; w &= w - 1) {
                    auto v = static_cast<NodeId>(64 * k + std::countr_zero(w));
                    side[2 + n_ + v] = 1;
                    NodeId y = match_right_[v];
                    if (y != kNoSuccessor && !side[2 + y]) {
                        side[2 + y] = 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        return side;
    }

    const std::vector<NodeId>& successors() const { return match_left_; }

private:
    const std::uint64_t* later_row(NodeId u) const { return &later_[rep_.position(u) * words_]; }

    std::span<const std::uint64_t> rows_;
    std::size_t words_;
    std::size_t n_;
    const LinearRepresentation& rep_;
    std::vector<std::uint64_t> later_;
    std::vector<NodeId> match_left_;
    std::vector<NodeId> match_right_;
    std::int64_t size_ = 0;
};

template <typename Matching>
void apply_seeds(Matching& matching, const Graph& g, const LinearRepresentation& rep,
                 std::span<const NodeId> seed, std::span<const NodeId> second_seed) {
    const std::size_t n = g.node_count();
    for (std::span<const NodeId> hint : {seed, second_seed}) {
        if (hint.empty()) continue;
        if (hint.size() != n) throw std::invalid_argument("seed successors have the wrong size");
        for (NodeId u = 0; u < n; ++u) {
            NodeId v = hint[u];
            if (v < n && rep.position(u) < rep.position(v) && g.has_edge(u, v)) matching.preset(u, v);
        }
    }
}

}  // namespace

FitnessEvaluator::FitnessEvaluator(const Graph& g, Layout layout) : graph_(g) {
    const std::size_t n = g.node_count();
    words_ = (n + 63) / 64;
    if (layout == Layout::automatic) {
        // Bit rows pay n/64 words per scanned node, arc lists its degree.
        const double average_degree = n ? 2.0 * static_cast<double>(g.edge_count()) / n : 0.0;
        layout = (static_cast<double>(words_) <= average_degree && n <= kMaxBitRowNodes)
                     ? Layout::bit_rows
                     : Layout::arc_lists;
    }
    if (layout == Layout::bit_rows) {
        if (n > kMaxBitRowNodes) throw std::invalid_argument("graph too large for bit rows");
        rows_.assign(n * words_, 0);
        for (const Edge& e : g.edges()) {
            rows_[e.first * words_ + e.second / 64] |= std::uint64_t{1} << (e.second % 64);
            rows_[e.second * words_ + e.first / 64] |= std::uint64_t{1} << (e.first % 64);
        }
    }
    layout_ = layout;
}

FitnessResult FitnessEvaluator::operator()(const LinearRepresentation& rep,
                                           std::span<const NodeId> seed,
                                           std::span<const NodeId> second_seed) const {
    const Graph& g = graph_;
    const std::size_t n = g.node_count();
    if (rep.size() != n) {
        throw std::invalid_argument("representation has " + std::to_string(rep.size()) +
                                    " nodes, graph has " + std::to_string(n));
    }
    if (layout_ == Layout::bit_rows && n > 0) {
        BitMatching matching(rows_, words_, rep);
        apply_seeds(matching, g, rep, seed, second_seed);
        return fitness_from_matching(g, matching);
    }
    OutArcs arcs;
    arcs.first.resize(n + 1);
    arcs.head.reserve(g.edge_count());
    for (NodeId u = 0; u < n; ++u) {
        arcs.first[u] = static_cast<std::uint32_t>(arcs.head.size());
        const std::size_t pu = rep.position(u);
        for (NodeId v : g.neighbors(u))
            if (rep.position(v) > pu) arcs.head.push_back(v);
    }
    arcs.first[n] = static_cast<std::uint32_t>(arcs.head.size());
    SplitMatching matching(arcs);
    apply_seeds(matching, g, rep, seed, second_seed);
    return fitness_from_matching(g, matching);
}

FitnessResult evaluate_fitness(const Graph& g, const LinearRepresentation& rep,
                               std::span<const NodeId> seed, std::span<const NodeId> second_seed) {
    return FitnessEvaluator(g)(rep, seed, second_seed);
}

std::optional<Edge> verify_independent_set(const Graph& g, std::span<const NodeId> nodes) {
    std::vector<char> member(g.node_count(), 0);
    for (NodeId v : nodes) {
        if (v >= g.node_count()) {
            throw std::invalid_argument("node " + std::to_string(std::size_t{v} + 1) +
                                        " outside the graph");
        }
        member[v] = 1;
    }
    for (const Edge& e : g.edges()) {
        if (member[e.first] && member[e.second]) return e;
    }
    return std::nullopt;
}

}  // namespace wao
