#include "wao/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "wao/flow_fitness.hpp"

namespace wao {

const char* to_string(OracleMethod method) {
    switch (method) {
        case OracleMethod::enumeration: return "enumeration";
        case OracleMethod::branch_and_bound: return "branch-and-bound";
    }
    return "unknown";
}

namespace {

OracleResult enumerate_subsets(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> adjacent(n, 0);
    for (const Edge& e : g.edges()) {
        adjacent[e.first] |= std::uint32_t{1} << e.second;
        adjacent[e.second] |= std::uint32_t{1} << e.first;
    }
    std::uint32_t best_mask = 0;
    int best = 0;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t m = 1; m < limit; ++m) {
        auto mask = static_cast<std::uint32_t>(m);
        int size = std::popcount(mask);
        if (size <= best) continue;
        bool independent = true;
        for (std::uint32_t rest = mask; rest && independent; rest &= rest - 1) {
            int v = std::countr_zero(rest);
            independent = (adjacent[v] & mask) == 0;
        }
        if (independent) {
            best = size;
            best_mask = mask;
        }
    }
    OracleResult result;
    result.method = OracleMethod::enumeration;
    result.alpha = static_cast<std::size_t>(best);
    result.search_nodes = limit;
    for (NodeId v = 0; v < n; ++v) {
        if (best_mask & (std::uint32_t{1} << v)) result.witness.push_back(v);
    }
    return result;
}

class Bitset {
public:
    explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    std::size_t count_and(const Bitset& other) const {
        std::size_t c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            c += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
        return c;
    }
    void subtract(const Bitset& other) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
    }
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            for (std::uint64_t w = words_[k]; w; w &= w - 1) {
                f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            }
        }
    }

private:
    std::vector<std::uint64_t> words_;
};

class BranchAndBound {
public:
    BranchAndBound(const Graph& g, std::uint64_t budget)
        : n_(g.node_count()), adjacency_(n_, Bitset(n_)), budget_(budget) {
        for (const Edge& e : g.edges()) {
            adjacency_[e.first].set(e.second);
            adjacency_[e.second].set(e.first);
        }
    }

    OracleResult solve() {
        Bitset undecided(n_);
        for (std::size_t v = 0; v < n_; ++v) undecided.set(v);
        std::vector<NodeId> chosen;
        search(undecided, undecided.count(), chosen);
        OracleResult result;
        result.method = OracleMethod::branch_and_bound;
        result.alpha = best_.size();
        result.witness = best_;
        std::sort(result.witness.begin(), result.witness.end());
        result.search_nodes = nodes_;
        return result;
    }

private:
    void search(const Bitset& undecided, std::size_t undecided_count, std::vector<NodeId>& chosen) {
        if (++nodes_ > budget_) {
            throw OracleLimitError("exact_mis exceeded its search budget of " +
                                   std::to_string(budget_) + " nodes");
        }
        if (chosen.size() + undecided_count <= best_.size()) return;

        std::size_t pivot = n_;
        std::size_t pivot_degree = 0;
        undecided.for_each([&](std::size_t v) {
            std::size_t d = adjacency_[v].count_and(undecided);
            if (pivot == n_ || d > pivot_degree) {
                pivot = v;
                pivot_degree = d;
            }
        });
        if (pivot == n_ || pivot_degree == 0) {
            // Nothing left conflicts: take every undecided vertex.
            std::size_t before = chosen.size();
            undecided.for_each([&](std::size_t v) { chosen.push_back(static_cast<NodeId>(v)); });
            if (chosen.size() > best_.size()) best_ = chosen;
            chosen.resize(before);
            return;
        }

        Bitset with = undecided;
        with.reset(pivot);
        with.subtract(adjacency_[pivot]);
        chosen.push_back(static_cast<NodeId>(pivot));
        search(with, undecided_count - 1 - pivot_degree, chosen);
        chosen.pop_back();

        Bitset without = undecided;
        without.reset(pivot);
        search(without, undecided_count - 1, chosen);
    }

    std::size_t n_;
    std::vector<Bitset> adjacency_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<NodeId> best_;
};

}  // namespace

OracleResult exact_mis(const Graph& g, const OracleLimits& limits) {
    const std::size_t n = g.node_count();
    if (n <= limits.enumeration_max_nodes && n <= 30) {
        return enumerate_subsets(g);
    }
    if (n <= limits.branch_and_bound_max_nodes) {
        return BranchAndBound(g, limits.search_node_budget).solve();
    }
    throw OracleLimitError("exact_mis refuses graphs with more than " +
                           std::to_string(limits.branch_and_bound_max_nodes) + " nodes (got " +
                           std::to_string(n) + ")");
}

WidestOrientation exhaustive_widest_orientation(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n > 7) {
        throw OracleLimitError("exhaustive orientation sweep is limited to n <= 7 (got " +
                               std::to_string(n) + ")");
    }
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    WidestOrientation best;
    best.fitness = -1;
    do {
        LinearRepresentation rep(order);
        std::int64_t f = evaluate_fitness(g, rep).fitness;
        ++best.permutations;
        if (f > best.fitness) {
            best.fitness = f;
            best.representation = rep;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

std::size_t min_path_partition_bruteforce(const Graph& g, const Orientation& o) {
    const std::size_t n = g.node_count();
    if (n > 9) {
        throw OracleLimitError("path partition search is limited to n <= 9 (got " +
                               std::to_string(n) + ")");
    }
    if (o.size() != g.edge_count()) {
        throw std::invalid_argument("orientation does not match graph");
    }
    if (n == 0) return 0;

    std::vector<std::vector<char>> arc(n, std::vector<char>(n, 0));
    for (const auto& a : o.arcs()) arc[a.tail][a.head] = 1;

    // ends[mask] has bit v set when some directed path visits exactly the
    // nodes of mask and finishes at v.
    const std::size_t full = std::size_t{1} << n;
    std::vector<std::uint32_t> ends(full, 0);
    for (std::size_t v = 0; v < n; ++v) ends[std::size_t{1} << v] = 1U << v;
    for (std::size_t mask = 1; mask < full; ++mask) {
        if (!ends[mask]) continue;
        for (std::size_t v = 0; v < n; ++v) {
            if (!(ends[mask] >> v & 1U)) continue;
            for (std::size_t w = 0; w < n; ++w) {
                if (!(mask >> w & 1U) && arc[v][w]) ends[mask | (std::size_t{1} << w)] |= 1U << w;
            }
        }
    }

    // Fewest path blocks partitioning each mask; the block holding the
    // lowest node of mask is enumerated explicitly.
    std::vector<std::size_t> best(full, n + 1);
    best[0] = 0;
    for (std::size_t mask = 1; mask < full; ++mask) {
        std::size_t low = mask & (~mask + 1);
        std::size_t rest = mask ^ low;
        for (std::size_t sub = rest;; sub = (sub - 1) & rest) {
            std::size_t block = sub | low;
            if (ends[block]) best[mask] = std::min(best[mask], 1 + best[mask ^ block]);
            if (sub == 0) break;
        }
    }
    return best[full - 1];
}

}  // namespace wao
