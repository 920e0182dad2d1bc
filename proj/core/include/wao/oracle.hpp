#ifndef WAO_ORACLE_HPP
#define WAO_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wao/graph.hpp"
#include "wao/orientation.hpp"

namespace wao {

// Exact references for small instances. They refuse anything over their
// size guard instead of answering approximately.

class OracleLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OracleMethod { enumeration, branch_and_bound };

const char* to_string(OracleMethod method);

struct OracleResult {
    std::size_t alpha = 0;
    std::vector<NodeId> witness;  // sorted
    OracleMethod method = OracleMethod::enumeration;
    std::uint64_t search_nodes = 0;
};

struct OracleLimits {
    std::size_t enumeration_max_nodes = 20;
    std::size_t branch_and_bound_max_nodes = 200;
    std::uint64_t search_node_budget = 200'000'000;
};

// Independence number by subset enumeration (small n) or by branching on a
// maximum-degree vertex with the |chosen| + |undecided| bound.
OracleResult exact_mis(const Graph& g, const OracleLimits& limits = {});

struct WidestOrientation {
    std::int64_t fitness = 0;
    LinearRepresentation representation;
    std::size_t permutations = 0;
};

// Best flow fitness over the orientations induced by all n! orders (n <= 7).
WidestOrientation exhaustive_widest_orientation(const Graph& g);

// Fewest vertex-disjoint directed paths of o covering every node, found by
// searching all set partitions (n <= 9).
std::size_t min_path_partition_bruteforce(const Graph& g, const Orientation& o);

}  // namespace wao

#endif  // WAO_ORACLE_HPP
