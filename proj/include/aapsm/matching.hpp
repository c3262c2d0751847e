#pragma once

#include <cstdint>
#include <vector>

namespace aapsm {

struct WeightedEdge {
    int u = -1;
    int v = -1;
    std::int64_t weight = 0;
};

struct Matching {
    /// mate[v] = partner node, or -1.
    std::vector<int> mate;
    /// Indices into the input edge list, ascending.
    std::vector<int> edges;
    std::int64_t weight = 0;
};

/// Exact maximum-weight matching by the primal-dual blossom method
/// (Edmonds, Galil's O(n^3) formulation). With `max_cardinality`, the
/// heaviest among maximum-cardinality matchings. Integer arithmetic only;
/// self-loops are ignored.
Matching max_weight_matching(int node_count, const std::vector<WeightedEdge>& edges,
                             bool max_cardinality);

/// Minimum-weight perfect matching. Throws InfeasibleMatching when no
/// perfect matching exists (including an odd node count).
Matching min_weight_perfect_matching(int node_count, const std::vector<WeightedEdge>& edges);

}  // namespace aapsm
