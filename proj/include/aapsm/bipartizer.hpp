#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aapsm/conflict_graph.hpp"
#include "aapsm/planarizer.hpp"
#include "aapsm/tjoin.hpp"

namespace aapsm {

struct OptimalBipartization {
    /// Primal edge ids (M), ascending.
    std::vector<int> edges;
    std::int64_t weight = 0;
    /// Wall-clock seconds spent building gadgets and matching.
    double matching_seconds = 0.0;
    int components_solved = 0;
    int gadget_nodes = 0;
    int gadget_edges = 0;
};

/// Minimum-weight edge set M making the embedded graph bipartite: a T-join
/// on each dual component with T the odd-degree faces. Components are
/// solved in parallel.
OptimalBipartization bipartize_optimal(const PhaseConflictGraph& g, const PlanarEmbedding& emb,
                                       const DualGraph& dual, GadgetMode mode);

enum class ConflictOrigin { Matching, PlanarizationOddCheck };

struct Conflict {
    int edge = -1;
    int shifter_a = -1;
    int shifter_b = -1;
    Coord required_separation = 0;
    ConflictOrigin origin = ConflictOrigin::Matching;
};

struct ConflictSet {
    /// Sorted by edge id.
    std::vector<Conflict> conflicts;
    std::int64_t total_weight = 0;

    std::vector<int> edge_ids() const;
    int count(ConflictOrigin origin) const;
};

/// D = M plus every removed crossing edge that cannot be satisfied. The
/// embedded graph minus M is two-colored first; removed edges are then
/// replayed heaviest first, re-orienting whole colour classes when that
/// satisfies them, and land in D only when the colouring is already forced.
ConflictSet finalize_conflicts(const PhaseConflictGraph& g, const std::vector<int>& removed_p,
                               const std::vector<int>& m_edges);

struct GreedyBipartization {
    /// Non-tree edges closing an unbalanced cycle, ascending.
    std::vector<int> deleted;
    std::int64_t weight = 0;
    /// Every edge left out of the spanning forest.
    int non_tree_edges = 0;
};

/// Baseline: maximum-weight spanning forest (Kruskal, heaviest first, ties
/// by lower id); a leftover edge is deleted when it contradicts the parity
/// implied by the forest.
GreedyBipartization bipartize_greedy(const PhaseConflictGraph& g);

const char* to_string(ConflictOrigin o);

}  // namespace aapsm
