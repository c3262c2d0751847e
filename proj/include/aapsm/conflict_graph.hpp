#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aapsm/layout.hpp"

namespace aapsm {

enum class NodeKind { EdgeShifter, Overlap };
enum class EdgeKind { FeatureEdge, OverlapHalf };

struct PcgNode {
    int id = -1;
    NodeKind kind = NodeKind::EdgeShifter;
    /// EdgeShifter: {shifter, -1}. Overlap: the shifter pair.
    int shifter_a = -1;
    int shifter_b = -1;
    Point pos;
    /// Overlap node moved off the exact midpoint to break a degenerate drawing.
    bool perturbed = false;
};

struct PcgEdge {
    int id = -1;
    int u = -1;
    int v = -1;
    std::int64_t weight = 1;
    EdgeKind kind = EdgeKind::FeatureEdge;
    int shifter_a = -1;
    int shifter_b = -1;
    /// OverlapHalf only: extra spacing needed to separate the pair.
    Coord required_separation = 0;

    int other(int node) const { return node == u ? v : u; }
};

struct PhaseConflictGraph {
    std::vector<PcgNode> nodes;
    std::vector<PcgEdge> edges;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }
};

enum class WeightMode { Uniform, Separation };

struct WeightPolicy {
    WeightMode mode = WeightMode::Uniform;
    /// FeatureEdge weight; deleting one would need feature widening.
    std::int64_t feature_weight = 1'000'000;
};

/// Shifter nodes come first (node id == shifter id), then one overlap node
/// per pair in pair order. Feature edges precede overlap halves.
PhaseConflictGraph build_pcg(const std::vector<Shifter>& shifters,
                             const std::vector<OverlapPair>& overlaps, const DesignRules& rules,
                             const WeightPolicy& policy = {});

/// Edge ids removed from consideration; indexed by edge id.
using EdgeMask = std::vector<bool>;

EdgeMask make_mask(const PhaseConflictGraph& g, const std::vector<int>& removed_edges);

struct BipartiteCheck {
    bool bipartite = true;
    /// Per node, 0 or 1; only meaningful when bipartite.
    std::vector<int> coloring;
    /// Edge ids of one odd cycle when not bipartite.
    std::vector<int> odd_cycle;
};

/// Plain structural 2-coloring of the graph (ignores edge kinds).
BipartiteCheck is_bipartite(const PhaseConflictGraph& g, const EdgeMask& removed = {});

/// Signed-graph balance: FeatureEdge demands unequal phases, OverlapHalf
/// demands equal phases. Parity union-find.
bool is_balanced(const PhaseConflictGraph& g, const EdgeMask& removed = {});

enum class Phase { Deg0 = 0, Deg180 = 180 };

/// Phase per node under signed semantics; the overlap node carries the
/// shared phase of its pair. Lowest node id of each component gets 0°.
/// Throws ContractViolation when an odd cycle survives.
std::vector<Phase> phase_assign(const PhaseConflictGraph& g,
                                const std::vector<int>& deleted_edges);

/// True when every surviving edge constraint holds under `phases`.
bool phases_consistent(const PhaseConflictGraph& g, const std::vector<Phase>& phases,
                       const EdgeMask& removed = {});

std::string dump_graph(const PhaseConflictGraph& g);

const char* to_string(NodeKind k);
const char* to_string(EdgeKind k);

}  // namespace aapsm
