#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aapsm/matching.hpp"

namespace aapsm {

/// Undirected multigraph with terminal set T. Only T = odd-degree nodes is
/// supported by the gadget reduction.
struct TJoinInstance {
    int node_count = 0;
    std::vector<WeightedEdge> edges;
    /// Ascending node ids.
    std::vector<int> terminals;
};

/// Ascending ids of nodes with odd degree (loops count twice).
std::vector<int> odd_degree_nodes(int node_count, const std::vector<WeightedEdge>& edges);

TJoinInstance make_odd_tjoin(int node_count, std::vector<WeightedEdge> edges);

/// Edge set A with odd incidence exactly on `terminals`.
bool is_tjoin(int node_count, const std::vector<WeightedEdge>& edges,
              const std::vector<int>& terminals, const std::vector<int>& join);

enum class Endpoint { U, V, Both };

/// Which endpoint(s) own each edge in the gadget graph.
struct EdgeAssignment {
    std::vector<Endpoint> owner;
};

/// Parity-respecting assignment: every node owns a number of edges with the
/// parity of its degree. One-sided start, fixed up along a spanning tree;
/// a component with an odd edge count gets exactly one `Both` edge.
/// Loops are not allowed.
EdgeAssignment assign_edges(int node_count, const std::vector<WeightedEdge>& edges);

bool assignment_valid(int node_count, const std::vector<WeightedEdge>& edges,
                      const EdgeAssignment& assignment);

enum class GadgetMode { Generalized, Optimized };

enum class GadgetNodeKind { True, Ghost, Dummy, Divide };
enum class GadgetEdgeKind { Intra, Connector, BothLink, DivideLink };

struct GadgetNode {
    GadgetNodeKind kind = GadgetNodeKind::True;
    /// Original node whose gadget holds this node; -1 for dummies.
    int owner = -1;
    /// Original edge this node stands for; -1 for divide nodes.
    int edge = -1;
};

struct GadgetGraph {
    std::vector<GadgetNode> nodes;
    std::vector<WeightedEdge> edges;
    std::vector<GadgetEdgeKind> edge_kind;
    /// Per original edge: gadget edge whose use in the matching puts the
    /// original edge into the join (true-to-dummy connector, or the link
    /// between the two true nodes of a `Both` edge).
    std::vector<int> join_marker;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int count(GadgetNodeKind k) const;
};

/// One complete gadget per node over its true and ghost nodes; true-dummy-
/// ghost connector per one-sided edge.
GadgetGraph build_generalized_gadget_graph(const TJoinInstance& inst,
                                           const EdgeAssignment& assignment);

/// Same nodes, but each gadget is split into complete pieces of at most
/// three true/ghost nodes, consecutive pieces linked by a pair of divide
/// nodes joined with a zero-weight edge.
GadgetGraph build_optimized_gadget_graph(const TJoinInstance& inst,
                                         const EdgeAssignment& assignment);

struct TJoinResult {
    /// Indices into the instance edge list, ascending.
    std::vector<int> edges;
    std::int64_t weight = 0;
    int gadget_nodes = 0;
    int gadget_edges = 0;
};

/// Optimal T-join through min-weight perfect matching on the gadget graph.
/// Throws std::invalid_argument when T is not the odd-degree set and
/// InternalError when the extracted join fails re-verification.
TJoinResult solve_tjoin(const TJoinInstance& inst, GadgetMode mode);

const char* to_string(GadgetMode m);

}  // namespace aapsm
