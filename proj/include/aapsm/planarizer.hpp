#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aapsm/conflict_graph.hpp"

namespace aapsm {

using EdgePair = std::pair<int, int>;

/// Whether the drawn segments of two edges meet under the crossing rule of
/// find_crossings.
bool edges_cross(const PhaseConflictGraph& g, const PcgEdge& e, const PcgEdge& f);

/// Pairs (a < b) of surviving edges whose closed segments meet, sorted.
/// Edges sharing a node only count when they run along each other.
/// Throws ValidationError when two nodes share a position.
std::vector<EdgePair> find_crossings(const PhaseConflictGraph& g, const EdgeMask& removed = {});

/// Half-edge h = 2*e + dir; dir 0 runs u->v, dir 1 runs v->u.
inline int half_edge(int edge, int dir) { return 2 * edge + dir; }
inline int edge_of(int half) { return half / 2; }

struct Face {
    int id = -1;
    int component = -1;
    bool outer = false;
    /// Twice the signed area; positive for bounded faces.
    __int128 area2 = 0;
    std::vector<int> half_edges;
};

struct PlanarEmbedding {
    /// Edge ids kept in the drawing, ascending.
    std::vector<int> surviving;
    /// Edge ids deleted to remove crossings, in removal order.
    std::vector<int> removed_p;
    /// Per node, incident surviving edges in counter-clockwise order.
    std::vector<std::vector<int>> rotation;
    std::vector<Face> faces;
    /// Face to the left of each half-edge; -1 for removed edges.
    std::vector<int> face_of_half;
    /// Per node component id; -1 for nodes without surviving edges.
    std::vector<int> component;
    int component_count = 0;
};

/// Greedy crossing removal followed by embedding of the survivors. The
/// cheapest crossing edge goes first; ties prefer more crossings, then
/// lower edge id.
PlanarEmbedding planarize(const PhaseConflictGraph& g);

/// Rotation system and faces for an already crossing-free edge subset.
/// Throws InternalError if Euler's formula fails on any component.
PlanarEmbedding embed(const PhaseConflictGraph& g, const EdgeMask& removed,
                      std::vector<int> removed_order = {});

struct DualEdge {
    int u = -1;
    int v = -1;
    std::int64_t weight = 0;
    int primal_edge = -1;
    bool self_loop() const { return u == v; }
};

struct DualGraph {
    int node_count = 0;
    /// Component of the primal drawing each face belongs to.
    std::vector<int> component;
    std::vector<DualEdge> edges;

    std::vector<int> degrees() const;
};

DualGraph build_dual(const PhaseConflictGraph& g, const PlanarEmbedding& emb);

/// One face per line: `face <id> <component> <outer|inner> <node ids...>`.
std::string dump_embedding(const PhaseConflictGraph& g, const PlanarEmbedding& emb);

}  // namespace aapsm
