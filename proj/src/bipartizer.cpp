#include "aapsm/bipartizer.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "aapsm/error.hpp"
#include "aapsm/parallel.hpp"
#include "aapsm/parity_dsu.hpp"

namespace aapsm {
namespace {

int relation(EdgeKind k) { return k == EdgeKind::FeatureEdge ? 1 : 0; }

struct ComponentJoin {
    std::vector<int> primal;
    int gadget_nodes = 0;
    int gadget_edges = 0;
    bool solved = false;
};

}  // namespace

const char* to_string(ConflictOrigin o) {
    return o == ConflictOrigin::Matching ? "matching" : "planarization";
}

OptimalBipartization bipartize_optimal(const PhaseConflictGraph& g, const PlanarEmbedding& emb,
                                       const DualGraph& dual, GadgetMode mode) {
    const int comps = emb.component_count;
    std::vector<int> local(dual.node_count, -1);
    std::vector<int> size(comps, 0);
    for (int f = 0; f < dual.node_count; ++f) local[f] = size[dual.component[f]]++;

    std::vector<TJoinInstance> inst(comps);
    std::vector<std::vector<int>> primal_of(comps);
    for (int c = 0; c < comps; ++c) inst[c].node_count = size[c];
    for (const auto& e : dual.edges) {
        if (e.self_loop()) continue;
        const int c = dual.component[e.u];
        inst[c].edges.push_back({local[e.u], local[e.v], e.weight});
        primal_of[c].push_back(e.primal_edge);
    }

    std::vector<ComponentJoin> joins(comps);
    const auto start = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic, 1)
    for (int c = 0; c < comps; ++c) {
        inst[c].terminals = odd_degree_nodes(inst[c].node_count, inst[c].edges);
        if (inst[c].terminals.empty()) continue;
        const TJoinResult r = solve_tjoin(inst[c], mode);
        for (int k : r.edges) joins[c].primal.push_back(primal_of[c][k]);
        joins[c].gadget_nodes = r.gadget_nodes;
        joins[c].gadget_edges = r.gadget_edges;
        joins[c].solved = true;
    }
    const auto stop = std::chrono::steady_clock::now();

    OptimalBipartization out;
    out.matching_seconds = std::chrono::duration<double>(stop - start).count();
    for (const auto& j : joins) {
        out.edges.insert(out.edges.end(), j.primal.begin(), j.primal.end());
        out.components_solved += j.solved;
        out.gadget_nodes += j.gadget_nodes;
        out.gadget_edges += j.gadget_edges;
    }
    std::sort(out.edges.begin(), out.edges.end());
    for (int e : out.edges) out.weight += g.edges[e].weight;
    return out;
}

std::vector<int> ConflictSet::edge_ids() const {
    std::vector<int> out;
    for (const auto& c : conflicts) out.push_back(c.edge);
    return out;
}

int ConflictSet::count(ConflictOrigin origin) const {
    return static_cast<int>(std::count_if(conflicts.begin(), conflicts.end(),
                                          [origin](const Conflict& c) { return c.origin == origin; }));
}

ConflictSet finalize_conflicts(const PhaseConflictGraph& g, const std::vector<int>& removed_p,
                               const std::vector<int>& m_edges) {
    std::vector<char> in_p(g.edges.size(), 0), in_m(g.edges.size(), 0);
    for (int e : removed_p) in_p.at(e) = 1;
    for (int e : m_edges) in_m.at(e) = 1;

    ParityDsu dsu(g.nodes.size());
    for (const auto& e : g.edges) {
        if (in_p[e.id] || in_m[e.id]) continue;
        if (!dsu.unite(e.u, e.v, relation(e.kind))) {
            throw InternalError("embedded graph minus M is not bipartite at edge " +
                                std::to_string(e.id));
        }
    }

    std::vector<int> order(removed_p.begin(), removed_p.end());
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return g.edges[a].weight > g.edges[b].weight ||
               (g.edges[a].weight == g.edges[b].weight && a < b);
    });

    ConflictSet out;
    auto add = [&](int id, ConflictOrigin origin) {
        const auto& e = g.edges[id];
        out.conflicts.push_back({id, e.shifter_a, e.shifter_b, e.required_separation, origin});
        out.total_weight += e.weight;
    };
    for (int id : m_edges) add(id, ConflictOrigin::Matching);
    for (int id : order) {
        if (in_m[id]) continue;
        const auto& e = g.edges[id];
        // joining two colour classes always succeeds; within one class the
        // colours are fixed and a mismatch is a conflict
        if (!dsu.unite(e.u, e.v, relation(e.kind))) add(id, ConflictOrigin::PlanarizationOddCheck);
    }
    std::sort(out.conflicts.begin(), out.conflicts.end(),
              [](const Conflict& a, const Conflict& b) { return a.edge < b.edge; });
    return out;
}

GreedyBipartization bipartize_greedy(const PhaseConflictGraph& g) {
    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.edges[a].weight > g.edges[b].weight; });

    ParityDsu forest(g.nodes.size());
    std::vector<char> tree(g.edges.size(), 0);
    for (int id : order) {
        const auto& e = g.edges[id];
        if (forest.same_set(e.u, e.v)) continue;
        forest.unite(e.u, e.v, relation(e.kind));
        tree[id] = 1;
    }
    GreedyBipartization out;
    for (const auto& e : g.edges) {
        if (tree[e.id]) continue;
        ++out.non_tree_edges;
        const int pu = forest.find(e.u).second;
        const int pv = forest.find(e.v).second;
        if ((pu ^ pv) != relation(e.kind)) {
            out.deleted.push_back(e.id);
            out.weight += e.weight;
        }
    }
    return out;
}

}  // namespace aapsm
