#include "aapsm/tjoin.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "aapsm/error.hpp"

namespace aapsm {

const char* to_string(GadgetMode m) {
    return m == GadgetMode::Generalized ? "generalized" : "optimized";
}

std::vector<int> odd_degree_nodes(int node_count, const std::vector<WeightedEdge>& edges) {
    std::vector<int> deg(node_count, 0);
    for (const auto& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    std::vector<int> out;
    for (int v = 0; v < node_count; ++v) {
        if (deg[v] % 2) out.push_back(v);
    }
    return out;
}

TJoinInstance make_odd_tjoin(int node_count, std::vector<WeightedEdge> edges) {
    TJoinInstance inst;
    inst.node_count = node_count;
    inst.terminals = odd_degree_nodes(node_count, edges);
    inst.edges = std::move(edges);
    return inst;
}

bool is_tjoin(int node_count, const std::vector<WeightedEdge>& edges,
              const std::vector<int>& terminals, const std::vector<int>& join) {
    std::vector<int> deg(node_count, 0);
    for (int k : join) {
        ++deg[edges[k].u];
        ++deg[edges[k].v];
    }
    std::vector<char> in_t(node_count, 0);
    for (int t : terminals) in_t[t] = 1;
    for (int v = 0; v < node_count; ++v) {
        if ((deg[v] % 2 == 1) != (in_t[v] == 1)) return false;
    }
    return true;
}

int GadgetGraph::count(GadgetNodeKind k) const {
    return static_cast<int>(
        std::count_if(nodes.begin(), nodes.end(), [k](const GadgetNode& n) { return n.kind == k; }));
}

namespace {

struct Adjacency {
    // (neighbour, edge index)
    std::vector<std::vector<std::pair<int, int>>> nbr;
};

Adjacency adjacency(int n, const std::vector<WeightedEdge>& edges,
                    const std::vector<char>& skip = {}) {
    Adjacency adj;
    adj.nbr.assign(n, {});
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
        if (!skip.empty() && skip[k]) continue;
        adj.nbr[edges[k].u].emplace_back(edges[k].v, k);
        adj.nbr[edges[k].v].emplace_back(edges[k].u, k);
    }
    return adj;
}

// Bridges of a multigraph (parallel edges are never bridges).
std::vector<char> find_bridges(int n, const std::vector<WeightedEdge>& edges) {
    const Adjacency adj = adjacency(n, edges);
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<char> bridge(edges.size(), 0);
    int timer = 0;
    struct Frame {
        int v;
        int parent_edge;
        std::size_t next;
    };
    for (int s = 0; s < n; ++s) {
        if (disc[s] != -1) continue;
        std::vector<Frame> stack{{s, -1, 0}};
        disc[s] = low[s] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < adj.nbr[f.v].size()) {
                auto [w, k] = adj.nbr[f.v][f.next++];
                if (k == f.parent_edge) continue;
                if (disc[w] == -1) {
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, k, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                const int v = f.v;
                const int pe = f.parent_edge;
                stack.pop_back();
                if (!stack.empty()) {
                    const int p = stack.back().v;
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] > disc[p]) bridge[pe] = 1;
                }
            }
        }
    }
    return bridge;
}

// Makes every node's ghost count (one-sided edges owned by the other end)
// even over the non-skipped edges; requires an even edge count per
// component.
void orient_even(int n, const std::vector<WeightedEdge>& edges, const std::vector<char>& skip,
                 EdgeAssignment& out) {
    const Adjacency adj = adjacency(n, edges, skip);
    std::vector<int> ghosts(n, 0);
    std::vector<char> seen(n, 0);
    std::vector<int> parent_edge(n, -1);
    std::vector<char> tree(edges.size(), 0);
    std::vector<int> order;

    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (auto [w, k] : adj.nbr[v]) {
                if (seen[w]) continue;
                seen[w] = 1;
                parent_edge[w] = k;
                tree[k] = 1;
                queue.push_back(w);
            }
        }
    }
    auto own = [&](int k, int owner) {
        const auto& e = edges[k];
        out.owner[k] = owner == e.u ? Endpoint::U : Endpoint::V;
        ++ghosts[owner == e.u ? e.v : e.u];
    };
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
        if ((!skip.empty() && skip[k]) || tree[k]) continue;
        own(k, std::min(edges[k].u, edges[k].v));
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        const int k = parent_edge[v];
        if (k == -1) {
            if (ghosts[v] % 2) throw InternalError("edge assignment left an odd root");
            continue;
        }
        const int p = edges[k].u == v ? edges[k].v : edges[k].u;
        own(k, ghosts[v] % 2 ? p : v);
    }
}

}  // namespace

EdgeAssignment assign_edges(int node_count, const std::vector<WeightedEdge>& edges) {
    for (const auto& e : edges) {
        if (e.u == e.v) throw std::invalid_argument("assign_edges: loops are not supported");
    }
    EdgeAssignment out;
    out.owner.assign(edges.size(), Endpoint::U);

    // component label and edge count per component
    std::vector<int> comp(node_count, -1);
    const Adjacency adj = adjacency(node_count, edges);
    int comps = 0;
    for (int s = 0; s < node_count; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = comps;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (auto [w, k] : adj.nbr[v]) {
                if (comp[w] == -1) {
                    comp[w] = comps;
                    queue.push_back(w);
                }
            }
        }
        ++comps;
    }
    std::vector<int> edge_count(comps, 0);
    for (const auto& e : edges) ++edge_count[comp[e.u]];

    const std::vector<char> bridge = find_bridges(node_count, edges);
    std::vector<int> degree(node_count, 0);
    for (const auto& e : edges) {
        ++degree[e.u];
        ++degree[e.v];
    }

    // odd components: one edge owned by both ends. A non-bridge keeps the
    // rest connected; in a tree a leaf edge leaves an even remainder.
    std::vector<char> skip(edges.size(), 0);
    std::vector<int> both_of(comps, -1);
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
        const int c = comp[edges[k].u];
        if (edge_count[c] % 2 == 0 || bridge[k]) continue;
        if (both_of[c] == -1) both_of[c] = k;
    }
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
        const int c = comp[edges[k].u];
        if (edge_count[c] % 2 == 0 || both_of[c] != -1) continue;
        if (degree[edges[k].u] == 1 || degree[edges[k].v] == 1) both_of[c] = k;
    }
    for (int c = 0; c < comps; ++c) {
        if (both_of[c] == -1) continue;
        out.owner[both_of[c]] = Endpoint::Both;
        skip[both_of[c]] = 1;
    }
    orient_even(node_count, edges, skip, out);
    return out;
}

bool assignment_valid(int node_count, const std::vector<WeightedEdge>& edges,
                      const EdgeAssignment& assignment) {
    if (assignment.owner.size() != edges.size()) return false;
    std::vector<int> deg(node_count, 0), owned(node_count, 0);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        ++deg[e.u];
        ++deg[e.v];
        switch (assignment.owner[k]) {
            case Endpoint::U: ++owned[e.u]; break;
            case Endpoint::V: ++owned[e.v]; break;
            case Endpoint::Both:
                ++owned[e.u];
                ++owned[e.v];
                break;
        }
    }
    for (int v = 0; v < node_count; ++v) {
        if (deg[v] % 2 != owned[v] % 2) return false;
    }
    return true;
}

namespace {

// Shared construction. `max_piece` == 0 means one complete gadget per node.
GadgetGraph build_gadgets(const TJoinInstance& inst, const EdgeAssignment& assignment,
                          int max_piece) {
    if (!assignment_valid(inst.node_count, inst.edges, assignment)) {
        throw std::invalid_argument("edge assignment violates parity rule");
    }
    GadgetGraph gg;
    const int m = static_cast<int>(inst.edges.size());
    gg.join_marker.assign(m, -1);

    // per original node: its gadget members in edge order, with member cost
    // (0 for true nodes, w(e) for ghosts) so that intra weights are additive
    std::vector<std::vector<int>> members(inst.node_count);
    std::vector<int> true_node(m, -1), ghost_node(m, -1), true_other(m, -1);
    std::vector<std::int64_t> cost;

    auto add_node = [&](GadgetNodeKind kind, int owner, int edge, std::int64_t c) {
        gg.nodes.push_back({kind, owner, edge});
        cost.push_back(c);
        return static_cast<int>(gg.nodes.size()) - 1;
    };

    std::vector<std::vector<int>> incident(inst.node_count);
    for (int k = 0; k < m; ++k) {
        incident[inst.edges[k].u].push_back(k);
        incident[inst.edges[k].v].push_back(k);
    }
    for (int v = 0; v < inst.node_count; ++v) {
        for (int k : incident[v]) {
            const auto& e = inst.edges[k];
            const Endpoint own = assignment.owner[k];
            const bool owns = own == Endpoint::Both || (own == Endpoint::U && e.u == v) ||
                              (own == Endpoint::V && e.v == v);
            int id;
            if (owns) {
                id = add_node(GadgetNodeKind::True, v, k, 0);
                if (true_node[k] == -1) {
                    true_node[k] = id;
                } else {
                    true_other[k] = id;
                }
            } else {
                id = add_node(GadgetNodeKind::Ghost, v, k, e.weight);
                ghost_node[k] = id;
            }
            members[v].push_back(id);
        }
    }

    auto add_edge = [&](int a, int b, std::int64_t w, GadgetEdgeKind kind) {
        gg.edges.push_back({a, b, w});
        gg.edge_kind.push_back(kind);
        return static_cast<int>(gg.edges.size()) - 1;
    };
    auto clique = [&](const std::vector<int>& piece) {
        for (std::size_t i = 0; i < piece.size(); ++i) {
            for (std::size_t j = i + 1; j < piece.size(); ++j) {
                add_edge(piece[i], piece[j], cost[piece[i]] + cost[piece[j]],
                         GadgetEdgeKind::Intra);
            }
        }
    };

    for (int v = 0; v < inst.node_count; ++v) {
        const auto& mem = members[v];
        if (max_piece == 0 || static_cast<int>(mem.size()) <= max_piece) {
            clique(mem);
            continue;
        }
        // split into consecutive pieces; a zero-weight divide link between
        // neighbouring pieces carries parity from one piece to the next
        std::vector<std::vector<int>> pieces;
        for (std::size_t i = 0; i < mem.size(); i += max_piece) {
            pieces.emplace_back(mem.begin() + i,
                                mem.begin() + std::min(mem.size(), i + max_piece));
        }
        for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
            const int left = add_node(GadgetNodeKind::Divide, v, -1, 0);
            const int right = add_node(GadgetNodeKind::Divide, v, -1, 0);
            pieces[p].push_back(left);
            pieces[p + 1].push_back(right);
            add_edge(left, right, 0, GadgetEdgeKind::DivideLink);
        }
        for (const auto& piece : pieces) clique(piece);
    }

    for (int k = 0; k < m; ++k) {
        if (assignment.owner[k] == Endpoint::Both) {
            gg.join_marker[k] =
                add_edge(true_node[k], true_other[k], inst.edges[k].weight, GadgetEdgeKind::BothLink);
        } else {
            const int d = add_node(GadgetNodeKind::Dummy, -1, k, 0);
            gg.join_marker[k] = add_edge(true_node[k], d, 0, GadgetEdgeKind::Connector);
            add_edge(d, ghost_node[k], 0, GadgetEdgeKind::Connector);
        }
    }
    return gg;
}

}  // namespace

GadgetGraph build_generalized_gadget_graph(const TJoinInstance& inst,
                                           const EdgeAssignment& assignment) {
    return build_gadgets(inst, assignment, 0);
}

GadgetGraph build_optimized_gadget_graph(const TJoinInstance& inst,
                                         const EdgeAssignment& assignment) {
    return build_gadgets(inst, assignment, 3);
}

TJoinResult solve_tjoin(const TJoinInstance& inst, GadgetMode mode) {
    for (const auto& e : inst.edges) {
        if (e.u < 0 || e.v < 0 || e.u >= inst.node_count || e.v >= inst.node_count) {
            throw std::invalid_argument("T-join edge endpoint out of range");
        }
        if (e.weight < 0) throw std::invalid_argument("T-join weights must be non-negative");
    }
    if (odd_degree_nodes(inst.node_count, inst.edges) != inst.terminals) {
        throw std::invalid_argument("gadget reduction requires T = odd-degree nodes");
    }

    // loops never change parity and cost >= 0, so they are never needed
    TJoinInstance core;
    core.node_count = inst.node_count;
    core.terminals = inst.terminals;
    std::vector<int> origin;
    for (int k = 0; k < static_cast<int>(inst.edges.size()); ++k) {
        if (inst.edges[k].u == inst.edges[k].v) continue;
        core.edges.push_back(inst.edges[k]);
        origin.push_back(k);
    }

    const EdgeAssignment assignment = assign_edges(core.node_count, core.edges);
    const GadgetGraph gg = mode == GadgetMode::Generalized
                               ? build_generalized_gadget_graph(core, assignment)
                               : build_optimized_gadget_graph(core, assignment);
    const Matching matching = min_weight_perfect_matching(gg.node_count(), gg.edges);

    std::vector<char> used(gg.edges.size(), 0);
    for (int idx : matching.edges) used[idx] = 1;

    TJoinResult out;
    out.gadget_nodes = gg.node_count();
    out.gadget_edges = static_cast<int>(gg.edges.size());
    std::vector<int> core_join;
    for (int k = 0; k < static_cast<int>(core.edges.size()); ++k) {
        if (used[gg.join_marker[k]]) {
            core_join.push_back(k);
            out.edges.push_back(origin[k]);
            out.weight += core.edges[k].weight;
        }
    }
    if (!is_tjoin(core.node_count, core.edges, core.terminals, core_join)) {
        throw InternalError("matching did not decode to a T-join");
    }
    if (out.weight != matching.weight) {
        throw InternalError("T-join weight " + std::to_string(out.weight) +
                            " differs from matching weight " + std::to_string(matching.weight));
    }
    return out;
}

}  // namespace aapsm
