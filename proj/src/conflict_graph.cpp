#include "aapsm/conflict_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "aapsm/error.hpp"
#include "aapsm/parity_dsu.hpp"

namespace aapsm {
namespace {

struct PointLess {
    bool operator()(const Point& a, const Point& b) const {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    }
};

// Moves `pos` in +y, +x, +y, ... steps until `bad(pos)` is false.
template <typename Pred>
Point nudge(Point pos, Pred bad, bool& moved) {
    int step = 0;
    while (bad(pos)) {
        if (step % 2 == 0) {
            ++pos.y;
        } else {
            ++pos.x;
        }
        ++step;
        moved = true;
    }
    return pos;
}

int relation(EdgeKind k) { return k == EdgeKind::FeatureEdge ? 1 : 0; }

}  // namespace

const char* to_string(NodeKind k) { return k == NodeKind::EdgeShifter ? "shifter" : "overlap"; }
const char* to_string(EdgeKind k) { return k == EdgeKind::FeatureEdge ? "feature" : "overlap_half"; }

PhaseConflictGraph build_pcg(const std::vector<Shifter>& shifters,
                             const std::vector<OverlapPair>& overlaps, const DesignRules& rules,
                             const WeightPolicy& policy) {
    PhaseConflictGraph g;
    std::set<Point, PointLess> occupied;
    // positions of the far endpoints of edges already incident to each node
    std::vector<std::vector<Point>> spokes(shifters.size() + overlaps.size());

    for (const auto& s : shifters) {
        if (s.id != static_cast<int>(g.nodes.size())) {
            throw ValidationError("shifter ids must be dense and ordered");
        }
        PcgNode node;
        node.id = s.id;
        node.kind = NodeKind::EdgeShifter;
        node.shifter_a = s.id;
        // Two shifters with the same centre (abutting features sharing a
        // shifter footprint) would make the drawing degenerate.
        node.pos = nudge(rect_center(s.rect), [&](const Point& p) { return occupied.count(p) > 0; },
                         node.perturbed);
        occupied.insert(node.pos);
        g.nodes.push_back(node);
    }

    auto add_edge = [&](int u, int v, EdgeKind kind, int sa, int sb, std::int64_t w, Coord req) {
        PcgEdge e;
        e.id = static_cast<int>(g.edges.size());
        e.u = u;
        e.v = v;
        e.kind = kind;
        e.shifter_a = sa;
        e.shifter_b = sb;
        e.weight = w;
        e.required_separation = req;
        g.edges.push_back(e);
        spokes[u].push_back(g.nodes[v].pos);
        spokes[v].push_back(g.nodes[u].pos);
    };

    std::map<int, std::vector<int>> by_feature;
    std::vector<int> feature_order;
    for (const auto& s : shifters) {
        auto& v = by_feature[s.feature_id];
        if (v.empty()) feature_order.push_back(s.feature_id);
        v.push_back(s.id);
    }
    for (int f : feature_order) {
        const auto& ids = by_feature[f];
        if (ids.size() != 2) {
            throw ValidationError("feature " + std::to_string(f) + " must have exactly two shifters");
        }
        add_edge(ids[0], ids[1], EdgeKind::FeatureEdge, ids[0], ids[1], policy.feature_weight, 0);
    }

    for (const auto& pair : overlaps) {
        const int a = pair.a;
        const int b = pair.b;
        if (a < 0 || b < 0 || a >= static_cast<int>(shifters.size()) ||
            b >= static_cast<int>(shifters.size()) || a == b) {
            throw ValidationError("overlap pair references unknown shifter");
        }
        const Point pa = g.nodes[a].pos;
        const Point pb = g.nodes[b].pos;
        const Point mid{(pa.x + pb.x) / 2, (pa.y + pb.y) / 2};

        auto degenerate = [&](const Point& p) {
            if (occupied.count(p) > 0) return true;
            for (const Point& q : spokes[a]) {
                if (collinear_same_direction(pa, p, q)) return true;
            }
            for (const Point& q : spokes[b]) {
                if (collinear_same_direction(pb, p, q)) return true;
            }
            return false;
        };

        PcgNode node;
        node.id = static_cast<int>(g.nodes.size());
        node.kind = NodeKind::Overlap;
        node.shifter_a = a;
        node.shifter_b = b;
        node.pos = nudge(mid, degenerate, node.perturbed);
        occupied.insert(node.pos);
        g.nodes.push_back(node);

        const Coord required = rules.min_shifter_spacing - pair.separation;
        const std::int64_t w =
            policy.mode == WeightMode::Uniform ? 1 : std::max<std::int64_t>(1, required);
        add_edge(a, node.id, EdgeKind::OverlapHalf, a, b, w, required);
        add_edge(node.id, b, EdgeKind::OverlapHalf, a, b, w, required);
    }
    return g;
}

EdgeMask make_mask(const PhaseConflictGraph& g, const std::vector<int>& removed_edges) {
    EdgeMask m(g.edges.size(), false);
    for (int e : removed_edges) m.at(e) = true;
    return m;
}

namespace {

bool removed_at(const EdgeMask& m, int e) { return !m.empty() && m[e]; }

std::vector<std::vector<int>> incidence(const PhaseConflictGraph& g, const EdgeMask& removed) {
    std::vector<std::vector<int>> inc(g.nodes.size());
    for (const auto& e : g.edges) {
        if (removed_at(removed, e.id)) continue;
        inc[e.u].push_back(e.id);
        inc[e.v].push_back(e.id);
    }
    return inc;
}

}  // namespace

BipartiteCheck is_bipartite(const PhaseConflictGraph& g, const EdgeMask& removed) {
    const auto inc = incidence(g, removed);
    const std::size_t n = g.nodes.size();
    BipartiteCheck out;
    out.coloring.assign(n, -1);
    std::vector<int> parent_edge(n, -1);
    std::vector<int> depth(n, 0);

    for (std::size_t root = 0; root < n; ++root) {
        if (out.coloring[root] != -1) continue;
        out.coloring[root] = 0;
        std::deque<int> queue{static_cast<int>(root)};
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            for (int eid : inc[x]) {
                const int y = g.edges[eid].other(x);
                if (out.coloring[y] == -1) {
                    out.coloring[y] = 1 - out.coloring[x];
                    parent_edge[y] = eid;
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                } else if (out.coloring[y] == out.coloring[x]) {
                    // odd cycle: climb both tree paths to their meeting node
                    out.bipartite = false;
                    std::vector<int> left{eid};
                    std::vector<int> right;
                    int a = x;
                    int b = y;
                    while (a != b) {
                        if (depth[a] >= depth[b]) {
                            left.push_back(parent_edge[a]);
                            a = g.edges[parent_edge[a]].other(a);
                        } else {
                            right.push_back(parent_edge[b]);
                            b = g.edges[parent_edge[b]].other(b);
                        }
                    }
                    left.insert(left.end(), right.rbegin(), right.rend());
                    out.odd_cycle = std::move(left);
                    return out;
                }
            }
        }
    }
    return out;
}

bool is_balanced(const PhaseConflictGraph& g, const EdgeMask& removed) {
    ParityDsu dsu(g.nodes.size());
    for (const auto& e : g.edges) {
        if (removed_at(removed, e.id)) continue;
        if (!dsu.unite(e.u, e.v, relation(e.kind))) return false;
    }
    return true;
}

std::vector<Phase> phase_assign(const PhaseConflictGraph& g,
                                const std::vector<int>& deleted_edges) {
    const EdgeMask removed = make_mask(g, deleted_edges);
    const auto inc = incidence(g, removed);
    std::vector<int> color(g.nodes.size(), -1);
    for (std::size_t root = 0; root < g.nodes.size(); ++root) {
        if (color[root] != -1) continue;
        color[root] = 0;
        std::deque<int> queue{static_cast<int>(root)};
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            for (int eid : inc[x]) {
                const auto& e = g.edges[eid];
                const int y = e.other(x);
                const int want = color[x] ^ relation(e.kind);
                if (color[y] == -1) {
                    color[y] = want;
                    queue.push_back(y);
                } else if (color[y] != want) {
                    throw ContractViolation("residual odd cycle through edge " +
                                            std::to_string(eid) + "; no phase assignment exists");
                }
            }
        }
    }
    std::vector<Phase> out(color.size());
    for (std::size_t i = 0; i < color.size(); ++i) out[i] = color[i] ? Phase::Deg180 : Phase::Deg0;
    return out;
}

bool phases_consistent(const PhaseConflictGraph& g, const std::vector<Phase>& phases,
                       const EdgeMask& removed) {
    for (const auto& e : g.edges) {
        if (removed_at(removed, e.id)) continue;
        const bool differ = phases[e.u] != phases[e.v];
        if (differ != (e.kind == EdgeKind::FeatureEdge)) return false;
    }
    return true;
}

std::string dump_graph(const PhaseConflictGraph& g) {
    std::ostringstream os;
    for (const auto& n : g.nodes) {
        os << "node " << n.id << ' ' << to_string(n.kind) << ' ' << n.pos.x << ' ' << n.pos.y
           << '\n';
    }
    for (const auto& e : g.edges) {
        os << "edge " << e.id << ' ' << e.u << ' ' << e.v << ' ' << e.weight << ' '
           << to_string(e.kind) << ' ' << e.shifter_a << ' ' << e.shifter_b;
        if (e.kind == EdgeKind::OverlapHalf) os << ' ' << e.required_separation;
        os << '\n';
    }
    return os.str();
}

}  // namespace aapsm
