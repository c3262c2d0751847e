#pragma once

// Hand-built layouts and graphs shared by the unit and acceptance tests.

#include <random>
#include <tuple>
#include <vector>

#include "aapsm/conflict_graph.hpp"
#include "aapsm/layout.hpp"
#include "aapsm/planarizer.hpp"
#include "oracles.hpp"

namespace fixture {

using namespace aapsm;

inline Rect rect(Coord x0, Coord y0, Coord x1, Coord y1, std::string layer = "poly") {
    Rect r;
    r.x_lo = x0;
    r.y_lo = y0;
    r.x_hi = x1;
    r.y_hi = y1;
    r.layer = std::move(layer);
    return r;
}

inline Layout layout(std::vector<Rect> rects, DesignRules rules = {}) {
    Layout l;
    l.rules = rules;
    for (std::size_t i = 0; i < rects.size(); ++i) {
        rects[i].id = static_cast<int>(i);
        l.rects.push_back(rects[i]);
    }
    return l;
}

/// Line with a horizontal bar floating 20 nm above its shifters' reach: the
/// bar's lower shifter overlaps both shifters of the line, closing an odd
/// cycle. Optimum is one conflict, fixable by a horizontal space.
inline Layout bar_over_line() {
    return layout({rect(0, 0, 100, 1000), rect(-250, 1220, 350, 1320)});
}

/// Two parallel lines whose inner shifters touch.
inline Layout two_lines() { return layout({rect(0, 0, 100, 1000), rect(500, 0, 600, 1000)}); }

struct GraphSpec {
    std::vector<Point> points;
    // u, v, weight, kind
    std::vector<std::tuple<int, int, std::int64_t, EdgeKind>> edges;
};

/// Graph with explicit node positions; every node is a shifter-kind node
/// unless `overlap_nodes` marks it.
inline PhaseConflictGraph graph(const GraphSpec& spec, const std::vector<int>& overlap_nodes = {}) {
    PhaseConflictGraph g;
    for (std::size_t i = 0; i < spec.points.size(); ++i) {
        PcgNode n;
        n.id = static_cast<int>(i);
        n.pos = spec.points[i];
        n.shifter_a = n.id;
        g.nodes.push_back(n);
    }
    for (int o : overlap_nodes) g.nodes[o].kind = NodeKind::Overlap;
    for (const auto& [u, v, w, kind] : spec.edges) {
        PcgEdge e;
        e.id = static_cast<int>(g.edges.size());
        e.u = u;
        e.v = v;
        e.weight = w;
        e.kind = kind;
        e.shifter_a = u;
        e.shifter_b = v;
        g.edges.push_back(e);
    }
    return g;
}

/// Three features whose shifters overlap pairwise in a ring: three feature
/// edges and three two-edge overlap chains give a 9-cycle. Built directly
/// from shifters since axis-aligned rectangles cannot produce it without
/// extra overlaps.
inline PhaseConflictGraph nine_cycle() {
    std::vector<Shifter> sh;
    const Coord xs[6][2] = {{0, 0}, {100, 0}, {300, 100}, {300, 300}, {100, 400}, {0, 300}};
    for (int i = 0; i < 6; ++i) {
        Shifter s;
        s.id = i;
        s.feature_id = i / 2;
        s.side = i % 2 ? ShifterSide::High : ShifterSide::Low;
        s.rect = rect(xs[i][0], xs[i][1], xs[i][0] + 10, xs[i][1] + 10, "shifter");
        sh.push_back(s);
    }
    return build_pcg(sh, {{1, 2, 0}, {3, 4, 0}, {0, 5, 0}}, DesignRules{});
}

/// Replaces some feature edges by an overlap chain through their midpoint,
/// the way overlap pairs appear in a real conflict graph.
inline PhaseConflictGraph subdivide_edges(std::mt19937_64& rng, const PhaseConflictGraph& g,
                                          double probability) {
    if (probability <= 0.0) return g;
    PhaseConflictGraph out;
    out.nodes = g.nodes;
    std::bernoulli_distribution coin(probability);
    for (const auto& e : g.edges) {
        const Point a = g.nodes[e.u].pos;
        const Point b = g.nodes[e.v].pos;
        const Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
        bool free = (a.x + b.x) % 2 == 0 && (a.y + b.y) % 2 == 0;
        for (const auto& n : out.nodes) free = free && !(n.pos == mid);
        if (!coin(rng) || !free) {
            PcgEdge f = e;
            f.id = static_cast<int>(out.edges.size());
            out.edges.push_back(f);
            continue;
        }
        PcgNode o;
        o.id = static_cast<int>(out.nodes.size());
        o.kind = NodeKind::Overlap;
        o.pos = mid;
        out.nodes.push_back(o);
        for (auto [x, y] : {std::pair{e.u, o.id}, std::pair{o.id, e.v}}) {
            PcgEdge f;
            f.id = static_cast<int>(out.edges.size());
            f.u = x;
            f.v = y;
            f.weight = e.weight;
            f.kind = EdgeKind::OverlapHalf;
            out.edges.push_back(f);
        }
    }
    return out;
}

/// Random crossing-free drawing: nodes on a coarse grid, edges added in
/// random order when they cross nothing already placed. With
/// `subdivide`, some edges become an overlap chain through their midpoint.
inline PhaseConflictGraph random_planar(std::mt19937_64& rng, int nodes, int max_edges,
                                        std::int64_t max_w, double subdivide = 0.0) {
    GraphSpec spec;
    std::vector<std::pair<Coord, Coord>> cells;
    for (Coord x = 0; x < 8; ++x) {
        for (Coord y = 0; y < 8; ++y) cells.emplace_back(x, y);
    }
    std::shuffle(cells.begin(), cells.end(), rng);
    for (int i = 0; i < nodes; ++i) spec.points.push_back({cells[i].first * 8, cells[i].second * 8});

    PhaseConflictGraph g = graph(spec);
    for (int tries = 0; tries < 200 && static_cast<int>(g.edges.size()) < max_edges; ++tries) {
        const int u = static_cast<int>(oracle::uniform(rng, 0, nodes - 1));
        const int v = static_cast<int>(oracle::uniform(rng, 0, nodes - 1));
        if (u == v) continue;
        PcgEdge e;
        e.id = static_cast<int>(g.edges.size());
        e.u = u;
        e.v = v;
        e.weight = oracle::uniform(rng, 1, max_w);
        e.kind = EdgeKind::FeatureEdge;
        bool ok = true;
        for (const auto& f : g.edges) {
            if (edges_cross(g, e, f)) ok = false;
        }
        // a node lying on the new segment would also break the drawing
        for (const auto& n : g.nodes) {
            if (n.id == u || n.id == v) continue;
            if (orientation(g.nodes[u].pos, g.nodes[v].pos, n.pos) == 0 &&
                on_segment(g.nodes[u].pos, g.nodes[v].pos, n.pos)) {
                ok = false;
            }
        }
        if (ok) g.edges.push_back(e);
    }

    return subdivide_edges(rng, g, subdivide);
}

}  // namespace fixture
