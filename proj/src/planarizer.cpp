#include "aapsm/planarizer.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "aapsm/error.hpp"
#include "aapsm/parallel.hpp"
#include "aapsm/parity_dsu.hpp"

namespace aapsm {
namespace {

bool is_removed(const EdgeMask& m, int e) { return !m.empty() && m[e]; }

void check_distinct_positions(const PhaseConflictGraph& g) {
    std::vector<int> order(g.nodes.size());
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](int i) { return std::tie(g.nodes[i].pos.x, g.nodes[i].pos.y); };
    std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (g.nodes[order[i]].pos == g.nodes[order[i - 1]].pos) {
            throw ValidationError("nodes " + std::to_string(std::min(order[i], order[i - 1])) +
                                  " and " + std::to_string(std::max(order[i], order[i - 1])) +
                                  " share a position");
        }
    }
}

struct Box {
    Coord x_lo, y_lo, x_hi, y_hi;
};

Box segment_box(const Point& a, const Point& b) {
    return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

}  // namespace

bool edges_cross(const PhaseConflictGraph& g, const PcgEdge& e, const PcgEdge& f) {
    const Point& a = g.nodes[e.u].pos;
    const Point& b = g.nodes[e.v].pos;
    const Point& c = g.nodes[f.u].pos;
    const Point& d = g.nodes[f.v].pos;
    const bool share = e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v;
    if (!share) return segments_intersect(a, b, c, d);
    if ((e.u == f.u && e.v == f.v) || (e.u == f.v && e.v == f.u)) return true;
    // common endpoint: only a positive-length collinear overlap counts
    const int o = (e.u == f.u || e.u == f.v) ? e.u : e.v;
    const Point& po = g.nodes[o].pos;
    return collinear_same_direction(po, g.nodes[e.other(o)].pos, g.nodes[f.other(o)].pos);
}

std::vector<EdgePair> find_crossings(const PhaseConflictGraph& g, const EdgeMask& removed) {
    check_distinct_positions(g);
    std::vector<int> live;
    for (const auto& e : g.edges) {
        if (!is_removed(removed, e.id)) live.push_back(e.id);
    }
    std::vector<Box> box(g.edges.size());
    for (int id : live) box[id] = segment_box(g.nodes[g.edges[id].u].pos, g.nodes[g.edges[id].v].pos);
    std::sort(live.begin(), live.end(), [&](int a, int b) {
        return box[a].x_lo < box[b].x_lo || (box[a].x_lo == box[b].x_lo && a < b);
    });

    const auto n = static_cast<std::int64_t>(live.size());
    std::vector<std::vector<EdgePair>> per_thread(parallel::max_threads());
#pragma omp parallel for schedule(dynamic, 32)
    for (std::int64_t i = 0; i < n; ++i) {
        auto& local = per_thread[parallel::thread_id()];
        const int ei = live[i];
        const Box& bi = box[ei];
        for (std::int64_t j = i + 1; j < n; ++j) {
            const int ej = live[j];
            const Box& bj = box[ej];
            if (bj.x_lo > bi.x_hi) break;
            if (bj.y_lo > bi.y_hi || bi.y_lo > bj.y_hi) continue;
            if (edges_cross(g, g.edges[ei], g.edges[ej])) {
                local.emplace_back(std::min(ei, ej), std::max(ei, ej));
            }
        }
    }
    return parallel::merge_sorted(per_thread, std::less<EdgePair>{});
}

PlanarEmbedding planarize(const PhaseConflictGraph& g) {
    const auto crossings = find_crossings(g);
    const std::size_t m = g.edges.size();
    std::vector<std::vector<int>> partners(m);
    for (auto [a, b] : crossings) {
        partners[a].push_back(b);
        partners[b].push_back(a);
    }
    std::vector<int> count(m);
    for (std::size_t e = 0; e < m; ++e) count[e] = static_cast<int>(partners[e].size());

    // (weight, -crossings, id): begin() is the next edge to drop
    using Key = std::tuple<std::int64_t, int, int>;
    auto key = [&](int e) { return Key{g.edges[e].weight, -count[e], e}; };
    std::set<Key> queue;
    for (std::size_t e = 0; e < m; ++e) {
        if (count[e] > 0) queue.insert(key(static_cast<int>(e)));
    }

    EdgeMask removed(m, false);
    std::vector<int> order;
    while (!queue.empty()) {
        const int e = std::get<2>(*queue.begin());
        queue.erase(queue.begin());
        removed[e] = true;
        order.push_back(e);
        for (int f : partners[e]) {
            if (removed[f]) continue;
            queue.erase(key(f));
            --count[f];
            if (count[f] > 0) queue.insert(key(f));
        }
    }
    return embed(g, removed, std::move(order));
}

namespace {

// Counter-clockwise angular order of direction vectors starting at +x.
bool angle_less(const Point& da, const Point& db) {
    auto upper = [](const Point& d) { return d.y > 0 || (d.y == 0 && d.x > 0); };
    const bool ua = upper(da);
    const bool ub = upper(db);
    if (ua != ub) return ua;
    return orientation(Point{0, 0}, da, db) > 0;
}

}  // namespace

PlanarEmbedding embed(const PhaseConflictGraph& g, const EdgeMask& removed,
                      std::vector<int> removed_order) {
    PlanarEmbedding emb;
    const std::size_t n = g.nodes.size();
    const std::size_t m = g.edges.size();
    emb.rotation.assign(n, {});
    emb.face_of_half.assign(2 * m, -1);
    emb.component.assign(n, -1);
    for (const auto& e : g.edges) {
        if (is_removed(removed, e.id)) continue;
        emb.surviving.push_back(e.id);
        emb.rotation[e.u].push_back(e.id);
        emb.rotation[e.v].push_back(e.id);
    }
    if (removed_order.empty()) {
        for (std::size_t e = 0; e < m; ++e) {
            if (is_removed(removed, static_cast<int>(e))) removed_order.push_back(static_cast<int>(e));
        }
    }
    emb.removed_p = std::move(removed_order);

    // rotation system; index of each half-edge's edge within its tail's rotation
    std::vector<int> slot(2 * m, -1);
    for (std::size_t v = 0; v < n; ++v) {
        auto& rot = emb.rotation[v];
        const Point& pv = g.nodes[v].pos;
        auto dir = [&](int e) {
            const Point& q = g.nodes[g.edges[e].other(static_cast<int>(v))].pos;
            return Point{q.x - pv.x, q.y - pv.y};
        };
        std::sort(rot.begin(), rot.end(), [&](int a, int b) {
            const Point da = dir(a);
            const Point db = dir(b);
            if (angle_less(da, db)) return true;
            if (angle_less(db, da)) return false;
            return a < b;
        });
        for (std::size_t i = 0; i < rot.size(); ++i) {
            const auto& e = g.edges[rot[i]];
            slot[half_edge(e.id, e.u == static_cast<int>(v) ? 0 : 1)] = static_cast<int>(i);
        }
    }

    // components over nodes with surviving edges
    ParityDsu dsu(n);
    for (int e : emb.surviving) dsu.unite(g.edges[e].u, g.edges[e].v, 0);
    std::vector<int> comp_of_root(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        if (emb.rotation[v].empty()) continue;
        const int r = dsu.find(static_cast<int>(v)).first;
        if (comp_of_root[r] == -1) comp_of_root[r] = emb.component_count++;
        emb.component[v] = comp_of_root[r];
    }

    auto tail = [&](int h) {
        const auto& e = g.edges[edge_of(h)];
        return (h % 2 == 0) ? e.u : e.v;
    };
    auto head = [&](int h) {
        const auto& e = g.edges[edge_of(h)];
        return (h % 2 == 0) ? e.v : e.u;
    };
    // arrive at v along h, leave on the edge clockwise-next from the reverse of h
    auto next_half = [&](int h) {
        const int v = head(h);
        const int rev = h ^ 1;
        const auto& rot = emb.rotation[v];
        const int deg = static_cast<int>(rot.size());
        const int idx = slot[rev];
        const int e2 = rot[(idx - 1 + deg) % deg];
        return half_edge(e2, g.edges[e2].u == v ? 0 : 1);
    };

    for (int e : emb.surviving) {
        for (int dir = 0; dir < 2; ++dir) {
            const int start = half_edge(e, dir);
            if (emb.face_of_half[start] != -1) continue;
            Face face;
            face.id = static_cast<int>(emb.faces.size());
            face.component = emb.component[tail(start)];
            int h = start;
            do {
                emb.face_of_half[h] = face.id;
                face.half_edges.push_back(h);
                const Point& p = g.nodes[tail(h)].pos;
                const Point& q = g.nodes[head(h)].pos;
                face.area2 += static_cast<__int128>(p.x) * q.y - static_cast<__int128>(q.x) * p.y;
                h = next_half(h);
            } while (h != start);
            emb.faces.push_back(std::move(face));
        }
    }

    // outer face per component = most negative signed area; Euler check
    std::vector<int> outer(emb.component_count, -1);
    std::vector<long long> nv(emb.component_count, 0), ne(emb.component_count, 0),
        nf(emb.component_count, 0);
    for (auto& f : emb.faces) {
        ++nf[f.component];
        int& o = outer[f.component];
        if (o == -1 || f.area2 < emb.faces[o].area2) o = f.id;
    }
    for (int o : outer) emb.faces[o].outer = true;
    for (std::size_t v = 0; v < n; ++v) {
        if (emb.component[v] >= 0) ++nv[emb.component[v]];
    }
    for (int e : emb.surviving) ++ne[emb.component[g.edges[e].u]];
    for (int c = 0; c < emb.component_count; ++c) {
        if (nv[c] - ne[c] + nf[c] != 2) {
            throw InternalError("Euler check failed on component " + std::to_string(c) + ": V=" +
                                std::to_string(nv[c]) + " E=" + std::to_string(ne[c]) +
                                " F=" + std::to_string(nf[c]));
        }
    }
    return emb;
}

std::vector<int> DualGraph::degrees() const {
    std::vector<int> deg(node_count, 0);
    for (const auto& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

DualGraph build_dual(const PhaseConflictGraph& g, const PlanarEmbedding& emb) {
    DualGraph d;
    d.node_count = static_cast<int>(emb.faces.size());
    d.component.resize(emb.faces.size());
    for (const auto& f : emb.faces) d.component[f.id] = f.component;
    for (int e : emb.surviving) {
        DualEdge de;
        de.u = emb.face_of_half[half_edge(e, 0)];
        de.v = emb.face_of_half[half_edge(e, 1)];
        de.weight = g.edges[e].weight;
        de.primal_edge = e;
        d.edges.push_back(de);
    }
    return d;
}

std::string dump_embedding(const PhaseConflictGraph& g, const PlanarEmbedding& emb) {
    std::ostringstream os;
    for (const auto& f : emb.faces) {
        os << "face " << f.id << ' ' << f.component << ' ' << (f.outer ? "outer" : "inner");
        for (int h : f.half_edges) {
            const auto& e = g.edges[edge_of(h)];
            os << ' ' << ((h % 2 == 0) ? e.u : e.v);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace aapsm
