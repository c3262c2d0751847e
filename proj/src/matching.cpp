#include "aapsm/matching.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "aapsm/error.hpp"

namespace aapsm {
namespace {

// Vertices are 0..n-1, non-trivial blossoms n..2n-1. Edge endpoints are
// numbered p = 2k (tail of edge k seen from the head) and 2k+1; endpoint[p]
// is the vertex at that end. Duals are stored doubled so every quantity
// stays integral for integer weights.
class BlossomSolver {
public:
    BlossomSolver(int n, const std::vector<WeightedEdge>& edges, bool max_cardinality)
        : n_(n), edges_(edges), max_cardinality_(max_cardinality) {}

    /// Per vertex, the remote endpoint index p of its matched edge
    /// (edge p / 2), or -1.
    std::vector<int> solve();

private:
    using i64 = std::int64_t;

    i64 slack(int k) const {
        const auto& e = edges_[k];
        return dual_[e.u] + dual_[e.v] - 2 * e.weight;
    }

    int wrap(const std::vector<int>& v, int j) const {
        const int s = static_cast<int>(v.size());
        return v[((j % s) + s) % s];
    }

    void leaves(int b, std::vector<int>& out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : childs_[b]) leaves(t, out);
    }

    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p);
    int scan_blossom(int v, int w);
    void add_blossom(int base, int k);
    void expand_blossom(int b, bool endstage);
    void augment_blossom(int b, int v);
    void augment_matching(int k);

    int n_;
    const std::vector<WeightedEdge>& edges_;
    bool max_cardinality_;

    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> childs_;
    std::vector<int> base_;
    std::vector<std::vector<int>> endps_;
    std::vector<int> bestedge_;
    std::vector<std::optional<std::vector<int>>> blossom_best_;
    std::vector<int> unused_;
    std::vector<i64> dual_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;
};

void BlossomSolver::assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
        leaves(b, queue_);
    } else if (t == 2) {
        const int base = base_[b];
        assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
}

int BlossomSolver::scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
        int b = inblossom_[v];
        if (label_[b] & 4) {
            base = base_[b];
            break;
        }
        path.push_back(b);
        label_[b] = 5;
        if (labelend_[b] == -1) {
            v = -1;
        } else {
            v = endpoint_[labelend_[b]];
            b = inblossom_[v];
            v = endpoint_[labelend_[b]];
        }
        if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
}

void BlossomSolver::add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unused_.back();
    unused_.pop_back();
    base_[b] = base;
    parent_[b] = -1;
    parent_[bb] = b;
    auto& path = childs_[b];
    auto& endps = endps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
        parent_[bv] = b;
        path.push_back(bv);
        endps.push_back(labelend_[bv]);
        v = endpoint_[labelend_[bv]];
        bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
        parent_[bw] = b;
        path.push_back(bw);
        endps.push_back(labelend_[bw] ^ 1);
        w = endpoint_[labelend_[bw]];
        bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dual_[b] = 0;
    for (int leaf : leaves(b)) {
        if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
        inblossom_[leaf] = b;
    }

    std::vector<int> bestedgeto(2 * n_, -1);
    for (int sub : path) {
        std::vector<std::vector<int>> nblists;
        if (!blossom_best_[sub]) {
            for (int leaf : leaves(sub)) {
                std::vector<int> lst;
                for (int p : neighbend_[leaf]) lst.push_back(p / 2);
                nblists.push_back(std::move(lst));
            }
        } else {
            nblists.push_back(*blossom_best_[sub]);
        }
        for (const auto& nblist : nblists) {
            for (int kk : nblist) {
                int i = edges_[kk].u;
                int j = edges_[kk].v;
                if (inblossom_[j] == b) std::swap(i, j);
                const int bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 &&
                    (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
                    bestedgeto[bj] = kk;
                }
            }
        }
        blossom_best_[sub].reset();
        bestedge_[sub] = -1;
    }
    std::vector<int> best;
    for (int kk : bestedgeto) {
        if (kk != -1) best.push_back(kk);
    }
    bestedge_[b] = -1;
    for (int kk : best) {
        if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
    }
    blossom_best_[b] = std::move(best);
}

void BlossomSolver::expand_blossom(int b, bool endstage) {
    const std::vector<int> children = childs_[b];
    for (int s : children) {
        parent_[s] = -1;
        if (s < n_) {
            inblossom_[s] = s;
        } else if (endstage && dual_[s] == 0) {
            expand_blossom(s, endstage);
        } else {
            for (int leaf : leaves(s)) inblossom_[leaf] = s;
        }
    }
    if (!endstage && label_[b] == 2) {
        const auto& ch = childs_[b];
        const auto& ep = endps_[b];
        const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
        int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
        int jstep;
        int endptrick;
        if (j & 1) {
            j -= static_cast<int>(ch.size());
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        int p = labelend_[b];
        while (j != 0) {
            label_[endpoint_[p ^ 1]] = 0;
            label_[endpoint_[wrap(ep, j - endptrick) ^ endptrick ^ 1]] = 0;
            assign_label(endpoint_[p ^ 1], 2, p);
            allowedge_[wrap(ep, j - endptrick) / 2] = 1;
            j += jstep;
            p = wrap(ep, j - endptrick) ^ endptrick;
            allowedge_[p / 2] = 1;
            j += jstep;
        }
        int bv = wrap(ch, j);
        label_[endpoint_[p ^ 1]] = label_[bv] = 2;
        labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
        bestedge_[bv] = -1;
        j += jstep;
        while (wrap(ch, j) != entrychild) {
            bv = wrap(ch, j);
            if (label_[bv] == 1) {
                j += jstep;
                continue;
            }
            const auto lv = leaves(bv);
            int v = lv.back();
            for (int leaf : lv) {
                if (label_[leaf] != 0) {
                    v = leaf;
                    break;
                }
            }
            if (label_[v] != 0) {
                label_[v] = 0;
                label_[endpoint_[mate_[base_[bv]]]] = 0;
                assign_label(v, 2, labelend_[v]);
            }
            j += jstep;
        }
    }
    label_[b] = labelend_[b] = -1;
    childs_[b].clear();
    endps_[b].clear();
    base_[b] = -1;
    blossom_best_[b].reset();
    bestedge_[b] = -1;
    unused_.push_back(b);
}

void BlossomSolver::augment_blossom(int b, int v) {
    int t = v;
    while (parent_[t] != b) t = parent_[t];
    if (t >= n_) augment_blossom(t, v);
    auto& ch = childs_[b];
    auto& ep = endps_[b];
    const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
        j -= static_cast<int>(ch.size());
        jstep = 1;
        endptrick = 0;
    } else {
        jstep = -1;
        endptrick = 1;
    }
    while (j != 0) {
        j += jstep;
        t = wrap(ch, j);
        const int p = wrap(ep, j - endptrick) ^ endptrick;
        if (t >= n_) augment_blossom(t, endpoint_[p]);
        j += jstep;
        t = wrap(ch, j);
        if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
        mate_[endpoint_[p]] = p ^ 1;
        mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ep.begin(), ep.begin() + i, ep.end());
    base_[b] = base_[ch[0]];
}

void BlossomSolver::augment_matching(int k) {
    const int v = edges_[k].u;
    const int w = edges_[k].v;
    for (auto [s, p] : {std::pair{v, 2 * k + 1}, std::pair{w, 2 * k}}) {
        while (true) {
            const int bs = inblossom_[s];
            if (bs >= n_) augment_blossom(bs, s);
            mate_[s] = p;
            if (labelend_[bs] == -1) break;
            const int t = endpoint_[labelend_[bs]];
            const int bt = inblossom_[t];
            s = endpoint_[labelend_[bt]];
            const int j = endpoint_[labelend_[bt] ^ 1];
            if (bt >= n_) augment_blossom(bt, j);
            mate_[j] = labelend_[bt];
            p = labelend_[bt] ^ 1;
        }
    }
}

std::vector<int> BlossomSolver::solve() {
    const int n = n_;
    const int m = static_cast<int>(edges_.size());
    mate_.assign(n, -1);
    if (m == 0) return mate_;

    i64 maxweight = 0;
    for (const auto& e : edges_) maxweight = std::max(maxweight, e.weight);
    endpoint_.resize(2 * m);
    neighbend_.assign(n, {});
    for (int k = 0; k < m; ++k) {
        endpoint_[2 * k] = edges_[k].u;
        endpoint_[2 * k + 1] = edges_[k].v;
        if (edges_[k].u == edges_[k].v) continue;
        neighbend_[edges_[k].u].push_back(2 * k + 1);
        neighbend_[edges_[k].v].push_back(2 * k);
    }
    label_.assign(2 * n, 0);
    labelend_.assign(2 * n, -1);
    inblossom_.resize(n);
    for (int i = 0; i < n; ++i) inblossom_[i] = i;
    parent_.assign(2 * n, -1);
    childs_.assign(2 * n, {});
    base_.assign(2 * n, -1);
    for (int i = 0; i < n; ++i) base_[i] = i;
    endps_.assign(2 * n, {});
    bestedge_.assign(2 * n, -1);
    blossom_best_.assign(2 * n, std::nullopt);
    unused_.clear();
    for (int i = n; i < 2 * n; ++i) unused_.push_back(i);
    dual_.assign(2 * n, 0);
    for (int i = 0; i < n; ++i) dual_[i] = maxweight;
    allowedge_.assign(m, 0);

    for (int stage = 0; stage < n; ++stage) {
        std::fill(label_.begin(), label_.end(), 0);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (int b = n; b < 2 * n; ++b) blossom_best_[b].reset();
        std::fill(allowedge_.begin(), allowedge_.end(), 0);
        queue_.clear();
        for (int v = 0; v < n; ++v) {
            if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
        }

        bool augmented = false;
        while (true) {
            while (!queue_.empty() && !augmented) {
                const int v = queue_.back();
                queue_.pop_back();
                for (int p : neighbend_[v]) {
                    const int k = p / 2;
                    const int w = endpoint_[p];
                    if (inblossom_[v] == inblossom_[w]) continue;
                    i64 kslack = 0;
                    if (!allowedge_[k]) {
                        kslack = slack(k);
                        if (kslack <= 0) allowedge_[k] = 1;
                    }
                    if (allowedge_[k]) {
                        if (label_[inblossom_[w]] == 0) {
                            assign_label(w, 2, p ^ 1);
                        } else if (label_[inblossom_[w]] == 1) {
                            const int base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                augmented = true;
                                break;
                            }
                        } else if (label_[w] == 0) {
                            label_[w] = 2;
                            labelend_[w] = p ^ 1;
                        }
                    } else if (label_[inblossom_[w]] == 1) {
                        const int b = inblossom_[v];
                        if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
                    } else if (label_[w] == 0) {
                        if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
                    }
                }
            }
            if (augmented) break;

            int deltatype = -1;
            i64 delta = 0;
            int deltaedge = -1;
            int deltablossom = -1;
            if (!max_cardinality_) {
                deltatype = 1;
                delta = *std::min_element(dual_.begin(), dual_.begin() + n);
            }
            for (int v = 0; v < n; ++v) {
                if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                    const i64 d = slack(bestedge_[v]);
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[v];
                    }
                }
            }
            for (int b = 0; b < 2 * n; ++b) {
                if (parent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                    const i64 kslack = slack(bestedge_[b]);
                    if (kslack % 2 != 0) throw InternalError("odd slack between S-blossoms");
                    const i64 d = kslack / 2;
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[b];
                    }
                }
            }
            for (int b = n; b < 2 * n; ++b) {
                if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 &&
                    (deltatype == -1 || dual_[b] < delta)) {
                    delta = dual_[b];
                    deltatype = 4;
                    deltablossom = b;
                }
            }
            if (deltatype == -1) {
                deltatype = 1;
                delta = std::max<i64>(0, *std::min_element(dual_.begin(), dual_.begin() + n));
            }

            for (int v = 0; v < n; ++v) {
                const int l = label_[inblossom_[v]];
                if (l == 1) {
                    dual_[v] -= delta;
                } else if (l == 2) {
                    dual_[v] += delta;
                }
            }
            for (int b = n; b < 2 * n; ++b) {
                if (base_[b] >= 0 && parent_[b] == -1) {
                    if (label_[b] == 1) {
                        dual_[b] += delta;
                    } else if (label_[b] == 2) {
                        dual_[b] -= delta;
                    }
                }
            }

            if (deltatype == 1) {
                break;
            } else if (deltatype == 2) {
                allowedge_[deltaedge] = 1;
                int i = edges_[deltaedge].u;
                int j = edges_[deltaedge].v;
                if (label_[inblossom_[i]] == 0) std::swap(i, j);
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allowedge_[deltaedge] = 1;
                queue_.push_back(edges_[deltaedge].u);
            } else {
                expand_blossom(deltablossom, false);
            }
        }
        if (!augmented) break;

        for (int b = n; b < 2 * n; ++b) {
            if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 && dual_[b] == 0) {
                expand_blossom(b, true);
            }
        }
    }

    return mate_;
}

}  // namespace

Matching max_weight_matching(int node_count, const std::vector<WeightedEdge>& edges,
                             bool max_cardinality) {
    for (const auto& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= node_count || e.v >= node_count) {
            throw std::invalid_argument("matching edge endpoint out of range");
        }
    }
    // the solver indexes edges by position; drop loops so endpoints stay distinct
    std::vector<WeightedEdge> clean;
    std::vector<int> origin;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].u == edges[k].v) continue;
        clean.push_back(edges[k]);
        origin.push_back(static_cast<int>(k));
    }
    BlossomSolver solver(node_count, clean, max_cardinality);
    const std::vector<int> ends = solver.solve();
    Matching m;
    m.mate.assign(node_count, -1);
    for (int v = 0; v < node_count; ++v) {
        if (ends[v] < 0) continue;
        const int k = ends[v] / 2;
        const auto& e = clean[k];
        m.mate[v] = e.u == v ? e.v : e.u;
        if (v < m.mate[v]) {
            m.edges.push_back(origin[k]);
            m.weight += e.weight;
        }
    }
    std::sort(m.edges.begin(), m.edges.end());
    return m;
}

Matching min_weight_perfect_matching(int node_count, const std::vector<WeightedEdge>& edges) {
    if (node_count % 2 != 0) {
        throw InfeasibleMatching("odd node count " + std::to_string(node_count));
    }
    if (node_count == 0) return {};
    std::int64_t max_w = 0;
    for (const auto& e : edges) {
        if (e.weight < 0) throw std::invalid_argument("negative matching weight");
        max_w = std::max(max_w, e.weight);
    }
    // every perfect matching has node_count/2 edges, so maximising
    // sum(C - w) over maximum-cardinality matchings minimises sum(w)
    const std::int64_t c = max_w + 1;
    std::vector<WeightedEdge> flipped = edges;
    for (auto& e : flipped) e.weight = c - e.weight;
    Matching m = max_weight_matching(node_count, flipped, true);
    for (int v = 0; v < node_count; ++v) {
        if (m.mate[v] == -1) throw InfeasibleMatching("no perfect matching exists");
    }
    m.weight = 0;
    for (int idx : m.edges) m.weight += edges[idx].weight;
    return m;
}

}  // namespace aapsm
