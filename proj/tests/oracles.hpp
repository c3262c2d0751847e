#pragma once

// Exhaustive reference answers for small instances.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "aapsm/matching.hpp"

namespace oracle {

using aapsm::WeightedEdge;

/// Best (cardinality, weight) over all matchings, compared lexicographically
/// when `max_cardinality`, by weight alone otherwise.
inline std::pair<int, std::int64_t> best_matching(int n, const std::vector<WeightedEdge>& edges,
                                                  bool max_cardinality) {
    std::vector<char> used(n, 0);
    std::pair<int, std::int64_t> best{0, 0};
    std::function<void(std::size_t, int, std::int64_t)> rec = [&](std::size_t k, int card,
                                                                  std::int64_t w) {
        if (k == edges.size()) {
            const bool better = max_cardinality
                                    ? std::make_pair(card, w) > best
                                    : (w > best.second || (w == best.second && card > best.first));
            if (better) best = {card, w};
            return;
        }
        rec(k + 1, card, w);
        const auto& e = edges[k];
        if (e.u != e.v && !used[e.u] && !used[e.v]) {
            used[e.u] = used[e.v] = 1;
            rec(k + 1, card + 1, w + e.weight);
            used[e.u] = used[e.v] = 0;
        }
    };
    rec(0, 0, 0);
    return best;
}

inline std::optional<std::int64_t> min_perfect_matching(int n,
                                                        const std::vector<WeightedEdge>& edges) {
    std::vector<char> used(n, 0);
    std::optional<std::int64_t> best;
    std::function<void(std::int64_t)> rec = [&](std::int64_t w) {
        int v = 0;
        while (v < n && used[v]) ++v;
        if (v == n) {
            if (!best || w < *best) best = w;
            return;
        }
        used[v] = 1;
        for (const auto& e : edges) {
            if (e.u == e.v) continue;
            int o = -1;
            if (e.u == v) o = e.v;
            if (e.v == v) o = e.u;
            if (o < 0 || used[o]) continue;
            used[o] = 1;
            rec(w + e.weight);
            used[o] = 0;
        }
        used[v] = 0;
    };
    rec(0);
    return best;
}

/// Minimum T-join weight by enumerating every edge subset.
inline std::optional<std::int64_t> min_tjoin(int n, const std::vector<WeightedEdge>& edges,
                                             const std::vector<int>& terminals) {
    const int m = static_cast<int>(edges.size());
    std::vector<char> want(n, 0);
    for (int t : terminals) want[t] = 1;
    std::optional<std::int64_t> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<char> par(n, 0);
        std::int64_t w = 0;
        for (int k = 0; k < m; ++k) {
            if (!(mask >> k & 1)) continue;
            par[edges[k].u] ^= 1;
            par[edges[k].v] ^= 1;
            w += edges[k].weight;
        }
        if (par == want && (!best || w < *best)) best = w;
    }
    return best;
}

/// Uniform integer in [lo, hi].
inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Random multigraph, possibly with loops and parallel edges.
inline std::vector<WeightedEdge> random_edges(std::mt19937_64& rng, int n, int m,
                                              std::int64_t max_w, bool loops) {
    std::vector<WeightedEdge> out;
    while (static_cast<int>(out.size()) < m) {
        const int u = static_cast<int>(uniform(rng, 0, n - 1));
        const int v = static_cast<int>(uniform(rng, 0, n - 1));
        if (u == v && !loops) continue;
        out.push_back({u, v, uniform(rng, 0, max_w)});
    }
    return out;
}

}  // namespace oracle

#include "aapsm/conflict_graph.hpp"
#include "aapsm/planarizer.hpp"

namespace oracle {

/// Whether shifters admit phases with same-feature pairs opposite and
/// overlapping pairs equal; tries all 2^n assignments.
inline bool phase_feasible(const std::vector<aapsm::Shifter>& shifters,
                           const std::vector<aapsm::OverlapPair>& overlaps) {
    const int n = static_cast<int>(shifters.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bool ok = true;
        for (int i = 0; ok && i < n; ++i) {
            for (int j = i + 1; ok && j < n; ++j) {
                if (shifters[i].feature_id == shifters[j].feature_id &&
                    ((mask >> i & 1) == (mask >> j & 1))) {
                    ok = false;
                }
            }
        }
        for (const auto& p : overlaps) {
            if (!ok) break;
            if ((mask >> p.a & 1) != (mask >> p.b & 1)) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

/// Minimum total weight of an edge set whose deletion balances the graph
/// (signed semantics), over all 2^m subsets.
inline std::int64_t min_balancing_weight(const aapsm::PhaseConflictGraph& g) {
    const int m = static_cast<int>(g.edges.size());
    std::int64_t best = -1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::int64_t w = 0;
        aapsm::EdgeMask removed(m, false);
        for (int k = 0; k < m; ++k) {
            if (mask >> k & 1) {
                removed[k] = true;
                w += g.edges[k].weight;
            }
        }
        if (best >= 0 && w >= best) continue;
        if (aapsm::is_balanced(g, removed)) best = w;
    }
    return best;
}

/// Fewest edges whose removal leaves a crossing-free drawing.
inline int min_crossing_removal(const aapsm::PhaseConflictGraph& g) {
    const int m = static_cast<int>(g.edges.size());
    int best = m;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        const int count = __builtin_popcountll(mask);
        if (count >= best) continue;
        bool clean = true;
        for (int i = 0; clean && i < m; ++i) {
            if (mask >> i & 1) continue;
            for (int j = i + 1; clean && j < m; ++j) {
                if (mask >> j & 1) continue;
                if (aapsm::edges_cross(g, g.edges[i], g.edges[j])) clean = false;
            }
        }
        if (clean) best = count;
    }
    return best;
}

}  // namespace oracle

#include "aapsm/layout_modifier.hpp"

namespace oracle {

/// Cheapest set of cut lines (each as wide as the widest interval it
/// stabs) covering every conflict, over all subsets of interval endpoints.
/// Ignores forbidden bands.
inline std::int64_t min_cover_width(const std::vector<aapsm::CorrectionInterval>& ivs) {
    using aapsm::Axis;
    std::vector<std::pair<Axis, aapsm::Coord>> pts;
    for (const auto& iv : ivs) {
        pts.emplace_back(iv.axis, iv.lo);
        pts.emplace_back(iv.axis, iv.hi);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<int> ids;
    for (const auto& iv : ivs) ids.push_back(iv.conflict);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const int k = static_cast<int>(pts.size());
    std::vector<std::int64_t> weight(k, 0);
    std::vector<std::uint64_t> stabs(k, 0);
    for (int i = 0; i < k; ++i) {
        for (const auto& iv : ivs) {
            if (iv.axis != pts[i].first || pts[i].second < iv.lo || pts[i].second > iv.hi) continue;
            weight[i] = std::max(weight[i], iv.width_needed);
            const auto pos = std::lower_bound(ids.begin(), ids.end(), iv.conflict) - ids.begin();
            stabs[i] |= std::uint64_t{1} << pos;
        }
    }
    const std::uint64_t all = ids.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << ids.size()) - 1;
    std::int64_t best = -1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        std::uint64_t cov = 0;
        std::int64_t w = 0;
        for (int i = 0; i < k; ++i) {
            if (mask >> i & 1) {
                cov |= stabs[i];
                w += weight[i];
            }
        }
        if (cov == all && (best < 0 || w < best)) best = w;
    }
    return best;
}

}  // namespace oracle
