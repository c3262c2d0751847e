#include "aapsm/reference.hpp"

#include <algorithm>

#include "aapsm/error.hpp"

namespace aapsm::reference {

std::vector<OverlapPair> find_overlapping_pairs(const std::vector<Shifter>& shifters,
                                                const DesignRules& rules) {
    std::vector<OverlapPair> out;
    for (std::size_t i = 0; i < shifters.size(); ++i) {
        for (std::size_t j = i + 1; j < shifters.size(); ++j) {
            if (shifters[i].feature_id == shifters[j].feature_id) continue;
            const Coord sep = separation(shifters[i].rect, shifters[j].rect);
            if (sep >= rules.min_shifter_spacing) continue;
            out.push_back({std::min(shifters[i].id, shifters[j].id),
                           std::max(shifters[i].id, shifters[j].id), sep});
        }
    }
    std::sort(out.begin(), out.end(), [](const OverlapPair& x, const OverlapPair& y) {
        return x.a < y.a || (x.a == y.a && x.b < y.b);
    });
    return out;
}

std::vector<EdgePair> find_crossings(const PhaseConflictGraph& g, const EdgeMask& removed) {
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < g.nodes.size(); ++j) {
            if (g.nodes[i].pos == g.nodes[j].pos) {
                throw ValidationError("nodes " + std::to_string(i) + " and " + std::to_string(j) +
                                      " share a position");
            }
        }
    }
    std::vector<EdgePair> out;
    for (const auto& e : g.edges) {
        if (!removed.empty() && removed[e.id]) continue;
        for (const auto& f : g.edges) {
            if (f.id <= e.id || (!removed.empty() && removed[f.id])) continue;
            if (edges_cross(g, e, f)) out.emplace_back(e.id, f.id);
        }
    }
    return out;
}

}  // namespace aapsm::reference
