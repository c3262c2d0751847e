#pragma once

#include <optional>
#include <vector>

#include "aapsm/bipartizer.hpp"
#include "aapsm/conflict_graph.hpp"
#include "aapsm/layout.hpp"
#include "aapsm/layout_modifier.hpp"
#include "aapsm/planarizer.hpp"

namespace aapsm {

struct DetectOptions {
    GadgetMode gadget = GadgetMode::Generalized;
    WeightPolicy weights;
    bool greedy_baseline = true;
};

struct Detection {
    std::vector<Shifter> shifters;
    std::vector<OverlapPair> overlaps;
    PhaseConflictGraph graph;
    PlanarEmbedding embedding;
    DualGraph dual;
    OptimalBipartization optimal;
    ConflictSet conflicts;
    std::optional<GreedyBipartization> greedy;

    /// Conflicts of the planarized graph alone (|M|).
    int np_conflicts() const { return static_cast<int>(optimal.edges.size()); }
    /// Final conflicts including unsatisfiable removed crossing edges (|D|).
    int pcg_conflicts() const { return static_cast<int>(conflicts.conflicts.size()); }
};

/// Shifters, overlaps, conflict graph, planarization, bipartization and
/// finalization for one layout.
Detection detect(const Layout& layout, const DetectOptions& options = {});

struct Correction {
    Detection before;
    IntervalSet intervals;
    SpacePlan plan;
    /// Set when every conflict has a feasible interval.
    std::optional<Modified> modified;
    /// Conflicts found by re-running detection on the modified layout.
    int residual = -1;
};

Correction correct(const Layout& layout, const DetectOptions& options = {}, int exact_limit = 20);

}  // namespace aapsm
