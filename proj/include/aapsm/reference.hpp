#pragma once

// Straightforward all-pairs versions of the parallel kernels. Kept for
// differential testing and benchmarking.

#include <vector>

#include "aapsm/conflict_graph.hpp"
#include "aapsm/planarizer.hpp"

namespace aapsm::reference {

std::vector<OverlapPair> find_overlapping_pairs(const std::vector<Shifter>& shifters,
                                                const DesignRules& rules);

std::vector<EdgePair> find_crossings(const PhaseConflictGraph& g, const EdgeMask& removed = {});

}  // namespace aapsm::reference
