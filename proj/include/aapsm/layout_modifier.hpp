#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aapsm/bipartizer.hpp"
#include "aapsm/layout.hpp"

namespace aapsm {

/// Vertical: a space inserted along the line x = coord. Horizontal: along
/// y = coord.
enum class Axis { Vertical, Horizontal };

struct CorrectionInterval {
    /// Conflict edge id.
    int conflict = -1;
    Axis axis = Axis::Vertical;
    /// Closed range of cut coordinates that separate the pair.
    Coord lo = 0;
    Coord hi = 0;
    Coord width_needed = 0;
};

/// Open band no cut on `axis` may pass through: the extent of a critical
/// feature together with its shifters, across its length.
struct ForbiddenBand {
    Axis axis = Axis::Vertical;
    Coord lo = 0;
    Coord hi = 0;
    int feature_id = -1;
};

struct IntervalSet {
    std::vector<CorrectionInterval> intervals;
    std::vector<ForbiddenBand> forbidden;
    /// Conflicts that no space insertion can fix, ascending.
    std::vector<int> uncovered;
};

/// Smallest space B for which a pair with gap `gap` on the cut axis and
/// `other` on the other axis reaches `min_spacing`.
Coord space_needed(Coord gap, Coord other, Coord min_spacing);

IntervalSet compute_intervals(const Layout& layout, const std::vector<Shifter>& shifters,
                              const PhaseConflictGraph& g, const ConflictSet& conflicts);

struct Cut {
    Axis axis = Axis::Vertical;
    Coord coord = 0;
    Coord width = 0;
    /// Conflicts whose interval contains the coordinate, ascending.
    std::vector<int> conflicts;
};

struct SpacePlan {
    std::vector<Cut> cuts;
    /// Conflict id -> index of the first cut in `cuts` that fixes it.
    std::map<int, int> covered;
    std::vector<int> uncovered;
    int candidates = 0;
    Coord greedy_width = 0;
    /// -1 when the exact solver was skipped.
    Coord exact_width = -1;
    int greedy_cuts = 0;
    int exact_cuts = -1;
    bool used_exact = false;

    Coord total_width() const;
    int max_conflicts_per_cut() const;
};

/// Weighted set cover over candidate cut lines. Greedy by newly covered per
/// unit width; a branch-and-bound exact cover replaces it when there are at
/// most `exact_limit` candidates and it is no worse.
SpacePlan plan_spaces(const IntervalSet& intervals, int exact_limit = 20);

struct AreaReport {
    Coord width = 0;
    Coord height = 0;
    Coord added_x = 0;
    Coord added_y = 0;
    Coord old_area = 0;
    Coord new_area = 0;
    /// new - old == added_x * H + added_y * W + added_x * added_y
    bool identity_holds = false;

    double percent_increase() const;
};

struct Modified {
    Layout layout;
    AreaReport area;
};

/// Inserts the planned spaces. Rects right of / above a cut shift, rects it
/// passes through stretch. Throws ContractViolation when a cut would widen
/// a critical feature.
Modified apply_spaces(const Layout& layout, const std::vector<Shifter>& shifters,
                      const SpacePlan& plan);

/// One cut per line: `cut <x|y> <coord> <width> conflicts=<ids>`.
std::string dump_plan(const SpacePlan& plan);

const char* to_string(Axis a);

}  // namespace aapsm
