#include "aapsm/layout_modifier.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "aapsm/error.hpp"

namespace aapsm {

const char* to_string(Axis a) { return a == Axis::Vertical ? "x" : "y"; }

Coord space_needed(Coord gap, Coord other, Coord min_spacing) {
    if (other == 0) return std::max<Coord>(0, min_spacing - gap);
    if (other >= min_spacing) return 0;
    const Coord target = isqrt_ceil(min_spacing * min_spacing - other * other);
    return std::max<Coord>(0, target - gap);
}

namespace {

bool inside_band(const std::vector<ForbiddenBand>& bands, Axis axis, Coord c) {
    for (const auto& b : bands) {
        if (b.axis == axis && b.lo < c && c < b.hi) return true;
    }
    return false;
}

// Candidate coordinates of one interval: its ends plus band edges inside it,
// keeping only points outside every forbidden band.
std::vector<Coord> feasible_points(const CorrectionInterval& iv,
                                   const std::vector<ForbiddenBand>& bands) {
    std::vector<Coord> pts{iv.lo, iv.hi};
    for (const auto& b : bands) {
        if (b.axis != iv.axis) continue;
        if (iv.lo <= b.lo && b.lo <= iv.hi) pts.push_back(b.lo);
        if (iv.lo <= b.hi && b.hi <= iv.hi) pts.push_back(b.hi);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::erase_if(pts, [&](Coord c) { return inside_band(bands, iv.axis, c); });
    return pts;
}

Coord span_lo(const Rect& r, Axis a) { return a == Axis::Vertical ? r.x_lo : r.y_lo; }
Coord span_hi(const Rect& r, Axis a) { return a == Axis::Vertical ? r.x_hi : r.y_hi; }

}  // namespace

IntervalSet compute_intervals(const Layout& layout, const std::vector<Shifter>& shifters,
                              const PhaseConflictGraph& g, const ConflictSet& conflicts) {
    IntervalSet out;
    const Coord ms = layout.rules.min_shifter_spacing;

    // shifter/feature/shifter stacks are rigid: cuts may not split them
    std::map<int, Rect> hull;
    for (const auto& s : shifters) {
        auto [it, fresh] = hull.try_emplace(s.feature_id, s.rect);
        Rect& h = it->second;
        if (!fresh) {
            h.x_lo = std::min(h.x_lo, s.rect.x_lo);
            h.y_lo = std::min(h.y_lo, s.rect.y_lo);
            h.x_hi = std::max(h.x_hi, s.rect.x_hi);
            h.y_hi = std::max(h.y_hi, s.rect.y_hi);
        }
    }
    for (const auto& f : find_critical_features(layout)) {
        auto it = hull.find(f.id);
        Rect h = it == hull.end() ? f : it->second;
        h.x_lo = std::min(h.x_lo, f.x_lo);
        h.y_lo = std::min(h.y_lo, f.y_lo);
        h.x_hi = std::max(h.x_hi, f.x_hi);
        h.y_hi = std::max(h.y_hi, f.y_hi);
        const Axis across = is_vertical(f) ? Axis::Vertical : Axis::Horizontal;
        out.forbidden.push_back({across, span_lo(h, across), span_hi(h, across), f.id});
    }

    for (const auto& c : conflicts.conflicts) {
        const PcgEdge& e = g.edges.at(c.edge);
        if (e.kind == EdgeKind::FeatureEdge) {
            out.uncovered.push_back(c.edge);
            continue;
        }
        const Rect& a = shifters.at(e.shifter_a).rect;
        const Rect& b = shifters.at(e.shifter_b).rect;
        const Coord gx = gap_x(a, b);
        const Coord gy = gap_y(a, b);
        bool any = false;
        for (Axis axis : {Axis::Vertical, Axis::Horizontal}) {
            const Coord gap = axis == Axis::Vertical ? gx : gy;
            const Coord other = axis == Axis::Vertical ? gy : gx;
            if (gap == 0) continue;
            const bool a_first = span_hi(a, axis) <= span_lo(b, axis);
            CorrectionInterval iv;
            iv.conflict = c.edge;
            iv.axis = axis;
            iv.lo = a_first ? span_hi(a, axis) : span_hi(b, axis);
            iv.hi = a_first ? span_lo(b, axis) : span_lo(a, axis);
            iv.width_needed = space_needed(gap, other, ms);
            if (iv.width_needed <= 0) {
                throw InternalError("conflict " + std::to_string(c.edge) + " needs no space");
            }
            if (feasible_points(iv, out.forbidden).empty()) continue;
            out.intervals.push_back(iv);
            any = true;
        }
        if (!any) out.uncovered.push_back(c.edge);
    }
    std::sort(out.uncovered.begin(), out.uncovered.end());
    return out;
}

Coord SpacePlan::total_width() const {
    Coord w = 0;
    for (const auto& c : cuts) w += c.width;
    return w;
}

int SpacePlan::max_conflicts_per_cut() const {
    int m = 0;
    for (const auto& c : cuts) m = std::max(m, static_cast<int>(c.conflicts.size()));
    return m;
}

namespace {

struct Candidate {
    Axis axis;
    Coord coord;
    Coord weight = 0;
    /// Indices into the conflict list.
    std::vector<int> members;
};

std::vector<int> exact_cover(const std::vector<Candidate>& cands, int conflicts,
                             const std::vector<int>& start, Coord start_cost) {
    std::vector<std::vector<int>> stabbing(conflicts);
    for (int k = 0; k < static_cast<int>(cands.size()); ++k) {
        for (int m : cands[k].members) stabbing[m].push_back(k);
    }
    for (auto& s : stabbing) {
        std::sort(s.begin(), s.end(), [&](int x, int y) {
            return std::tie(cands[x].weight, x) < std::tie(cands[y].weight, y);
        });
    }
    std::vector<int> best = start;
    Coord best_cost = start_cost;
    std::vector<int> cover(conflicts, 0);
    std::vector<int> chosen;
    std::function<void(Coord)> search = [&](Coord cost) {
        int first = -1;
        for (int m = 0; m < conflicts; ++m) {
            if (cover[m] == 0) {
                first = m;
                break;
            }
        }
        if (first == -1) {
            if (cost < best_cost) {
                best_cost = cost;
                best = chosen;
            }
            return;
        }
        for (int k : stabbing[first]) {
            if (cost + cands[k].weight >= best_cost) continue;
            chosen.push_back(k);
            for (int m : cands[k].members) ++cover[m];
            search(cost + cands[k].weight);
            for (int m : cands[k].members) --cover[m];
            chosen.pop_back();
        }
    };
    search(0);
    return best;
}

}  // namespace

SpacePlan plan_spaces(const IntervalSet& intervals, int exact_limit) {
    SpacePlan plan;
    plan.uncovered = intervals.uncovered;

    std::vector<int> ids;
    for (const auto& iv : intervals.intervals) ids.push_back(iv.conflict);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto index_of = [&](int id) {
        return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    const int n = static_cast<int>(ids.size());
    if (n == 0) return plan;

    std::set<std::pair<Axis, Coord>> points;
    for (const auto& iv : intervals.intervals) {
        for (Coord c : feasible_points(iv, intervals.forbidden)) points.insert({iv.axis, c});
    }
    std::vector<Candidate> cands;
    for (const auto& [axis, coord] : points) {
        Candidate cand{axis, coord, 0, {}};
        for (const auto& iv : intervals.intervals) {
            if (iv.axis != axis || coord < iv.lo || coord > iv.hi) continue;
            const int m = index_of(iv.conflict);
            if (std::find(cand.members.begin(), cand.members.end(), m) == cand.members.end()) {
                cand.members.push_back(m);
            }
            cand.weight = std::max(cand.weight, iv.width_needed);
        }
        std::sort(cand.members.begin(), cand.members.end());
        cands.push_back(std::move(cand));
    }
    plan.candidates = static_cast<int>(cands.size());

    // greedy: most newly covered conflicts per unit of width
    std::vector<char> covered(n, 0);
    int remaining = n;
    std::vector<int> greedy;
    Coord greedy_cost = 0;
    while (remaining > 0) {
        int best = -1;
        std::int64_t best_new = 0;
        for (int k = 0; k < static_cast<int>(cands.size()); ++k) {
            std::int64_t fresh = 0;
            for (int m : cands[k].members) fresh += !covered[m];
            if (fresh == 0) continue;
            if (best == -1) {
                best = k;
                best_new = fresh;
                continue;
            }
            const __int128 lhs = static_cast<__int128>(fresh) * cands[best].weight;
            const __int128 rhs = static_cast<__int128>(best_new) * cands[k].weight;
            // candidates are already in (axis, coord) order, so the first
            // one found wins the remaining ties
            if (lhs > rhs || (lhs == rhs && cands[k].weight < cands[best].weight)) {
                best = k;
                best_new = fresh;
            }
        }
        greedy.push_back(best);
        greedy_cost += cands[best].weight;
        for (int m : cands[best].members) {
            if (!covered[m]) {
                covered[m] = 1;
                --remaining;
            }
        }
    }
    plan.greedy_width = greedy_cost;
    plan.greedy_cuts = static_cast<int>(greedy.size());

    std::vector<int> chosen = greedy;
    if (plan.candidates <= exact_limit) {
        chosen = exact_cover(cands, n, greedy, greedy_cost);
        plan.used_exact = true;
        plan.exact_cuts = static_cast<int>(chosen.size());
        plan.exact_width = 0;
        for (int k : chosen) plan.exact_width += cands[k].weight;
    }

    std::sort(chosen.begin(), chosen.end());
    for (int k : chosen) {
        Cut cut{cands[k].axis, cands[k].coord, cands[k].weight, {}};
        for (int m : cands[k].members) cut.conflicts.push_back(ids[m]);
        plan.cuts.push_back(std::move(cut));
    }
    for (int i = 0; i < static_cast<int>(plan.cuts.size()); ++i) {
        for (int id : plan.cuts[i].conflicts) plan.covered.try_emplace(id, i);
    }
    return plan;
}

double AreaReport::percent_increase() const {
    if (old_area == 0) return 0.0;
    return 100.0 * static_cast<double>(new_area - old_area) / static_cast<double>(old_area);
}

namespace {

void apply_cut(Rect& r, Axis axis, Coord c, Coord width, Coord critical_width, bool check) {
    Coord& lo = axis == Axis::Vertical ? r.x_lo : r.y_lo;
    Coord& hi = axis == Axis::Vertical ? r.x_hi : r.y_hi;
    if (lo >= c) {
        lo += width;
        hi += width;
    } else if (c < hi) {
        const bool across = axis == Axis::Vertical ? is_vertical(r) : !is_vertical(r);
        if (check && across && short_side(r) < critical_width) {
            throw ContractViolation("cut " + std::string(to_string(axis)) + "=" + std::to_string(c) +
                                    " would widen critical feature " + std::to_string(r.id));
        }
        hi += width;
    }
}

}  // namespace

Modified apply_spaces(const Layout& layout, const std::vector<Shifter>& shifters,
                      const SpacePlan& plan) {
    Modified out;
    out.layout = layout;
    const Rect before = layout_extent(layout, shifters);

    std::vector<Cut> cuts = plan.cuts;
    std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) {
        return std::tie(a.axis, b.coord) < std::tie(b.axis, a.coord);
    });
    for (const auto& cut : cuts) {
        if (cut.width <= 0) throw ContractViolation("cut width must be positive");
        for (auto& r : out.layout.rects) {
            const bool feature = r.layer == kFeatureLayer;
            apply_cut(r, cut.axis, cut.coord, cut.width, layout.rules.critical_width, feature);
        }
        if (out.layout.bbox) apply_cut(*out.layout.bbox, cut.axis, cut.coord, cut.width, 0, false);
        (cut.axis == Axis::Vertical ? out.area.added_x : out.area.added_y) += cut.width;
    }

    const Rect after = layout_extent(out.layout, generate_shifters(out.layout));
    auto& a = out.area;
    a.width = before.width();
    a.height = before.height();
    a.old_area = before.area();
    a.new_area = after.area();
    a.identity_holds = after.width() == a.width + a.added_x &&
                       after.height() == a.height + a.added_y &&
                       a.new_area - a.old_area ==
                           a.added_x * a.height + a.added_y * a.width + a.added_x * a.added_y;
    return out;
}

std::string dump_plan(const SpacePlan& plan) {
    std::ostringstream os;
    for (const auto& c : plan.cuts) {
        os << "cut " << to_string(c.axis) << ' ' << c.coord << ' ' << c.width << " conflicts=";
        for (std::size_t i = 0; i < c.conflicts.size(); ++i) os << (i ? "," : "") << c.conflicts[i];
        os << '\n';
    }
    return os.str();
}

}  // namespace aapsm
