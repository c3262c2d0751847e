#include "aapsm/layout.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "aapsm/error.hpp"
#include "aapsm/parallel.hpp"

namespace aapsm {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

Coord parse_int(std::string_view tok, int line_no) {
    Coord v = 0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(line_no, "expected integer, got '" + std::string(tok) + "'");
    }
    return v;
}

void expect_count(const std::vector<std::string_view>& toks, std::size_t n, int line_no) {
    if (toks.size() != n) {
        throw ParseError(line_no, "'" + std::string(toks[0]) + "' expects " +
                                      std::to_string(n - 1) + " fields, got " +
                                      std::to_string(toks.size() - 1));
    }
}

Rect clip(const Rect& r, const Rect& box) {
    Rect c = r;
    c.x_lo = std::max(r.x_lo, box.x_lo);
    c.y_lo = std::max(r.y_lo, box.y_lo);
    c.x_hi = std::min(r.x_hi, box.x_hi);
    c.y_hi = std::min(r.y_hi, box.y_hi);
    return c;
}

}  // namespace

Layout parse_layout(std::string_view text) {
    Layout layout;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        auto toks = split_ws(line);
        if (toks.empty() || toks[0].front() == '#') continue;

        if (toks[0] == "rect") {
            expect_count(toks, 6, line_no);
            Rect r;
            r.layer = std::string(toks[1]);
            r.x_lo = parse_int(toks[2], line_no);
            r.y_lo = parse_int(toks[3], line_no);
            r.x_hi = parse_int(toks[4], line_no);
            r.y_hi = parse_int(toks[5], line_no);
            if (!r.valid()) throw ParseError(line_no, "degenerate rect (need lo < hi)");
            r.id = static_cast<int>(layout.rects.size());
            layout.rects.push_back(std::move(r));
        } else if (toks[0] == "rules") {
            expect_count(toks, 5, line_no);
            layout.rules.critical_width = parse_int(toks[1], line_no);
            layout.rules.shifter_width = parse_int(toks[2], line_no);
            layout.rules.shifter_gap = parse_int(toks[3], line_no);
            layout.rules.min_shifter_spacing = parse_int(toks[4], line_no);
            if (!layout.rules.valid()) throw ParseError(line_no, "rule values out of range");
        } else if (toks[0] == "bbox") {
            expect_count(toks, 5, line_no);
            Rect b;
            b.layer = "bbox";
            b.x_lo = parse_int(toks[1], line_no);
            b.y_lo = parse_int(toks[2], line_no);
            b.x_hi = parse_int(toks[3], line_no);
            b.y_hi = parse_int(toks[4], line_no);
            if (!b.valid()) throw ParseError(line_no, "degenerate bbox");
            layout.bbox = b;
        } else {
            throw ParseError(line_no, "unknown record '" + std::string(toks[0]) + "'");
        }
        if (nl == text.size()) break;
    }
    validate_layout(layout);
    return layout;
}

std::string serialize_layout(const Layout& layout) {
    std::ostringstream os;
    const auto& r = layout.rules;
    os << "rules " << r.critical_width << ' ' << r.shifter_width << ' ' << r.shifter_gap << ' '
       << r.min_shifter_spacing << '\n';
    if (layout.bbox) {
        const auto& b = *layout.bbox;
        os << "bbox " << b.x_lo << ' ' << b.y_lo << ' ' << b.x_hi << ' ' << b.y_hi << '\n';
    }
    for (const auto& rect : layout.rects) {
        os << "rect " << rect.layer << ' ' << rect.x_lo << ' ' << rect.y_lo << ' ' << rect.x_hi
           << ' ' << rect.y_hi << '\n';
    }
    return os.str();
}

void validate_layout(const Layout& layout) {
    if (!layout.rules.valid()) throw ValidationError("design rules out of range");
    std::vector<const Rect*> features;
    for (std::size_t i = 0; i < layout.rects.size(); ++i) {
        const Rect& r = layout.rects[i];
        if (!r.valid()) throw ValidationError("rect " + std::to_string(r.id) + " is degenerate");
        if (r.id != static_cast<int>(i)) throw ValidationError("rect ids must follow file order");
        if (r.layer == kFeatureLayer) features.push_back(&r);
    }
    std::sort(features.begin(), features.end(),
              [](const Rect* a, const Rect* b) { return a->x_lo < b->x_lo; });
    for (std::size_t i = 0; i < features.size(); ++i) {
        for (std::size_t j = i + 1; j < features.size() && features[j]->x_lo < features[i]->x_hi;
             ++j) {
            if (interiors_overlap(*features[i], *features[j])) {
                const int a = std::min(features[i]->id, features[j]->id);
                const int b = std::max(features[i]->id, features[j]->id);
                throw ValidationError("feature rects " + std::to_string(a) + " and " +
                                      std::to_string(b) + " overlap");
            }
        }
    }
}

std::vector<Rect> find_critical_features(const Layout& layout) {
    std::vector<Rect> out;
    for (const auto& r : layout.rects) {
        if (r.layer == kFeatureLayer && short_side(r) < layout.rules.critical_width) out.push_back(r);
    }
    return out;
}

std::vector<Shifter> generate_shifters(const Layout& layout) {
    const auto& rules = layout.rules;
    std::vector<Shifter> out;
    for (const auto& f : find_critical_features(layout)) {
        Rect lo = f;
        Rect hi = f;
        lo.layer = hi.layer = std::string(kShifterLayer);
        if (is_vertical(f)) {
            lo.x_hi = f.x_lo - rules.shifter_gap;
            lo.x_lo = lo.x_hi - rules.shifter_width;
            hi.x_lo = f.x_hi + rules.shifter_gap;
            hi.x_hi = hi.x_lo + rules.shifter_width;
        } else {
            lo.y_hi = f.y_lo - rules.shifter_gap;
            lo.y_lo = lo.y_hi - rules.shifter_width;
            hi.y_lo = f.y_hi + rules.shifter_gap;
            hi.y_hi = hi.y_lo + rules.shifter_width;
        }
        for (auto [rect, side] : {std::pair{lo, ShifterSide::Low}, std::pair{hi, ShifterSide::High}}) {
            Shifter s;
            s.feature_id = f.id;
            s.side = side;
            s.id = static_cast<int>(out.size());
            s.rect = rect;
            if (layout.bbox) {
                Rect c = clip(rect, *layout.bbox);
                if (!c.same_geometry(rect)) {
                    if (!c.valid()) {
                        throw ValidationError("shifter of feature " + std::to_string(f.id) +
                                              " lies outside the bounding box");
                    }
                    s.rect = c;
                    s.clipped = true;
                }
            }
            s.rect.id = s.id;
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<OverlapPair> find_overlapping_pairs(const std::vector<Shifter>& shifters,
                                                const DesignRules& rules) {
    const Coord min_spacing = rules.min_shifter_spacing;
    std::vector<int> order(shifters.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return shifters[a].rect.x_lo < shifters[b].rect.x_lo ||
               (shifters[a].rect.x_lo == shifters[b].rect.x_lo && a < b);
    });

    const auto n = static_cast<std::int64_t>(order.size());
    std::vector<std::vector<OverlapPair>> per_thread(parallel::max_threads());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
        auto& local = per_thread[parallel::thread_id()];
        const Shifter& si = shifters[order[i]];
        for (std::int64_t j = i + 1; j < n; ++j) {
            const Shifter& sj = shifters[order[j]];
            if (sj.rect.x_lo - si.rect.x_hi >= min_spacing) break;
            if (si.feature_id == sj.feature_id) continue;
            if (gap_y(si.rect, sj.rect) >= min_spacing) continue;
            const Coord sep = separation(si.rect, sj.rect);
            if (sep < min_spacing) {
                local.push_back({std::min(si.id, sj.id), std::max(si.id, sj.id), sep});
            }
        }
    }
    return parallel::merge_sorted(per_thread, [](const OverlapPair& x, const OverlapPair& y) {
        return x.a < y.a || (x.a == y.a && x.b < y.b);
    });
}

Rect layout_extent(const Layout& layout, const std::vector<Shifter>& shifters) {
    if (layout.bbox) return *layout.bbox;
    Rect e;
    e.layer = "extent";
    bool first = true;
    auto grow = [&](const Rect& r) {
        if (first) {
            e.x_lo = r.x_lo;
            e.y_lo = r.y_lo;
            e.x_hi = r.x_hi;
            e.y_hi = r.y_hi;
            first = false;
            return;
        }
        e.x_lo = std::min(e.x_lo, r.x_lo);
        e.y_lo = std::min(e.y_lo, r.y_lo);
        e.x_hi = std::max(e.x_hi, r.x_hi);
        e.y_hi = std::max(e.y_hi, r.y_hi);
    };
    for (const auto& r : layout.rects) grow(r);
    for (const auto& s : shifters) grow(s.rect);
    return e;
}

}  // namespace aapsm
