#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aapsm/geometry.hpp"

namespace aapsm {

/// Layer whose rectangles are drawn features (candidates for phase shifting).
inline constexpr std::string_view kFeatureLayer = "poly";
inline constexpr std::string_view kShifterLayer = "shifter";

struct DesignRules {
    Coord critical_width = 150;
    Coord shifter_width = 200;
    Coord shifter_gap = 0;
    Coord min_shifter_spacing = 120;

    bool valid() const {
        return critical_width > 0 && shifter_width > 0 && shifter_gap >= 0 &&
               min_shifter_spacing > 0;
    }
    friend bool operator==(const DesignRules&, const DesignRules&) = default;
};

struct Layout {
    std::vector<Rect> rects;
    DesignRules rules;
    std::optional<Rect> bbox;
};

enum class ShifterSide { Low, High };

/// Phase shape flanking one long side of a critical feature.
struct Shifter {
    Rect rect;
    int feature_id = -1;
    ShifterSide side = ShifterSide::Low;
    int id = -1;
    bool clipped = false;
};

/// Pair of shifters from different features closer than the minimum
/// shifter spacing. `a < b`.
struct OverlapPair {
    int a = -1;
    int b = -1;
    Coord separation = 0;
    friend bool operator==(const OverlapPair&, const OverlapPair&) = default;
};

/// Parses the line-oriented layout format; throws ParseError or
/// ValidationError.
Layout parse_layout(std::string_view text);

/// Canonical text form; parse_layout(serialize_layout(l)) reproduces l.
std::string serialize_layout(const Layout& layout);

/// Throws ValidationError when rect or rule invariants are broken.
void validate_layout(const Layout& layout);

/// A feature is vertical when its long axis is y; squares count as vertical.
inline bool is_vertical(const Rect& r) { return r.height() >= r.width(); }

inline Coord short_side(const Rect& r) { return is_vertical(r) ? r.width() : r.height(); }

/// Feature-layer rects narrower than the critical width, in layout order.
std::vector<Rect> find_critical_features(const Layout& layout);

/// Two shifters per critical feature: low side first, then high side.
std::vector<Shifter> generate_shifters(const Layout& layout);

/// All cross-feature shifter pairs with separation below the minimum
/// shifter spacing, sorted by (a, b). OpenMP-parallel sweep over x.
std::vector<OverlapPair> find_overlapping_pairs(const std::vector<Shifter>& shifters,
                                                const DesignRules& rules);

/// Extent used for area accounting: declared bbox, otherwise the union of
/// all rects and shifters.
Rect layout_extent(const Layout& layout, const std::vector<Shifter>& shifters);

}  // namespace aapsm
