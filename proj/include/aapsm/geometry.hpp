#pragma once

#include <cstdint>
#include <string>

namespace aapsm {

using Coord = std::int64_t;

/// Axis-aligned rectangle in integer nanometres.
struct Rect {
    Coord x_lo = 0;
    Coord y_lo = 0;
    Coord x_hi = 0;
    Coord y_hi = 0;
    std::string layer;
    int id = -1;

    Coord width() const { return x_hi - x_lo; }
    Coord height() const { return y_hi - y_lo; }
    Coord area() const { return width() * height(); }
    bool valid() const { return x_lo < x_hi && y_lo < y_hi; }

    bool same_geometry(const Rect& o) const {
        return x_lo == o.x_lo && y_lo == o.y_lo && x_hi == o.x_hi && y_hi == o.y_hi;
    }
};

/// True when the open interiors intersect.
inline bool interiors_overlap(const Rect& a, const Rect& b) {
    return a.x_lo < b.x_hi && b.x_lo < a.x_hi && a.y_lo < b.y_hi && b.y_lo < a.y_hi;
}

/// Per-axis gap between two rects; zero when the projections touch or overlap.
inline Coord gap_x(const Rect& a, const Rect& b) {
    Coord g = a.x_lo - b.x_hi;
    if (b.x_lo - a.x_hi > g) g = b.x_lo - a.x_hi;
    return g > 0 ? g : 0;
}

inline Coord gap_y(const Rect& a, const Rect& b) {
    Coord g = a.y_lo - b.y_hi;
    if (b.y_lo - a.y_hi > g) g = b.y_lo - a.y_hi;
    return g > 0 ? g : 0;
}

/// floor(sqrt(v)) for v >= 0, exact.
Coord isqrt_floor(std::int64_t v);

/// smallest r with r*r >= v, for v >= 0.
Coord isqrt_ceil(std::int64_t v);

/// Rect separation: the single axis gap when the other is zero, otherwise
/// the Euclidean corner distance rounded down.
inline Coord separation(Coord gx, Coord gy) {
    if (gx == 0) return gy;
    if (gy == 0) return gx;
    return isqrt_floor(gx * gx + gy * gy);
}

inline Coord separation(const Rect& a, const Rect& b) {
    return separation(gap_x(a, b), gap_y(a, b));
}

/// Graph-drawing point. Units are quarter nanometres so that both rect
/// centres and midpoints between centres stay integral.
struct Point {
    Coord x = 0;
    Coord y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

inline constexpr Coord kPointScale = 4;

inline Point rect_center(const Rect& r) {
    return {2 * (r.x_lo + r.x_hi), 2 * (r.y_lo + r.y_hi)};
}

/// Sign of the cross product (b - a) x (c - a).
int orientation(const Point& a, const Point& b, const Point& c);

/// p lies on the closed segment [a, b] (a, b, p assumed collinear).
bool on_segment(const Point& a, const Point& b, const Point& p);

/// Closed segments [a, b] and [c, d] share at least one point.
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

/// Segments from a common endpoint `o` towards `p` and `q` overlap along a
/// segment of positive length (same direction, collinear).
bool collinear_same_direction(const Point& o, const Point& p, const Point& q);

}  // namespace aapsm
