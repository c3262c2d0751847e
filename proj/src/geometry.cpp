#include "aapsm/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace aapsm {

Coord isqrt_floor(std::int64_t v) {
    if (v <= 0) return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

Coord isqrt_ceil(std::int64_t v) {
    Coord r = isqrt_floor(v);
    return r * r == v ? r : r + 1;
}

int orientation(const Point& a, const Point& b, const Point& c) {
    const __int128 cross = static_cast<__int128>(b.x - a.x) * (c.y - a.y) -
                           static_cast<__int128>(b.y - a.y) * (c.x - a.x);
    return cross > 0 ? 1 : (cross < 0 ? -1 : 0);
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

bool collinear_same_direction(const Point& o, const Point& p, const Point& q) {
    if (orientation(o, p, q) != 0) return false;
    const __int128 dot = static_cast<__int128>(p.x - o.x) * (q.x - o.x) +
                         static_cast<__int128>(p.y - o.y) * (q.y - o.y);
    return dot > 0;
}

}  // namespace aapsm
