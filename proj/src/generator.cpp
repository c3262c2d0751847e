#include "aapsm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aapsm {

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(rng());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return lo + static_cast<std::int64_t>(x % span);
}

namespace {

bool chance(std::mt19937_64& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    constexpr std::int64_t kScale = 1'000'000;
    return uniform_int(rng, 0, kScale - 1) < static_cast<std::int64_t>(p * kScale);
}

Rect make_rect(Coord x0, Coord y0, Coord x1, Coord y1) {
    Rect r;
    r.x_lo = x0;
    r.y_lo = y0;
    r.x_hi = x1;
    r.y_hi = y1;
    r.layer = std::string(kFeatureLayer);
    return r;
}

constexpr Coord kLineWidth = 100;
constexpr Coord kRowPitch = 2400;

Layout scatter_layout(std::uint64_t seed, const GeneratorParams& p) {
    std::mt19937_64 rng(seed);
    Layout layout;
    layout.rules = p.rules;
    const Coord side =
        static_cast<Coord>(std::sqrt(static_cast<double>(p.features)) * 633.0) / 25 * 25;
    const std::int64_t steps = std::max<Coord>(side / 25, 1);
    const int budget = 200 * p.features;
    for (int tries = 0; tries < budget && static_cast<int>(layout.rects.size()) < p.features;
         ++tries) {
        const Coord x = uniform_int(rng, 0, steps) * 25;
        const Coord y = uniform_int(rng, 0, steps) * 25;
        const Coord len = uniform_int(rng, 8, 30) * 50;
        Rect r = uniform_int(rng, 0, 1) ? make_rect(x, y, x + kLineWidth, y + len)
                                        : make_rect(x, y, x + len, y + kLineWidth);
        bool clash = false;
        for (const auto& o : layout.rects) clash = clash || interiors_overlap(o, r);
        if (clash) continue;
        r.id = static_cast<int>(layout.rects.size());
        layout.rects.push_back(r);
    }
    if (static_cast<int>(layout.rects.size()) < p.features) {
        throw std::invalid_argument("could not place every feature");
    }
    validate_layout(layout);
    return layout;
}

}  // namespace

GeneratorStyle parse_generator_style(const std::string& name) {
    if (name == "rows") return GeneratorStyle::Rows;
    if (name == "scatter") return GeneratorStyle::Scatter;
    throw std::invalid_argument("unknown generator style '" + name + "'");
}

const char* to_string(GeneratorStyle style) {
    return style == GeneratorStyle::Rows ? "rows" : "scatter";
}

Layout generate_layout(std::uint64_t seed, const GeneratorParams& p) {
    if (p.features < 1) throw std::invalid_argument("need at least one feature");
    if (!(p.motif_density >= 0.0 && p.motif_density <= 1.0)) {
        throw std::invalid_argument("motif density must lie in [0, 1]");
    }
    if (p.rules.critical_width <= kLineWidth || !p.rules.valid()) {
        throw std::invalid_argument("rules must make 100 nm lines critical");
    }
    if (p.style == GeneratorStyle::Scatter) return scatter_layout(seed, p);
    if (p.motif_density > 0.0 && p.features < 3) {
        throw std::invalid_argument("a comb motif needs at least three features");
    }
    if (p.pitch_min <= 2 * p.rules.shifter_width + kLineWidth || p.pitch_min > p.pitch_max) {
        throw std::invalid_argument("line pitch must exceed line plus both shifters");
    }
    if (p.lines_per_row < 3) throw std::invalid_argument("rows need room for three lines");

    std::mt19937_64 rng(seed);
    Layout layout;
    layout.rules = p.rules;
    const Coord sw = p.rules.shifter_width + p.rules.shifter_gap;
    int placed = 0;
    bool comb = false;

    auto push = [&](Rect r) {
        r.id = static_cast<int>(layout.rects.size());
        layout.rects.push_back(r);
        ++placed;
    };

    for (int row = 0; placed < p.features; ++row) {
        const Coord y0 = row * kRowPitch;
        Coord x = 0;
        Coord prev_top = -1;
        int slot = 0;
        // combs of one row share their height so no bar's shifter band
        // covers another comb's gap
        const Coord comb_len = uniform_int(rng, 1000, 1600);
        const Coord comb_gap = uniform_int(rng, 20, 100);
        while (slot < p.lines_per_row && placed < p.features) {
            const int left = p.features - placed;
            const bool force = p.motif_density > 0.0 && !comb && left <= 3;
            const bool start = left >= 3 && slot + 2 <= p.lines_per_row &&
                               (force || chance(rng, p.motif_density));
            if (start) {
                // run of equal-height lines under one bar
                const int run = static_cast<int>(
                    std::min<std::int64_t>(uniform_int(rng, 2, 4),
                                           std::min(left - 1, p.lines_per_row - slot)));
                const Coord len = comb_len;
                // the neighbour on the left must stay clear of the bar shifter
                if (prev_top > y0 + len - 2 * sw) {
                    x += p.pitch_max;
                }
                const Coord first = x;
                for (int i = 0; i < run; ++i) {
                    push(make_rect(x, y0, x + kLineWidth, y0 + len));
                    if (i + 1 < run) x += uniform_int(rng, p.pitch_min, p.pitch_max);
                }
                const Coord bar_lo = y0 + len + comb_gap + sw;
                push(make_rect(first - 150, bar_lo, x + 250, bar_lo + kLineWidth));
                comb = true;
                slot += run;
                // keep the next line short so it clears the bar shifters
                x += p.pitch_max;
                prev_top = y0 + len;
                if (placed < p.features && slot < p.lines_per_row) {
                    const Coord cap = len - 2 * sw;
                    push(make_rect(x, y0, x + kLineWidth, y0 + std::max<Coord>(400, std::min<Coord>(cap, uniform_int(rng, 800, 1600)))));
                    prev_top = layout.rects.back().y_hi;
                    x += uniform_int(rng, p.pitch_min, p.pitch_max);
                    ++slot;
                }
                continue;
            }
            const Coord len = uniform_int(rng, 800, 1600);
            push(make_rect(x, y0, x + kLineWidth, y0 + len));
            prev_top = y0 + len;
            x += uniform_int(rng, p.pitch_min, p.pitch_max);
            ++slot;
        }
    }
    validate_layout(layout);
    return layout;
}

Layout random_small_layout(std::mt19937_64& rng, int max_features) {
    Layout layout;
    const int want = static_cast<int>(uniform_int(rng, 1, max_features));
    for (int tries = 0; tries < 400 && static_cast<int>(layout.rects.size()) < want; ++tries) {
        const Coord x = uniform_int(rng, 0, 60) * 25;
        const Coord y = uniform_int(rng, 0, 60) * 25;
        const Coord len = uniform_int(rng, 4, 20) * 50;
        Rect r = uniform_int(rng, 0, 1) ? make_rect(x, y, x + kLineWidth, y + len)
                                        : make_rect(x, y, x + len, y + kLineWidth);
        bool clash = false;
        for (const auto& o : layout.rects) clash = clash || interiors_overlap(o, r);
        if (clash) continue;
        r.id = static_cast<int>(layout.rects.size());
        layout.rects.push_back(r);
    }
    return layout;
}

}  // namespace aapsm
