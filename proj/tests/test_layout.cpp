#include <random>

#include "aapsm/error.hpp"
#include "aapsm/layout.hpp"
#include "aapsm/reference.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace aapsm;
using fixture::rect;

TEST_CASE("layout: parse") {
    SUBCASE("single rect") {
        auto l = parse_layout("rect poly 0 0 100 1000\n");
        REQUIRE(l.rects.size() == 1);
        CHECK(l.rects[0].area() == 100000);
        CHECK(l.rects[0].id == 0);
        CHECK(l.rules == DesignRules{});
    }
    SUBCASE("empty") { CHECK(parse_layout("").rects.empty()); }
    SUBCASE("comments, blank lines, rules and bbox") {
        auto l = parse_layout("# hi\n\nrules 120 150 10 90\nbbox -5 -5 500 500\nrect m1 0 0 5 5");
        CHECK(l.rules == DesignRules{120, 150, 10, 90});
        REQUIRE(l.bbox.has_value());
        CHECK(l.bbox->x_hi == 500);
        CHECK(l.rects[0].layer == "m1");
    }
    SUBCASE("overlapping features") {
        CHECK_THROWS_AS(parse_layout("rect poly 0 0 100 100\nrect poly 50 50 150 150\n"),
                        ValidationError);
        // touching edges do not overlap; other layers may overlap freely
        CHECK_NOTHROW(parse_layout("rect poly 0 0 100 100\nrect poly 100 0 200 100\n"));
        CHECK_NOTHROW(parse_layout("rect poly 0 0 100 100\nrect m1 50 50 150 150\n"));
    }
    SUBCASE("errors carry line numbers") {
        try {
            parse_layout("rect poly 0 0 1 1\nrect poly 0 x 1 1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
        CHECK_THROWS_AS(parse_layout("rect poly 0 0 1\n"), ParseError);
        CHECK_THROWS_AS(parse_layout("rect poly 5 0 1 1\n"), ParseError);
        CHECK_THROWS_AS(parse_layout("circle 1 2 3\n"), ParseError);
        CHECK_THROWS_AS(parse_layout("rules 0 1 1 1\n"), ParseError);
        CHECK_THROWS_AS(parse_layout("rules 1 1 -1 1\n"), ParseError);
    }
}

TEST_CASE("layout: serialize round trip") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 200; ++iter) {
        Layout l;
        l.rules = {oracle::uniform(rng, 1, 300), oracle::uniform(rng, 1, 300),
                   oracle::uniform(rng, 0, 50), oracle::uniform(rng, 1, 300)};
        if (iter % 2) l.bbox = rect(-10000, -10000, 10000, 10000, "bbox");
        for (int i = 0; i < 10; ++i) {
            const Coord x = oracle::uniform(rng, -5000, 5000);
            const Coord y = oracle::uniform(rng, -5000, 5000);
            Rect r = rect(x, y, x + oracle::uniform(rng, 1, 900), y + oracle::uniform(rng, 1, 900),
                          i % 3 ? "m1" : "diff");
            r.id = i;
            l.rects.push_back(r);
        }
        const std::string text = serialize_layout(l);
        const Layout back = parse_layout(text);
        CHECK(serialize_layout(back) == text);
        CHECK(back.rules == l.rules);
        CHECK(back.rects.size() == l.rects.size());
    }
}

TEST_CASE("layout: critical features") {
    auto l = fixture::layout({rect(0, 0, 100, 1000), rect(500, 0, 650, 1000), rect(1000, 0, 1120, 1120),
                              rect(2000, 0, 3000, 90), rect(0, 2000, 100, 2100, "m1")});
    const auto crit = find_critical_features(l);
    REQUIRE(crit.size() == 3);
    CHECK(crit[0].id == 0);
    CHECK(crit[1].id == 2);
    CHECK(is_vertical(crit[1]));
    CHECK(crit[2].id == 3);
    CHECK_FALSE(is_vertical(crit[2]));
}

TEST_CASE("layout: shifters") {
    SUBCASE("vertical feature") {
        auto sh = generate_shifters(fixture::layout({rect(0, 0, 100, 1000)}));
        REQUIRE(sh.size() == 2);
        CHECK(sh[0].rect.same_geometry(rect(-200, 0, 0, 1000)));
        CHECK(sh[1].rect.same_geometry(rect(100, 0, 300, 1000)));
        CHECK(sh[0].side == ShifterSide::Low);
        CHECK(sh[1].side == ShifterSide::High);
        CHECK(sh[0].rect.layer == "shifter");
    }
    SUBCASE("horizontal feature with gap") {
        auto sh = generate_shifters(
            fixture::layout({rect(0, 0, 1000, 100)}, DesignRules{150, 200, 10, 120}));
        CHECK(sh[0].rect.same_geometry(rect(0, -210, 1000, -10)));
        CHECK(sh[1].rect.same_geometry(rect(0, 110, 1000, 310)));
    }
    SUBCASE("no critical features") {
        CHECK(generate_shifters(fixture::layout({rect(0, 0, 500, 500)})).empty());
    }
    SUBCASE("close parallel features keep all shifters") {
        auto sh = generate_shifters(fixture::layout({rect(0, 0, 100, 1000), rect(200, 0, 300, 1000)}));
        CHECK(sh.size() == 4);
        CHECK(interiors_overlap(sh[1].rect, sh[2].rect));
    }
    SUBCASE("clipping") {
        auto l = fixture::layout({rect(0, 0, 100, 1000)});
        l.bbox = rect(-50, -50, 2000, 2000, "bbox");
        auto sh = generate_shifters(l);
        CHECK(sh[0].clipped);
        CHECK(sh[0].rect.x_lo == -50);
        CHECK_FALSE(sh[1].clipped);
        l.bbox = rect(0, 0, 2000, 2000, "bbox");
        CHECK_THROWS_AS(generate_shifters(l), ValidationError);
    }
    SUBCASE("pure function") {
        auto l = fixture::bar_over_line();
        const auto a = generate_shifters(l);
        const auto b = generate_shifters(l);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].rect.same_geometry(b[i].rect));
    }
}

TEST_CASE("layout: separation metric") {
    CHECK(separation(rect(0, 0, 10, 10), rect(60, 0, 70, 10)) == 50);
    CHECK(separation(rect(0, 0, 10, 10), rect(5, 5, 20, 20)) == 0);
    CHECK(separation(rect(0, 0, 10, 10), rect(13, 14, 20, 20)) == 5);
    CHECK(separation(rect(0, 0, 10, 10), rect(11, 11, 20, 20)) == 1);
    for (std::int64_t v : {0LL, 1LL, 2LL, 3LL, 4LL, 15LL, 16LL, 17LL, 99980001LL, 4000000000000000000LL}) {
        const Coord f = isqrt_floor(v);
        CHECK(f * f <= v);
        CHECK((f + 1) * (f + 1) > v);
        const Coord c = isqrt_ceil(v);
        CHECK(c * c >= v);
        CHECK((c == 0 || (c - 1) * (c - 1) < v));
    }
}

TEST_CASE("layout: overlapping pairs") {
    DesignRules rules{150, 200, 0, 100};
    auto shifter = [](int id, int feature, Rect r) {
        Shifter s;
        s.id = id;
        s.feature_id = feature;
        s.rect = r;
        return s;
    };
    SUBCASE("gap below and at the limit") {
        std::vector<Shifter> sh{shifter(0, 0, rect(0, 0, 200, 1000)), shifter(1, 1, rect(250, 0, 450, 1000))};
        auto p = find_overlapping_pairs(sh, rules);
        REQUIRE(p.size() == 1);
        CHECK(p[0] == OverlapPair{0, 1, 50});
        sh[1].rect = rect(300, 0, 500, 1000);
        CHECK(find_overlapping_pairs(sh, rules).empty());
    }
    SUBCASE("same feature never reported") {
        std::vector<Shifter> sh{shifter(0, 0, rect(0, 0, 200, 1000)), shifter(1, 0, rect(210, 0, 410, 1000))};
        CHECK(find_overlapping_pairs(sh, rules).empty());
    }
    SUBCASE("diagonal uses the corner distance") {
        // gaps 60 and 80: distance 100, not an overlap; 60/79 gives 99
        std::vector<Shifter> sh{shifter(0, 0, rect(0, 0, 10, 10)), shifter(1, 1, rect(70, 90, 80, 100))};
        CHECK(find_overlapping_pairs(sh, rules).empty());
        sh[1].rect = rect(70, 89, 80, 100);
        auto p = find_overlapping_pairs(sh, rules);
        REQUIRE(p.size() == 1);
        CHECK(p[0].separation == 99);
    }
}

TEST_CASE("layout: parallel overlap sweep equals the all-pairs reference") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<Shifter> sh;
        const int n = static_cast<int>(oracle::uniform(rng, 0, 300));
        for (int i = 0; i < n; ++i) {
            const Coord x = oracle::uniform(rng, 0, 20000);
            const Coord y = oracle::uniform(rng, 0, 20000);
            Shifter s;
            s.id = i;
            s.feature_id = i / 2;
            s.rect = rect(x, y, x + oracle::uniform(rng, 1, 1500), y + oracle::uniform(rng, 1, 1500));
            sh.push_back(s);
        }
        const DesignRules rules{150, 200, 0, oracle::uniform(rng, 1, 400)};
        const auto fast = find_overlapping_pairs(sh, rules);
        const auto slow = reference::find_overlapping_pairs(sh, rules);
        CHECK(fast == slow);
        for (const auto& p : fast) {
            CHECK(p.a < p.b);
            CHECK(sh[p.a].feature_id != sh[p.b].feature_id);
        }
    }
}

TEST_CASE("layout: extent") {
    auto l = fixture::layout({rect(0, 0, 100, 1000)});
    auto e = layout_extent(l, generate_shifters(l));
    CHECK(e.same_geometry(rect(-200, 0, 300, 1000)));
    l.bbox = rect(-500, -500, 500, 1500, "bbox");
    CHECK(layout_extent(l, {}).same_geometry(*l.bbox));
}
