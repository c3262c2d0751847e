#include <string>
#include <stdexcept>

#include "aapsm/generator.hpp"
#include "aapsm/pipeline.hpp"
#include "doctest.h"

using namespace aapsm;

TEST_CASE("generator: determinism and validity") {
    GeneratorParams p;
    p.features = 10;
    CHECK(serialize_layout(generate_layout(1, p)) == serialize_layout(generate_layout(1, p)));
    CHECK(serialize_layout(generate_layout(1, p)) != serialize_layout(generate_layout(2, p)));
    CHECK(generate_layout(1, p).rects.size() == 10);
}

TEST_CASE("generator: density zero gives a bipartite graph") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GeneratorParams p;
        p.features = 10 + static_cast<int>(seed);
        auto d = detect(generate_layout(seed, p));
        CHECK(d.pcg_conflicts() == 0);
        CHECK(is_balanced(d.graph));
        CHECK(!d.overlaps.empty());
    }
}

TEST_CASE("generator: motifs create odd cycles") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        for (double density : {0.01, 0.3, 1.0}) {
            GeneratorParams p;
            p.features = 30;
            p.motif_density = density;
            auto d = detect(generate_layout(seed, p));
            CHECK(d.pcg_conflicts() > 0);
        }
    }
    GeneratorParams p;
    p.features = 3;
    p.motif_density = 0.5;
    CHECK(detect(generate_layout(1, p)).pcg_conflicts() > 0);
}

TEST_CASE("generator: infeasible parameters") {
    GeneratorParams p;
    p.features = 0;
    CHECK_THROWS_AS(generate_layout(1, p), std::invalid_argument);
    p.features = 2;
    p.motif_density = 0.5;
    CHECK_THROWS_AS(generate_layout(1, p), std::invalid_argument);
    p = {};
    p.pitch_min = 400;
    CHECK_THROWS_AS(generate_layout(1, p), std::invalid_argument);
    p = {};
    p.motif_density = 1.5;
    CHECK_THROWS_AS(generate_layout(1, p), std::invalid_argument);
}

TEST_CASE("generator: uniform_int stays in range") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10000; ++i) {
        const auto v = uniform_int(rng, -3, 5);
        CHECK(v >= -3);
        CHECK(v <= 5);
    }
}

TEST_CASE("generator: scatter style") {
    GeneratorParams p;
    p.style = GeneratorStyle::Scatter;
    p.features = 40;
    CHECK(serialize_layout(generate_layout(4, p)) == serialize_layout(generate_layout(4, p)));
    int crossed = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Layout l = generate_layout(seed, p);
        CHECK(l.rects.size() == 40);
        auto d = detect(l);
        CHECK(d.pcg_conflicts() >= d.np_conflicts());
        crossed += d.embedding.removed_p.empty() ? 0 : 1;
    }
    CHECK(crossed > 0);
    CHECK(parse_generator_style("scatter") == GeneratorStyle::Scatter);
    CHECK(std::string(to_string(GeneratorStyle::Rows)) == "rows");
    CHECK_THROWS_AS(parse_generator_style("grid"), std::invalid_argument);
}
