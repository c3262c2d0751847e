#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "aapsm/layout.hpp"

namespace aapsm {

enum class GeneratorStyle { Rows, Scatter };

struct GeneratorParams {
    GeneratorStyle style = GeneratorStyle::Rows;
    int features = 30;
    /// Chance that a comb motif (a bar over a run of equal-height lines)
    /// starts at a given line slot.
    double motif_density = 0.0;
    /// Centre-to-centre distance of neighbouring lines in a row.
    Coord pitch_min = 510;
    Coord pitch_max = 700;
    int lines_per_row = 12;
    DesignRules rules;
};

/// Rows style: rows of vertical lines, some capped by horizontal bars. With
/// density 0 the conflict graph is bipartite; with density > 0 at least one
/// comb is placed.
/// Scatter style: lines of both orientations dropped at random into a square
/// sized for the feature count, so overlaps cross and odd cycles interlock.
/// Density and pitch are ignored there. Often uncorrectable.
/// Deterministic per seed. Throws std::invalid_argument on infeasible
/// parameters.
Layout generate_layout(std::uint64_t seed, const GeneratorParams& params);

/// Uniform integer in [lo, hi] by rejection sampling, so sequences match
/// across standard libraries.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

/// A handful of short lines of both orientations dropped on a coarse grid;
/// used for exhaustive phase-feasibility checks.
GeneratorStyle parse_generator_style(const std::string& name);
const char* to_string(GeneratorStyle style);

Layout random_small_layout(std::mt19937_64& rng, int max_features);

}  // namespace aapsm
