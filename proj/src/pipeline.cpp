#include "aapsm/pipeline.hpp"

namespace aapsm {

Detection detect(const Layout& layout, const DetectOptions& options) {
    Detection d;
    d.shifters = generate_shifters(layout);
    d.overlaps = find_overlapping_pairs(d.shifters, layout.rules);
    d.graph = build_pcg(d.shifters, d.overlaps, layout.rules, options.weights);
    d.embedding = planarize(d.graph);
    d.dual = build_dual(d.graph, d.embedding);
    d.optimal = bipartize_optimal(d.graph, d.embedding, d.dual, options.gadget);
    d.conflicts = finalize_conflicts(d.graph, d.embedding.removed_p, d.optimal.edges);
    if (options.greedy_baseline) d.greedy = bipartize_greedy(d.graph);
    return d;
}

Correction correct(const Layout& layout, const DetectOptions& options, int exact_limit) {
    Correction c;
    c.before = detect(layout, options);
    c.intervals = compute_intervals(layout, c.before.shifters, c.before.graph, c.before.conflicts);
    c.plan = plan_spaces(c.intervals, exact_limit);
    if (!c.plan.uncovered.empty()) return c;
    c.modified = apply_spaces(layout, c.before.shifters, c.plan);
    DetectOptions again = options;
    again.greedy_baseline = false;
    c.residual = detect(c.modified->layout, again).pcg_conflicts();
    return c;
}

}  // namespace aapsm
