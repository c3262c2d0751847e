#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "aapsm/error.hpp"
#include "aapsm/generator.hpp"
#include "aapsm/pipeline.hpp"

namespace aapsm::cli {
namespace {

struct Options {
    std::vector<std::string> inputs;
    std::string rules;
    std::string gadget = "generalized";
    std::string weights = "uniform";
    bool baseline_gb = false;
    bool timing = false;
    int jobs = 1;
    std::string dump_graph;
    std::string dump_embedding;
    std::string dump_conflicts;
    std::string dump_plan;
    std::string output;
    int exact_cover_limit = 20;
    // generate
    std::uint64_t seed = 1;
    std::string style = "rows";
    int features = 30;
    double density = 0.0;
    Coord pitch_min = 510;
    Coord pitch_max = 700;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Uncorrectable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << data;
}

DesignRules parse_rules(const std::string& text) {
    std::vector<Coord> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("--rules expects cw,sw,sg,ms integers");
        }
    }
    if (v.size() != 4) throw InputError("--rules expects cw,sw,sg,ms integers");
    DesignRules r{v[0], v[1], v[2], v[3]};
    if (!r.valid()) throw InputError("--rules values out of range");
    return r;
}

DetectOptions detect_options(const Options& o) {
    DetectOptions d;
    d.gadget = o.gadget == "optimized" ? GadgetMode::Optimized : GadgetMode::Generalized;
    d.weights.mode = o.weights == "separation" ? WeightMode::Separation : WeightMode::Uniform;
    d.greedy_baseline = o.baseline_gb;
    return d;
}

Layout load(const Options& o, const std::string& path, std::string* bytes = nullptr) {
    const std::string text = read_file(path);
    if (bytes) *bytes = text;
    Layout l = parse_layout(text);
    if (!o.rules.empty()) {
        l.rules = parse_rules(o.rules);
        validate_layout(l);
    }
    return l;
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

void report_detection(std::ostream& os, const Options& o, const Layout& l, const Detection& d) {
    os << "polygons=" << l.rects.size() << '\n';
    os << "critical_features=" << d.shifters.size() / 2 << '\n';
    os << "shifters=" << d.shifters.size() << '\n';
    os << "shifter_overlaps=" << d.overlaps.size() << '\n';
    os << "graph_nodes=" << d.graph.nodes.size() << '\n';
    os << "graph_edges=" << d.graph.edges.size() << '\n';
    os << "crossing_edges_removed=" << d.embedding.removed_p.size() << '\n';
    os << "faces=" << d.embedding.faces.size() << '\n';
    os << "gadget=" << o.gadget << '\n';
    os << "np_conflicts=" << d.np_conflicts() << '\n';
    os << "pcg_conflicts=" << d.pcg_conflicts() << '\n';
    os << "conflict_weight=" << d.conflicts.total_weight << '\n';
    if (d.greedy) {
        os << "gb_conflicts=" << d.greedy->deleted.size() << '\n';
        os << "gb_non_tree_edges=" << d.greedy->non_tree_edges << '\n';
        os << "gb_weight=" << d.greedy->weight << '\n';
    }
}

// Matching wall time per gadget mode; both modes must agree on the weight.
void report_timing(std::ostream& os, const Detection& d) {
    std::int64_t weight[2] = {0, 0};
    const GadgetMode modes[2] = {GadgetMode::Optimized, GadgetMode::Generalized};
    for (int i = 0; i < 2; ++i) {
        const auto r = bipartize_optimal(d.graph, d.embedding, d.dual, modes[i]);
        weight[i] = r.weight;
        os << "time.matching." << to_string(modes[i]) << "_ms=" << fixed(r.matching_seconds * 1e3, 3)
           << '\n';
    }
    if (weight[0] != weight[1]) throw InternalError("gadget modes disagree on the join weight");
}

std::string dump_conflicts(const ConflictSet& cs) {
    std::ostringstream os;
    for (const auto& c : cs.conflicts) {
        os << "conflict " << c.edge << ' ' << c.shifter_a << ' ' << c.shifter_b << ' '
           << c.required_separation << ' ' << to_string(c.origin) << '\n';
    }
    return os.str();
}

void write_dumps(const Options& o, const Detection& d) {
    if (!o.dump_graph.empty()) write_file(o.dump_graph, dump_graph(d.graph));
    if (!o.dump_embedding.empty()) write_file(o.dump_embedding, dump_embedding(d.graph, d.embedding));
    if (!o.dump_conflicts.empty()) write_file(o.dump_conflicts, dump_conflicts(d.conflicts));
}

void cmd_detect(const Options& o, const std::string& path, std::ostream& os) {
    const Layout l = load(o, path);
    const Detection d = detect(l, detect_options(o));
    os << "design=" << path << '\n';
    report_detection(os, o, l, d);
    if (o.timing) report_timing(os, d);
    write_dumps(o, d);
}

void cmd_correct(const Options& o, const std::string& path, std::ostream& os) {
    std::string bytes;
    const Layout l = load(o, path, &bytes);
    const auto start = std::chrono::steady_clock::now();
    const Correction c = correct(l, detect_options(o), o.exact_cover_limit);
    const auto stop = std::chrono::steady_clock::now();
    os << "design=" << path << '\n';
    report_detection(os, o, l, c.before);
    write_dumps(o, c.before);
    os << "intervals=" << c.intervals.intervals.size() << '\n';
    os << "uncovered=" << c.plan.uncovered.size() << '\n';
    if (!o.dump_plan.empty()) write_file(o.dump_plan, dump_plan(c.plan));
    if (!c.plan.uncovered.empty()) {
        std::ostringstream msg;
        msg << path << ": " << c.plan.uncovered.size() << " conflict(s) cannot be fixed by spacing:";
        for (int id : c.plan.uncovered) {
            const auto& e = c.before.graph.edges[id];
            msg << "\n  conflict " << id << " shifters " << e.shifter_a << ' ' << e.shifter_b << ' '
                << (e.kind == EdgeKind::FeatureEdge ? "(feature edge)" : "(no usable gap)");
        }
        throw Uncorrectable(msg.str());
    }
    const auto& plan = c.plan;
    const auto& area = c.modified->area;
    os << "candidate_lines=" << plan.candidates << '\n';
    os << "grid_lines=" << plan.cuts.size() << '\n';
    os << "max_conflicts_per_line=" << plan.max_conflicts_per_cut() << '\n';
    os << "cover=" << (plan.used_exact ? "exact" : "greedy") << '\n';
    os << "greedy_width=" << plan.greedy_width << '\n';
    os << "greedy_lines=" << plan.greedy_cuts << '\n';
    if (plan.used_exact) {
        os << "exact_width=" << plan.exact_width << '\n';
        os << "exact_lines=" << plan.exact_cuts << '\n';
    }
    os << "inserted_x=" << area.added_x << '\n';
    os << "inserted_y=" << area.added_y << '\n';
    os << "area_before=" << area.old_area << '\n';
    os << "area_after=" << area.new_area << '\n';
    os << "area_identity=" << (area.identity_holds ? "ok" : "broken") << '\n';
    os << "area_increase_pct=" << fixed(area.percent_increase(), 4) << '\n';
    os << "residual_conflicts=" << c.residual << '\n';
    if (o.timing) {
        os << "time.correct_ms=" << fixed(std::chrono::duration<double>(stop - start).count() * 1e3, 3)
           << '\n';
    }
    if (!o.output.empty()) {
        write_file(o.output, plan.cuts.empty() ? bytes : serialize_layout(c.modified->layout));
    }
    if (!area.identity_holds) throw InternalError("area identity failed");
    if (c.residual != 0) throw InternalError("conflicts remain after correction");
}

void cmd_generate(const Options& o, std::ostream& os) {
    GeneratorParams p;
    p.features = o.features;
    p.motif_density = o.density;
    p.pitch_min = o.pitch_min;
    p.pitch_max = o.pitch_max;
    if (!o.rules.empty()) p.rules = parse_rules(o.rules);
    Layout l;
    try {
        p.style = parse_generator_style(o.style);
        l = generate_layout(o.seed, p);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    const std::string text = serialize_layout(l);
    if (o.output.empty()) {
        os << text;
    } else {
        write_file(o.output, text);
    }
}

// Maps library exceptions onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& f) {
    try {
        f();
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const Uncorrectable& e) {
        err << "error: " << e.what() << '\n';
        return kUncorrectable;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

// Runs `one` for each input, possibly in parallel; output keeps input order.
template <typename F>
int fan_out(const Options& o, std::ostream& out, std::ostream& err, F one) {
    const int n = static_cast<int>(o.inputs.size());
    if (n > 1 && (!o.dump_graph.empty() || !o.dump_embedding.empty() || !o.dump_conflicts.empty() ||
                  !o.dump_plan.empty() || !o.output.empty())) {
        err << "error: dump and output files need a single input\n";
        return kInputError;
    }
    std::vector<std::ostringstream> outs(n), errs(n);
    std::vector<int> codes(n, kOk);
#pragma omp parallel for num_threads(std::max(1, o.jobs)) schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) {
        codes[i] = guarded(errs[i], [&] { one(o, o.inputs[i], outs[i]); });
    }
    int code = kOk;
    for (int i = 0; i < n; ++i) {
        out << outs[i].str();
        err << errs[i].str();
        code = std::max(code, codes[i]);
    }
    return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Phase-conflict detection and correction for bright-field AAPSM layouts", "aapsm"};
    app.require_subcommand(1);
    Options o;

    auto add_detect_flags = [&](CLI::App* sub) {
        sub->add_option("layouts", o.inputs, "Layout files")->required();
        sub->add_option("--rules", o.rules, "Override rules: cw,sw,sg,ms (nm)");
        sub->add_option("--gadget", o.gadget, "Gadget construction")
            ->check(CLI::IsMember({"generalized", "optimized"}));
        sub->add_option("--weights", o.weights, "Overlap edge weights")
            ->check(CLI::IsMember({"uniform", "separation"}));
        sub->add_flag("--baseline-gb", o.baseline_gb, "Also run the spanning-tree baseline");
        sub->add_option("--dump-graph", o.dump_graph, "Write the phase conflict graph");
        sub->add_option("--dump-embedding", o.dump_embedding, "Write the planar faces");
        sub->add_option("--dump-conflicts", o.dump_conflicts, "Write the conflict list");
        sub->add_option("--jobs", o.jobs, "Parallel designs")->check(CLI::PositiveNumber);
        sub->add_flag("--timing", o.timing, "Report wall-clock times (not reproducible)");
    };

    auto* det = app.add_subcommand("detect", "Find a minimum set of phase conflicts");
    add_detect_flags(det);
    auto* cor = app.add_subcommand("correct", "Detect, then insert spaces to remove the conflicts");
    add_detect_flags(cor);
    cor->add_option("-o,--output", o.output, "Corrected layout file");
    cor->add_option("--dump-plan", o.dump_plan, "Write the chosen cut lines");
    cor->add_option("--exact-cover-limit", o.exact_cover_limit,
                    "Run the exact cover when there are at most this many candidate lines")
        ->check(CLI::NonNegativeNumber);
    auto* gen = app.add_subcommand("generate", "Write a synthetic layout");
    gen->add_option("--seed", o.seed, "Random seed");
    gen->add_option("--style", o.style, "rows or scatter");
    gen->add_option("--features", o.features, "Number of features");
    gen->add_option("--density", o.density, "Comb motif density in [0, 1]");
    gen->add_option("--pitch-min", o.pitch_min, "Smallest line pitch (nm)");
    gen->add_option("--pitch-max", o.pitch_max, "Largest line pitch (nm)");
    gen->add_option("--rules", o.rules, "Rules: cw,sw,sg,ms (nm)");
    gen->add_option("-o,--output", o.output, "Output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    if (det->parsed()) return fan_out(o, out, err, cmd_detect);
    if (cor->parsed()) return fan_out(o, out, err, cmd_correct);
    return guarded(err, [&] { cmd_generate(o, out); });
}

}  // namespace aapsm::cli
