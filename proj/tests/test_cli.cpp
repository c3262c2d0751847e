#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using aapsm::cli::run_cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "aapsm_test_cli";
    fs::create_directories(dir);
    return dir;
}

std::string put(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has_line(const std::string& report, const std::string& line) {
    std::istringstream in(report);
    for (std::string l; std::getline(in, l);) {
        if (l == line) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("cli: single feature has no conflicts") {
    auto path = put("one.txt", aapsm::serialize_layout(fixture::layout({fixture::rect(0, 0, 100, 1000)})));
    auto r = run({"detect", path});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "pcg_conflicts=0"));
    CHECK(has_line(r.out, "shifters=2"));
    CHECK(r.out.find("time.") == std::string::npos);
}

TEST_CASE("cli: bar over line detected and corrected") {
    auto path = put("bar.txt", aapsm::serialize_layout(fixture::bar_over_line()));
    auto d = run({"detect", path, "--baseline-gb"});
    CHECK(d.code == 0);
    CHECK(has_line(d.out, "pcg_conflicts=1"));
    CHECK(has_line(d.out, "gb_conflicts=1"));

    const auto out = (scratch() / "bar_fixed.txt").string();
    const auto plan = (scratch() / "bar_plan.txt").string();
    auto c = run({"correct", path, "-o", out, "--dump-plan", plan});
    CHECK(c.code == 0);
    CHECK(has_line(c.out, "residual_conflicts=0"));
    CHECK(has_line(c.out, "area_identity=ok"));
    CHECK(has_line(c.out, "inserted_y=100"));
    CHECK(slurp(plan).rfind("cut y ", 0) == 0);
    auto again = run({"detect", out});
    CHECK(has_line(again.out, "pcg_conflicts=0"));
}

TEST_CASE("cli: conflict-free correction copies the input") {
    const std::string text = aapsm::serialize_layout(fixture::two_lines());
    auto path = put("pair.txt", text);
    const auto out = (scratch() / "pair_out.txt").string();
    auto c = run({"correct", path, "-o", out});
    CHECK(c.code == 0);
    CHECK(slurp(out) == text);
}

TEST_CASE("cli: exit codes") {
    CHECK(run({}).code == aapsm::cli::kInputError);
    CHECK(run({"detect", put("bad.txt", "rect poly 0 0 x 1\n")}).code == aapsm::cli::kInputError);
    CHECK(run({"detect", (scratch() / "missing.txt").string()}).code == aapsm::cli::kInputError);
    CHECK(run({"detect", put("g.txt", "rect poly 0 0 100 100\n"), "--gadget", "nope"}).code ==
          aapsm::cli::kInputError);
    CHECK(run({"generate", "--features", "2", "--density", "0.5"}).code ==
          aapsm::cli::kInputError);
    CHECK(run({"generate", "--style", "grid"}).code == aapsm::cli::kInputError);

    // bar shifter touches the line shifters: no gap to widen
    auto path = put("stuck.txt", aapsm::serialize_layout(fixture::layout(
                                     {fixture::rect(0, 0, 100, 1000), fixture::rect(-250, 1200, 350, 1300)})));
    auto d = run({"detect", path});
    CHECK(d.code == 0);
    CHECK(has_line(d.out, "pcg_conflicts=1"));
    auto c = run({"correct", path, "-o", (scratch() / "stuck_out.txt").string()});
    CHECK(c.code == aapsm::cli::kUncorrectable);
    CHECK(c.err.find("no usable gap") != std::string::npos);
}

TEST_CASE("cli: timing keys only on request") {
    auto path = put("bar2.txt", aapsm::serialize_layout(fixture::bar_over_line()));
    auto r = run({"detect", path, "--timing"});
    CHECK(r.code == 0);
    CHECK(r.out.find("time.matching.optimized_ms=") != std::string::npos);
}

TEST_CASE("cli: byte determinism") {
    auto g1 = run({"generate", "--seed", "9", "--features", "30", "--density", "0.3"});
    auto g2 = run({"generate", "--seed", "9", "--features", "30", "--density", "0.3"});
    CHECK(g1.code == 0);
    CHECK(g1.out == g2.out);
    auto path = put("gen.txt", g1.out);
    auto d1 = run({"detect", path, path, "--jobs", "2", "--baseline-gb"});
    auto d2 = run({"detect", path, path, "--baseline-gb"});
    CHECK(d1.code == 0);
    CHECK(d1.out == d2.out);
    CHECK(run({"detect", path, "--dump-conflicts", (scratch() / "c1.txt").string()}).code == 0);
    CHECK(run({"detect", path, "--dump-conflicts", (scratch() / "c2.txt").string()}).code == 0);
    CHECK(slurp((scratch() / "c1.txt").string()) == slurp((scratch() / "c2.txt").string()));
}
