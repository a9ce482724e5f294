#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "comove/series.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string output;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Result run(const testing::TempDir& dir, const std::string& args) {
    const fs::path log = dir / "cli.log";
    const std::string cmd = "cd '" + dir.path().string() + "' && '" COMOVE_CLI "' " + args + " > '" + log.string() +
                            "' 2>&1";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(log)};
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("simulate writes a reproducible run") {
    testing::TempDir dir("cli_sim");
    REQUIRE(run(dir, "simulate --scenario ants --organized --seed 7 --steps 60 --out a").code == 0);
    REQUIRE(run(dir, "simulate --scenario ants --organized --seed 7 --steps 60 --out b").code == 0);
    for (const char* f : {"ants_organized.csv", "ants_organized.meta", "ants_organized_events.csv",
                          "ants_organized.cfg"}) {
        CAPTURE(f);
        CHECK(fs::exists(dir / "a" / f));
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    SUBCASE("the saved config replays the run") {
        REQUIRE(run(dir, "simulate --config a/ants_organized.cfg --out c").code == 0);
        CHECK(slurp(dir / "c" / "ants_organized.csv") == slurp(dir / "a" / "ants_organized.csv"));
    }
    SUBCASE("flags override the config file") {
        REQUIRE(run(dir, "simulate --config a/ants_organized.cfg --seed 8 --out d").code == 0);
        CHECK(slurp(dir / "d" / "ants_organized.csv") != slurp(dir / "a" / "ants_organized.csv"));
        CHECK(slurp(dir / "d" / "ants_organized.cfg").find("seed=8\n") != std::string::npos);
    }
}

TEST_CASE("usage errors exit nonzero with a hint") {
    testing::TempDir dir("cli_usage");
    auto r = run(dir, "simulate --scenario termites --out x");
    CHECK(r.code != 0);
    CHECK(r.output.find("--help") != std::string::npos);
    CHECK(!fs::exists(dir / "x"));

    r = run(dir, "simulate --scenario ants --set ants.nope=1 --out x");
    CHECK(r.code != 0);
    CHECK(r.output.find("ants.nope") != std::string::npos);
    CHECK(!fs::exists(dir / "x"));

    CHECK(run(dir, "").code != 0);
    CHECK(run(dir, "detect --input missing.csv").code != 0);
}

TEST_CASE("detect defaults and errors") {
    testing::TempDir dir("cli_detect");
    REQUIRE(run(dir, "simulate --scenario wolf_sheep --seed 2 --steps 80 --out sim").code == 0);
    const auto r = run(dir, "detect --input sim/wolf_sheep_organized.csv --out det --plot");
    REQUIRE(r.code == 0);
    const auto series = comove::read_metrics_csv(dir / "det" / "wolf_sheep_organized_metrics.csv");
    // Silhouette, graph entropy and the two baseline axes, for windows 25 and 50.
    REQUIRE(series.size() == 8);
    CHECK(series[0].method == comove::Method::silhouette);
    CHECK(series[0].window_length == 25);
    CHECK(series[4].window_length == 50);
    CHECK(series[1].method == comove::Method::graph_entropy);
    CHECK(fs::exists(dir / "det" / "wolf_sheep_organized_w50_silhouette.svg"));

    const auto lit = run(dir, "detect --input sim/wolf_sheep_organized.csv --out lit --method entropy "
                              "--entropy-variant literal --window 30");
    REQUIRE(lit.code == 0);
    const auto lit_series = comove::read_metrics_csv(dir / "lit" / "wolf_sheep_organized_metrics.csv");
    REQUIRE(lit_series.size() == 1);
    CHECK(lit_series[0].method == comove::Method::graph_entropy_literal);

    const auto too_long = run(dir, "detect --input sim/wolf_sheep_organized.csv --out long --window 600");
    CHECK(too_long.code != 0);
    CHECK(too_long.output.find("600") != std::string::npos);
    CHECK(!fs::exists(dir / "long"));

    SUBCASE("config values apply unless a flag is given") {
        write(dir / "d.cfg", "detect.window=20\ndetect.method=baseline\n");
        REQUIRE(run(dir, "detect --config d.cfg --window 40 --input sim/wolf_sheep_organized.csv --out cfg").code ==
                0);
        const auto s = comove::read_metrics_csv(dir / "cfg" / "wolf_sheep_organized_metrics.csv");
        REQUIRE(s.size() == 2);
        CHECK(s[0].method == comove::Method::baseline_x);
        CHECK(s[0].window_length == 40);
        write(dir / "bad.cfg", "detect.windw=20\n");
        CHECK(run(dir, "detect --config bad.cfg --input sim/wolf_sheep_organized.csv --out bad").code != 0);
    }
    SUBCASE("entropy needs three agents") {
        write(dir / "two.csv", "step,agent,x,y\n0,0,1,1\n0,1,2,2\n1,0,1,1\n1,1,2,2\n2,0,1,1\n2,1,2,2\n");
        const auto e = run(dir, "detect --input two.csv --method entropy --window 2 --out two");
        CHECK(e.code != 0);
        CHECK(e.output.find("3 agents") != std::string::npos);
    }
}

TEST_CASE("compare writes metrics, plots and a summary") {
    testing::TempDir dir("cli_compare");
    REQUIRE(run(dir, "simulate --scenario ants --organized --seed 3 --steps 70 --out sim").code == 0);
    REQUIRE(run(dir, "simulate --scenario ants --disorganized --seed 3 --steps 70 --out sim").code == 0);
    const auto r = run(dir, "compare --organized sim/ants_organized.csv --disorganized sim/ants_disorganized.csv "
                            "--window 30 --out cmp");
    REQUIRE(r.code == 0);
    CHECK(r.output.find("| scenario") != std::string::npos);
    for (const char* f : {"organized_metrics.csv", "disorganized_metrics.csv", "summary.csv", "summary.md",
                          "comparison_w30_silhouette.svg", "comparison_w30_entropy.svg",
                          "comparison_w30_baseline.svg"})
        CHECK(fs::exists(dir / "cmp" / f));
}

TEST_CASE("a failed reproduce removes its partial output") {
    testing::TempDir dir("cli_cleanup");
    fs::create_directories(dir / "out" / "plots" / "ants_w20_silhouette.svg");  // blocks one plot file
    write(dir / "out" / "keep.txt", "mine");
    const auto r = run(dir, "reproduce --steps 30 --window 20 --out out");
    CHECK(r.code != 0);
    CHECK(slurp(dir / "out" / "keep.txt") == "mine");
    CHECK(fs::is_directory(dir / "out" / "plots" / "ants_w20_silhouette.svg"));
    CHECK(!fs::exists(dir / "out" / "metrics"));
    CHECK(!fs::exists(dir / "out" / "trajectories"));
    CHECK(!fs::exists(dir / "out" / "summary.csv"));
}
