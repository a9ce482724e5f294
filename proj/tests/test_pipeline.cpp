#include <cmath>
#include <cstdlib>
#include <random>

#include "comove/pipeline.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace comove;

namespace {

// Window vectors relative to the world centre, x block then y block.
std::vector<std::vector<double>> centred_rows(const TrajectoryTensor& t, std::size_t start, std::size_t len) {
    std::vector<std::vector<double>> rows(t.num_agents());
    for (std::size_t a = 0; a < t.num_agents(); ++a) {
        for (std::size_t s = start; s < start + len; ++s) rows[a].push_back(t.at(s, a).x - t.world().width / 2);
        for (std::size_t s = start; s < start + len; ++s) rows[a].push_back(t.at(s, a).y - t.world().height / 2);
    }
    return rows;
}

// M_sim built directly from its definition.
oracle::Matrix oracle_msim(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    const auto dist = oracle::euclidean(rows);
    double top = 0.0;
    for (const auto& r : dist)
        for (double v : r) top = std::max(top, v);
    oracle::Matrix m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double dot = 0.0, ni = 0.0, nj = 0.0;
            for (std::size_t k = 0; k < rows[i].size(); ++k) {
                dot += rows[i][k] * rows[j][k];
                ni += rows[i][k] * rows[i][k];
                nj += rows[j][k] * rows[j][k];
            }
            const double cos = ni > 0 && nj > 0 ? dot / std::sqrt(ni * nj) : 0.0;
            m[i][j] = (1.0 - std::abs(cos)) * (top > 0 ? dist[i][j] / top : 0.0);
        }
    return m;
}

std::optional<double> oracle_silhouette(const TrajectoryTensor& t, std::size_t start, std::size_t len, double eps,
                                        std::size_t min_pts) {
    const auto rows = centred_rows(t, start, len);
    auto labels = oracle::dbscan(oracle_msim(rows), eps, min_pts);
    const int clusters = *std::max_element(labels.begin(), labels.end()) + 1;
    if (clusters < 2) return std::nullopt;
    for (int& l : labels)
        if (l < 0) l = clusters;
    return oracle::silhouette(oracle::euclidean(rows), labels).overall;
}

// Agents on straight lines from given starts with given velocities.
TrajectoryTensor straight_lines(const std::vector<Point>& starts, const std::vector<Point>& velocity, std::size_t steps,
                                WorldSpec world = {100, 100, Topology::bounded}) {
    std::vector<Point> pts;
    for (std::size_t s = 0; s < steps; ++s)
        for (std::size_t a = 0; a < starts.size(); ++a)
            pts.push_back({starts[a].x + velocity[a].x * static_cast<double>(s),
                           starts[a].y + velocity[a].y * static_cast<double>(s)});
    return TrajectoryTensor(starts.size(), steps, world, std::move(pts));
}

DetectorOptions serial() {
    DetectorOptions o;
    o.threads = 1;
    return o;
}

}  // namespace

TEST_CASE("a rigid single group yields an all-missing silhouette series") {
    const std::vector<Point> starts(8, Point{20, 30}), vel(8, Point{0.5, 0.25});
    const auto t = straight_lines(starts, vel, 40);
    const auto s = run_silhouette_pipeline(t, 10, serial());
    CHECK(s.size() == 30);
    CHECK(present_count(s.values) == 0);
}

TEST_CASE("two separated co-moving groups score close to 1") {
    std::vector<Point> starts, vel;
    for (int i = 0; i < 6; ++i) {
        starts.push_back({10.0 + 0.001 * i, 10.0});
        vel.push_back({0.3, 0.0});
    }
    for (int i = 0; i < 6; ++i) {
        // Not opposite the first group: antiparallel vectors have |cos| = 1.
        starts.push_back({90.0, 10.0 + 0.001 * i});
        vel.push_back({0.0, 0.3});
    }
    const auto t = straight_lines(starts, vel, 30);
    const auto s = run_silhouette_pipeline(t, 10, serial());
    REQUIRE(present_count(s.values) == s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(*s.values[k] > 0.99);
        CHECK(*s.values[k] == doctest::Approx(*oracle_silhouette(t, k, 10, 0.01, 5)).epsilon(1e-9));
    }
}

TEST_CASE("silhouette pipeline matches the end-to-end oracle on random walks") {
    std::mt19937_64 rng(71);
    std::normal_distribution<double> step(0.0, 0.3);
    std::size_t scored = 0;
    for (int trial = 0; trial < 20; ++trial) {
        // Three loose bands of walkers so that DBSCAN finds structure at eps 0.05.
        const std::size_t agents = 24, steps = 25;
        std::vector<Point> pos(agents);
        for (std::size_t a = 0; a < agents; ++a) pos[a] = {20.0 + 30.0 * static_cast<double>(a % 3), 50.0};
        std::vector<Point> pts;
        for (std::size_t s = 0; s < steps; ++s)
            for (auto& p : pos) {
                p = {std::clamp(p.x + step(rng), 0.0, 100.0), std::clamp(p.y + step(rng), 0.0, 100.0)};
                pts.push_back({quantize_coordinate(p.x), quantize_coordinate(p.y)});
            }
        const TrajectoryTensor t(agents, steps, {100, 100, Topology::bounded}, pts);
        DetectorOptions o = serial();
        o.dbscan = {0.05, 4};
        const auto s = run_silhouette_pipeline(t, 8, o);
        for (std::size_t k = 0; k < s.size(); ++k) {
            const auto want = oracle_silhouette(t, k, 8, 0.05, 4);
            REQUIRE(s.values[k].has_value() == want.has_value());
            if (want) CHECK(std::abs(*s.values[k] - *want) < 1e-9);
        }
        scored += present_count(s.values);
    }
    CHECK(scored > 50);
}

TEST_CASE("identical agents give network entropy 1") {
    const std::vector<Point> starts(5, Point{40, 40}), vel(5, Point{0.2, -0.1});
    const auto t = straight_lines(starts, vel, 20);
    const auto s = run_entropy_pipeline(t, 5, serial());
    for (const auto& v : s.values) CHECK(std::abs(*v - 1.0) < 1e-12);
}

TEST_CASE("distant independent walkers give network entropy near 0") {
    std::vector<Point> starts, vel;
    for (int i = 0; i < 6; ++i) {
        const double angle = i * 1.0471975511965976;
        starts.push_back({50.0 + 40.0 * std::cos(angle), 50.0 + 40.0 * std::sin(angle)});
        vel.push_back({0.1 * std::sin(angle), -0.1 * std::cos(angle)});
    }
    const auto t = straight_lines(starts, vel, 20);
    const auto s = run_entropy_pipeline(t, 5, serial());
    for (const auto& v : s.values) CHECK(*v < 1e-12);
}

TEST_CASE("detector series are aligned and agree with the single-method pipelines") {
    std::mt19937_64 rng(72);
    const auto t = testing::random_tensor(rng, 12, 40);
    DetectorOptions o = serial();
    o.dbscan = {0.3, 3};
    o.tau = 0.3;
    const auto all = run_detectors(
        t, 10, {Method::silhouette, Method::graph_entropy, Method::graph_entropy_literal, Method::baseline_x}, o);
    REQUIRE(all.size() == 5);
    CHECK(all[0].method == Method::silhouette);
    CHECK(all[3].method == Method::baseline_x);
    CHECK(all[4].method == Method::baseline_y);
    for (const auto& s : all) {
        CHECK(s.size() == 30);
        CHECK(s.smoothed.size() == 30);
        CHECK(s.smoothed_diff.size() == 30);
        CHECK(s.window_length == 10);
    }
    CHECK(all[0].values == run_silhouette_pipeline(t, 10, o).values);
    CHECK(all[1].values == run_entropy_pipeline(t, 10, o).values);
    CHECK(all[2].values == run_entropy_pipeline(t, 10, o, true).values);
    CHECK(all[1].smoothed == moving_average(all[1].values, o.smooth_span));
}

TEST_CASE("results do not depend on the worker count") {
    std::mt19937_64 rng(73);
    const auto t = testing::random_tensor(rng, 30, 60);
    DetectorOptions o;
    o.dbscan = {0.2, 3};
    o.tau = 0.2;
    const std::vector<Method> methods{Method::silhouette, Method::graph_entropy, Method::graph_entropy_literal};
    o.threads = 1;
    const auto one = format_metrics_csv(run_detectors(t, 15, methods, o));
    o.threads = 4;
    CHECK(format_metrics_csv(run_detectors(t, 15, methods, o)) == one);
    o.threads = 7;
    CHECK(format_metrics_csv(run_detectors(t, 15, methods, o)) == one);
}

TEST_CASE("pipeline argument errors") {
    std::mt19937_64 rng(74);
    const auto t = testing::random_tensor(rng, 4, 20);
    CHECK_THROWS_AS(run_silhouette_pipeline(t, 20, serial()), std::invalid_argument);
    CHECK_THROWS_AS(run_silhouette_pipeline(t, 25, serial()), std::invalid_argument);
    CHECK_THROWS_AS(run_silhouette_pipeline(t, 1, serial()), std::invalid_argument);
    CHECK_NOTHROW(run_silhouette_pipeline(t, 19, serial()));
    const auto two = testing::random_tensor(rng, 2, 20);
    CHECK_THROWS_AS(run_entropy_pipeline(two, 5, serial()), std::invalid_argument);
    DetectorOptions bad = serial();
    bad.tau = 0.0;
    CHECK_THROWS_AS(run_entropy_pipeline(t, 5, bad), std::invalid_argument);
    bad = serial();
    bad.dbscan.eps = 0.0;
    CHECK_THROWS_AS(run_silhouette_pipeline(t, 5, bad), std::invalid_argument);
}

TEST_CASE("coordinate frames") {
    const auto t = straight_lines({{10, 20}, {30, 40}}, {{1, 0}, {0, 1}}, 5, {60, 80, Topology::bounded});
    const auto raw = framed_window(t, 1, 3, CoordinateFrame::raw);
    const auto centred = framed_window(t, 1, 3, CoordinateFrame::world_centered);
    const auto centroid = framed_window(t, 1, 3, CoordinateFrame::window_centroid);
    CHECK(raw.agent(0)[0] == 11.0);
    CHECK(centred.agent(0)[0] == 11.0 - 30.0);
    CHECK(centred.agent(0)[3] == 20.0 - 40.0);
    double sx = 0.0, sy = 0.0;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t k = 0; k < 3; ++k) {
            sx += centroid.agent(a)[k];
            sy += centroid.agent(a)[k + 3];
        }
    CHECK(std::abs(sx) < 1e-12);
    CHECK(std::abs(sy) < 1e-12);
    for (auto f : {CoordinateFrame::raw, CoordinateFrame::world_centered, CoordinateFrame::window_centroid})
        CHECK(parse_coordinate_frame(to_string(f)) == f);
    CHECK_THROWS_AS(parse_coordinate_frame("polar"), std::invalid_argument);
    for (auto s : {SilhouetteSpace::features, SilhouetteSpace::msim}) CHECK(parse_silhouette_space(to_string(s)) == s);
}

TEST_CASE("per-window dumps") {
    std::mt19937_64 rng(75);
    const auto t = testing::random_tensor(rng, 6, 8);
    testing::TempDir dir("dumps");
    DetectorOptions o = serial();
    o.dump_dir = dir.path() / "dump";
    run_silhouette_pipeline(t, 5, o);
    for (std::size_t s = 0; s < 3; ++s) {
        CHECK(std::filesystem::exists(*o.dump_dir / ("w5_s" + std::to_string(s) + "_msim.csv")));
        CHECK(std::filesystem::exists(*o.dump_dir / ("w5_s" + std::to_string(s) + "_labels.csv")));
    }
    CHECK(!std::filesystem::exists(*o.dump_dir / "w5_s3_msim.csv"));
}

TEST_CASE("worker count honours COMOVE_THREADS") {
    ::setenv("COMOVE_THREADS", "2", 1);
    CHECK(resolve_thread_count(8) == 2);
    CHECK(resolve_thread_count(1) == 1);
    ::setenv("COMOVE_THREADS", "junk", 1);
    CHECK(resolve_thread_count(8) == 8);
    ::unsetenv("COMOVE_THREADS");
    CHECK(resolve_thread_count(3) == 3);
    CHECK(resolve_thread_count() >= 1);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t k) { hits[k] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(50, 3,
                                 [](std::size_t k) {
                                     if (k == 17) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}
