#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "comove/rng.hpp"
#include "comove/simulators.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace comove;

namespace {

// Heading in degrees, 0 = +y, clockwise.
double heading_of(double dx, double dy) {
    double h = std::atan2(dx, dy) * 180.0 / M_PI;
    return h < 0 ? h + 360.0 : h;
}

double angle_between(double a, double b) {
    const double d = std::fmod(std::abs(a - b), 360.0);
    return std::min(d, 360.0 - d);
}

ScenarioConfig short_config(Scenario s, bool organized, std::uint64_t seed, std::size_t steps = 120) {
    auto c = default_config(s, organized, seed);
    c.num_steps = steps;
    return c;
}

}  // namespace

TEST_CASE("rng conversions") {
    Rng a(5), b(5), c(6);
    CHECK(a.next() == b.next());
    CHECK(a.next() != c.next());
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 10000; ++i) {
        const double u = a.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const auto k = a.below(7);
        CHECK(k < 7);
        seen.insert(k);
    }
    CHECK(seen.size() == 7);
    SUBCASE("the engine is the standard 64-bit Mersenne Twister") {
        Rng d(5489);
        // 10000th output of a default-seeded mt19937_64, fixed by the C++ standard.
        for (int i = 0; i < 9999; ++i) d.next();
        CHECK(d.next() == 9981545732273789042ull);
    }
}

TEST_CASE("simulations are reproducible and seed dependent") {
    for (auto s : kAllScenarios) {
        for (bool organized : {true, false}) {
            CAPTURE(to_string(s));
            CAPTURE(organized);
            const auto a = simulate(short_config(s, organized, 3));
            const auto b = simulate(short_config(s, organized, 3));
            const auto c = simulate(short_config(s, organized, 4));
            CHECK(a.trajectory == b.trajectory);
            CHECK(a.events == b.events);
            CHECK(a.carrying == b.carrying);
            CHECK(!(a.trajectory == c.trajectory));
        }
    }
}

TEST_CASE("default configurations follow the experiment table") {
    const auto ants = default_config(Scenario::ants, true, 1);
    CHECK(ants.num_agents == 150);
    CHECK(default_config(Scenario::wolf_sheep, true, 1).num_agents == 15);
    CHECK(default_config(Scenario::flocking, true, 1).num_agents == 300);
    CHECK(default_config(Scenario::flocking, true, 1).world.topology == Topology::toroidal);
    CHECK(default_config(Scenario::ants_adaptation, true, 1).num_agents == 20);
    for (auto s : kAllScenarios) CHECK(default_config(s, false, 1).num_steps == 500);
}

TEST_CASE("trajectories have the configured shape and stay in the world") {
    for (auto s : kAllScenarios) {
        for (bool organized : {true, false}) {
            CAPTURE(to_string(s));
            const auto c = short_config(s, organized, 9, 200);
            const auto run = simulate(c);
            const auto& t = run.trajectory;
            CHECK(t.num_agents() == c.num_agents);
            CHECK(t.num_steps() == c.num_steps);
            CHECK(t.world() == c.world);
            for (std::size_t step = 0; step < t.num_steps(); ++step)
                for (std::size_t a = 0; a < t.num_agents(); ++a) {
                    const Point p = t.at(step, a);
                    REQUIRE(c.world.contains(p));
                    CHECK(p.x == quantize_coordinate(p.x));
                }
        }
    }
}

TEST_CASE("organized wolves aim at the pack target") {
    auto c = short_config(Scenario::wolf_sheep, true, 2, 300);
    const auto run = simulate(c);
    const auto& t = run.trajectory;
    std::size_t checked = 0;
    for (std::size_t step = 1; step < t.num_steps(); ++step) {
        if (!run.pack_target[step]) continue;
        const Point goal = *run.pack_target[step];
        for (std::size_t k = 0; k < t.num_agents(); ++k) {
            const Point from = t.at(step - 1, k), to = t.at(step, k);
            const double moved = std::hypot(to.x - from.x, to.y - from.y);
            if (moved < 0.5) continue;  // arrived or blocked by a wall
            const double actual = heading_of(to.x - from.x, to.y - from.y);
            const double direct = heading_of(goal.x - from.x, goal.y - from.y);
            const double allowed = k == 0 ? 0.0 : c.wolf_sheep.flank_angle_deg;
            CHECK(angle_between(actual, direct) <= allowed + 1e-3);
            ++checked;
        }
    }
    CHECK(checked > 1000);
    CHECK(std::count_if(run.events.begin(), run.events.end(),
                        [](const SimEvent& e) { return e.event == "sheep_eaten"; }) > 0);
}

TEST_CASE("a lone bird keeps a straight course") {
    auto c = short_config(Scenario::flocking, true, 4, 100);
    c.num_agents = 1;
    const auto t = simulate(c).trajectory;
    const double w = c.world.width, h = c.world.height;
    auto wrapped = [](double d, double extent) { return d - extent * std::round(d / extent); };
    const double dx0 = wrapped(t.at(1, 0).x - t.at(0, 0).x, w), dy0 = wrapped(t.at(1, 0).y - t.at(0, 0).y, h);
    CHECK(std::hypot(dx0, dy0) == doctest::Approx(c.flocking.speed).epsilon(1e-5));
    for (std::size_t s = 1; s < t.num_steps(); ++s) {
        CHECK(wrapped(t.at(s, 0).x - t.at(s - 1, 0).x, w) == doctest::Approx(dx0).epsilon(1e-4));
        CHECK(wrapped(t.at(s, 0).y - t.at(s - 1, 0).y, h) == doctest::Approx(dy0).epsilon(1e-4));
    }
}

TEST_CASE("ants depart one per tick and carry food in both modes") {
    for (bool organized : {true, false}) {
        const auto c = short_config(Scenario::ants, organized, 5, 200);
        const auto run = simulate(c);
        const Point nest{c.world.width / 2, c.world.height / 2};
        // Ant 100 has not left the nest at tick 99.
        CHECK(run.trajectory.at(99, 100).x == quantize_coordinate(nest.x));
        CHECK(run.trajectory.at(99, 100).y == quantize_coordinate(nest.y));
        CHECK(run.carrying.size() == c.num_agents * c.num_steps);
        CHECK(std::count(run.carrying.begin(), run.carrying.end(), 1) > 0);
    }
}

TEST_CASE("ants adaptation modes coincide without flowers or fights") {
    auto org = short_config(Scenario::ants_adaptation, true, 6, 150);
    auto dis = short_config(Scenario::ants_adaptation, false, 6, 150);
    for (auto* c : {&org, &dis}) {
        c->ants_adaptation.flowers = 0;
        c->ants_adaptation.fight_deposit = 0.0;
    }
    CHECK(simulate(org).trajectory == simulate(dis).trajectory);
    SUBCASE("with flowers the organized colonies behave differently") {
        CHECK(!(simulate(short_config(Scenario::ants_adaptation, true, 6, 150)).trajectory ==
                simulate(short_config(Scenario::ants_adaptation, false, 6, 150)).trajectory));
    }
}

TEST_CASE("config overrides and validation") {
    auto c = default_config(Scenario::ants, true, 1);
    KeyValueFile kv = KeyValueFile::parse("ants.diffusion_rate = 0.25\nnum_steps=80\norganized=false\nseed=17\n");
    apply_overrides(c, kv);
    CHECK(c.ants.diffusion_rate == 0.25);
    CHECK(c.num_steps == 80);
    CHECK(!c.organized);
    CHECK(c.seed == 17);
    CHECK_THROWS_AS(apply_overrides(c, KeyValueFile::parse("ants.diffusion=0.2")), std::invalid_argument);
    CHECK_THROWS_AS(apply_overrides(c, KeyValueFile::parse("num_steps=ten")), std::invalid_argument);

    SUBCASE("serialized configs round-trip") {
        for (auto s : kAllScenarios) {
            auto original = default_config(s, false, 42);
            original.wolf_sheep.flank_angle_deg = 12.5;
            auto copy = default_config(Scenario::ants, true, 1);
            apply_overrides(copy, config_to_key_values(original));
            CHECK(config_to_key_values(copy).entries() == config_to_key_values(original).entries());
        }
    }
    SUBCASE("invalid values are rejected with the field name") {
        auto bad = default_config(Scenario::ants, true, 1);
        bad.ants.evaporation_rate = 1.5;
        CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("ants.evaporation_rate"), std::invalid_argument);
        auto torus_ants = default_config(Scenario::ants, true, 1);
        torus_ants.world.topology = Topology::toroidal;
        CHECK_THROWS_AS(simulate(torus_ants), std::invalid_argument);
        auto empty = default_config(Scenario::flocking, true, 1);
        empty.num_agents = 0;
        CHECK_THROWS_AS(simulate(empty), std::invalid_argument);
    }
    CHECK_THROWS_AS(parse_scenario("termites"), std::invalid_argument);
}

TEST_CASE("event log CSV") {
    testing::TempDir dir("events");
    const auto path = (dir / "events.csv").string();
    write_event_log({{3, "sheep_eaten", "sheep 1 by wolf 2"}, {9, "all_sheep_eaten", ""}}, path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "step,event,detail\n3,sheep_eaten,sheep 1 by wolf 2\n9,all_sheep_eaten,\n");
}
