#include <limits>
#include <string>

#include "comove/simulators.hpp"
#include "motion.hpp"

namespace comove {

using sim::Mover;

namespace {

Mover random_mover(const WorldSpec& w, Rng& rng) {
    Mover m;
    m.pos = {rng.uniform(0.0, w.width), rng.uniform(0.0, w.height)};
    m.heading = static_cast<double>(rng.below(360));
    return m;
}

void wander(Mover& m, double wiggle_deg, double speed, const WorldSpec& w, Rng& rng) {
    sim::wiggle(m, wiggle_deg, rng);
    if (!sim::can_move(m, speed, w)) m.heading = sim::normalize_heading(m.heading + 180.0);
    sim::forward(m, speed, w);
}

// Steps toward `target`, never past it. `bias` offsets the desired heading
// from the direct bearing.
void pursue(Mover& m, Point target, double speed, double turn_limit, const WorldSpec& w, double bias = 0.0) {
    const double dist = sim::distance(m.pos, target, w);
    if (dist == 0.0) return;
    const double desired = sim::bearing(m.pos, target, w) + (dist > 2.0 ? bias : 0.0);
    sim::turn_at_most(m, sim::heading_difference(desired, m.heading), turn_limit);
    if (!sim::can_move(m, std::min(speed, dist), w)) return;
    sim::forward(m, std::min(speed, dist), w);
}

}  // namespace

SimulationRun run_wolf_sheep(const ScenarioConfig& c) {
    c.validate();
    if (c.scenario != Scenario::wolf_sheep) throw std::invalid_argument("run_wolf_sheep needs a wolf_sheep config");
    const auto& p = c.wolf_sheep;
    const auto& w = c.world;
    Rng rng(c.seed);

    std::vector<Mover> wolves(c.num_agents);
    for (auto& m : wolves) m = random_mover(w, rng);
    std::vector<Mover> sheep(p.num_sheep);
    for (auto& m : sheep) m = random_mover(w, rng);
    std::vector<std::uint8_t> alive(p.num_sheep, 1);
    std::size_t sheep_left = p.num_sheep;

    SimulationRun run{c, TrajectoryTensor(1, 1, w, {Point{}}), {}, {}, {}};
    run.pack_target.assign(c.num_steps, std::nullopt);
    std::vector<Point> positions;
    positions.reserve(c.num_agents * c.num_steps);
    sim::record(positions, wolves, w);

    auto nearest_sheep = [&](Point from, double within) {
        std::size_t best = sheep.size();
        double best_d = within;
        for (std::size_t s = 0; s < sheep.size(); ++s) {
            if (!alive[s]) continue;
            const double d = sim::distance(from, sheep[s].pos, w);
            if (d <= best_d) {
                best_d = d;
                best = s;
            }
        }
        return best;
    };
    auto eat = [&](std::size_t s, std::size_t wolf, std::size_t tick) {
        alive[s] = 0;
        --sheep_left;
        run.events.push_back({tick, "sheep_eaten", "sheep " + std::to_string(s) + " by wolf " + std::to_string(wolf)});
        if (sheep_left == 0) run.events.push_back({tick, "all_sheep_eaten", ""});
    };

    // The alpha (wolf 0) runs straight at the prey; the others alternate
    // between the left and right wing of the attack.
    auto flank_bias = [&](std::size_t k) {
        if (k == 0) return 0.0;
        return k % 2 == 1 ? p.flank_angle_deg : -p.flank_angle_deg;
    };

    const double infinity = std::numeric_limits<double>::infinity();
    std::size_t target = sheep.size();
    for (std::size_t tick = 1; tick < c.num_steps; ++tick) {
        if (c.organized) {
            if ((target == sheep.size() || !alive[target]) && sheep_left > 0) {
                target = nearest_sheep(wolves.front().pos, infinity);
                run.events.push_back({tick, "target_selected", "sheep " + std::to_string(target)});
            }
            if (sheep_left > 0) {
                const Point goal = sheep[target].pos;
                run.pack_target[tick] = goal;
                for (std::size_t k = 0; k < wolves.size(); ++k)
                    pursue(wolves[k], goal, p.wolf_speed, p.wolf_turn_limit_deg, w, flank_bias(k));
                for (std::size_t k = 0; k < wolves.size(); ++k) {
                    if (sim::distance(wolves[k].pos, goal, w) <= p.catch_radius) {
                        eat(target, k, tick);
                        break;
                    }
                }
            } else {
                for (auto& wolf : wolves) wander(wolf, p.wolf_wiggle_deg, p.wolf_speed, w, rng);
            }
        } else {
            for (std::size_t k = 0; k < wolves.size(); ++k) {
                auto& wolf = wolves[k];
                const std::size_t prey = nearest_sheep(wolf.pos, p.wolf_vision);
                if (prey == sheep.size())
                    wander(wolf, p.wolf_wiggle_deg, p.wolf_speed, w, rng);
                else
                    pursue(wolf, sheep[prey].pos, p.wolf_speed, p.wolf_turn_limit_deg, w);
                if (const std::size_t caught = nearest_sheep(wolf.pos, p.catch_radius); caught != sheep.size())
                    eat(caught, k, tick);
            }
        }
        for (std::size_t s = 0; s < sheep.size(); ++s)
            if (alive[s]) wander(sheep[s], p.sheep_wiggle_deg, p.sheep_speed, w, rng);
        sim::record(positions, wolves, w);
    }
    run.trajectory = TrajectoryTensor(c.num_agents, c.num_steps, w, std::move(positions));
    return run;
}

}  // namespace comove
