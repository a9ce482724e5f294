#include <cmath>
#include <limits>

#include "comove/simulators.hpp"
#include "motion.hpp"

namespace comove {

using sim::Mover;

namespace {

double to_heading(double sum_x, double sum_y) {
    return sim::normalize_heading(std::atan2(sum_x, sum_y) * 180.0 / std::numbers::pi);
}

}  // namespace

SimulationRun run_flocking(const ScenarioConfig& c) {
    c.validate();
    if (c.scenario != Scenario::flocking) throw std::invalid_argument("run_flocking needs a flocking config");
    const auto& p = c.flocking;
    const auto& w = c.world;
    Rng rng(c.seed);

    std::vector<Mover> birds(c.num_agents);
    for (auto& b : birds) {
        b.pos = {rng.uniform(0.0, w.width), rng.uniform(0.0, w.height)};
        b.heading = static_cast<double>(rng.below(360));
    }

    SimulationRun run{c, TrajectoryTensor(1, 1, w, {Point{}}), {}, {}, {}};
    std::vector<Point> positions;
    positions.reserve(c.num_agents * c.num_steps);
    sim::record(positions, birds, w);

    for (std::size_t tick = 1; tick < c.num_steps; ++tick) {
        if (c.organized) {
            // Headings are updated in agent order against the live state, as in
            // the sequential turtle model.
            for (std::size_t i = 0; i < birds.size(); ++i) {
                Mover& b = birds[i];
                std::size_t nearest = birds.size();
                double nearest_d = std::numeric_limits<double>::infinity();
                double hx = 0, hy = 0, tx = 0, ty = 0;
                std::size_t mates = 0;
                for (std::size_t j = 0; j < birds.size(); ++j) {
                    if (j == i) continue;
                    const double d = sim::distance(b.pos, birds[j].pos, w);
                    if (d > p.vision) continue;
                    ++mates;
                    const double r = sim::deg_to_rad(birds[j].heading);
                    hx += std::sin(r);
                    hy += std::cos(r);
                    const double t = sim::deg_to_rad(sim::bearing(b.pos, birds[j].pos, w));
                    tx += std::sin(t);
                    ty += std::cos(t);
                    if (d < nearest_d) {
                        nearest_d = d;
                        nearest = j;
                    }
                }
                if (mates == 0) continue;
                if (nearest_d < p.min_separation) {
                    const double away = sim::heading_difference(b.heading, birds[nearest].heading);
                    sim::turn_at_most(b, away, p.max_separate_turn_deg);
                } else {
                    if (hx != 0.0 || hy != 0.0)
                        sim::turn_at_most(b, sim::heading_difference(to_heading(hx, hy), b.heading),
                                          p.max_align_turn_deg);
                    if (tx != 0.0 || ty != 0.0)
                        sim::turn_at_most(b, sim::heading_difference(to_heading(tx, ty), b.heading),
                                          p.max_cohere_turn_deg);
                }
            }
        } else {
            const auto span = static_cast<std::uint64_t>(2.0 * p.jitter_deg) + 1;
            for (auto& b : birds)
                b.heading = sim::normalize_heading(b.heading + static_cast<double>(rng.below(span)) - p.jitter_deg);
        }
        for (auto& b : birds) sim::forward(b, p.speed, w);
        sim::record(positions, birds, w);
    }
    run.trajectory = TrajectoryTensor(c.num_agents, c.num_steps, w, std::move(positions));
    return run;
}

}  // namespace comove
