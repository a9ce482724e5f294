#include <array>
#include <string>

#include "comove/simulators.hpp"
#include "motion.hpp"

namespace comove {

using sim::Mover;
using sim::PatchField;

namespace {

struct AntWorld {
    const ScenarioConfig& cfg;
    PatchField chemical;
    PatchField food;
    std::vector<int> pile_of_cell;
    std::array<int, 3> pile_food{};
    Point nest;
    std::size_t piles_left = 0;

    explicit AntWorld(const ScenarioConfig& c, Rng& rng)
        : cfg(c), chemical(c.world), food(c.world), pile_of_cell(chemical.cols() * chemical.rows(), -1) {
        const double cx = c.world.width / 2, cy = c.world.height / 2;
        const double rx = c.world.width / 2, ry = c.world.height / 2;
        nest = {cx, cy};
        const std::array<Point, 3> piles{Point{cx + 0.6 * rx, cy}, Point{cx - 0.6 * rx, cy - 0.6 * ry},
                                         Point{cx - 0.8 * rx, cy + 0.8 * ry}};
        for (std::size_t cell = 0; cell < pile_of_cell.size(); ++cell) {
            const Point p = food.center(cell);
            for (std::size_t k = 0; k < c.ants.food_piles; ++k) {
                if (sim::distance(p, piles[k], c.world) < c.ants.food_radius) {
                    const int amount = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(c.ants.food_per_patch_max)));
                    food[cell] = amount;
                    pile_of_cell[cell] = static_cast<int>(k);
                    pile_food[k] += amount;
                    break;
                }
            }
        }
        for (std::size_t k = 0; k < c.ants.food_piles; ++k) piles_left += pile_food[k] > 0;
    }

    bool in_nest(Point p) const { return sim::distance(p, nest, cfg.world) < cfg.ants.nest_radius; }

    double nest_scent_at(const Mover& m, double angle) const {
        const Point q = sim::offset(m.pos, m.heading + angle, 1.0);
        const auto cell = chemical.cell_of(q);
        if (cell == PatchField::npos) return 0.0;
        return 200.0 - sim::distance(chemical.center(cell), nest, cfg.world);
    }

    double chemical_at(const Mover& m, double angle) const {
        return chemical.at(sim::offset(m.pos, m.heading + angle, 1.0));
    }
};

template <class Scent>
void turn_uphill(Mover& m, Scent&& scent) {
    const double ahead = scent(0.0);
    const double right = scent(45.0);
    const double left = scent(-45.0);
    if (right > ahead || left > ahead) m.heading = sim::normalize_heading(m.heading + (right > left ? 45.0 : -45.0));
}

}  // namespace

SimulationRun run_ants(const ScenarioConfig& c) {
    c.validate();
    if (c.scenario != Scenario::ants) throw std::invalid_argument("run_ants needs an ants config");
    Rng rng(c.seed);
    AntWorld world(c, rng);
    const auto& p = c.ants;

    std::vector<Mover> ants(c.num_agents);
    for (auto& a : ants) {
        a.pos = world.nest;
        a.heading = static_cast<double>(rng.below(360));
    }
    std::vector<std::uint8_t> carrying(c.num_agents, 0);

    SimulationRun run{c, TrajectoryTensor(1, 1, c.world, {Point{}}), {}, {}, {}};
    std::vector<Point> positions;
    positions.reserve(c.num_agents * c.num_steps);
    run.carrying.reserve(c.num_agents * c.num_steps);
    sim::record(positions, ants, c.world);
    run.carrying.insert(run.carrying.end(), carrying.begin(), carrying.end());

    std::size_t delivered = 0;
    for (std::size_t tick = 1; tick < c.num_steps; ++tick) {
        for (std::size_t i = 0; i < ants.size(); ++i) {
            if (i * p.departure_interval >= tick) continue;
            Mover& ant = ants[i];
            if (!carrying[i]) {
                const auto cell = world.food.cell_of(ant.pos);
                if (cell != PatchField::npos && world.food[cell] > 0) {
                    world.food[cell] -= 1;
                    carrying[i] = 1;
                    ant.heading = sim::normalize_heading(ant.heading + 180.0);
                    const int pile = world.pile_of_cell[cell];
                    if (--world.pile_food[static_cast<std::size_t>(pile)] == 0) {
                        run.events.push_back({tick, "food_exhausted", "pile " + std::to_string(pile)});
                        if (--world.piles_left == 0) run.events.push_back({tick, "all_food_taken", ""});
                    }
                } else if (c.organized) {
                    const double here = world.chemical.at(ant.pos);
                    if (here >= p.follow_min && here < p.follow_max)
                        turn_uphill(ant, [&](double a) { return world.chemical_at(ant, a); });
                }
            } else if (world.in_nest(ant.pos)) {
                carrying[i] = 0;
                ++delivered;
                ant.heading = sim::normalize_heading(ant.heading + 180.0);
            } else {
                if (c.organized) {
                    const auto cell = world.chemical.cell_of(ant.pos);
                    if (cell != PatchField::npos) world.chemical[cell] += p.deposit;
                }
                turn_uphill(ant, [&](double a) { return world.nest_scent_at(ant, a); });
            }
            sim::wiggle(ant, p.wiggle_deg, rng);
            if (!sim::can_move(ant, 1.0, c.world)) ant.heading = sim::normalize_heading(ant.heading + 180.0);
            sim::forward(ant, 1.0, c.world);
        }
        world.chemical.diffuse(p.diffusion_rate);
        world.chemical.scale(1.0 - p.evaporation_rate);
        sim::record(positions, ants, c.world);
        run.carrying.insert(run.carrying.end(), carrying.begin(), carrying.end());
    }
    run.events.push_back({c.num_steps - 1, "food_delivered", std::to_string(delivered)});
    run.trajectory = TrajectoryTensor(c.num_agents, c.num_steps, c.world, std::move(positions));
    return run;
}

}  // namespace comove
