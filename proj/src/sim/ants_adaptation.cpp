#include <array>
#include <string>

#include "comove/simulators.hpp"
#include "motion.hpp"

namespace comove {

using sim::Mover;
using sim::PatchField;

namespace {

struct Flower {
    Point pos;
    int nectar = 0;
};

}  // namespace

SimulationRun run_ants_adaptation(const ScenarioConfig& c) {
    c.validate();
    if (c.scenario != Scenario::ants_adaptation)
        throw std::invalid_argument("run_ants_adaptation needs an ants_adaptation config");
    const auto& p = c.ants_adaptation;
    const auto& w = c.world;
    Rng rng(c.seed);

    const std::array<Point, 2> nests{Point{0.25 * w.width, 0.75 * w.height}, Point{0.75 * w.width, 0.25 * w.height}};
    std::array<PatchField, 2> chemical{PatchField(w), PatchField(w)};

    std::vector<Flower> flowers;
    flowers.reserve(p.flowers);
    while (flowers.size() < p.flowers) {
        const Point f{rng.uniform(1.0, w.width - 1.0), rng.uniform(1.0, w.height - 1.0)};
        bool clear = true;
        for (const auto& n : nests) clear = clear && sim::distance(f, n, w) > p.nest_radius + 3.0;
        if (clear) flowers.push_back({f, p.nectar_per_flower});
    }
    std::size_t flowers_left = flowers.size();

    const std::size_t n = c.num_agents;
    auto colony_of = [&](std::size_t i) { return i < p.colony_size ? 0u : 1u; };
    std::vector<Mover> ants(n);
    for (std::size_t i = 0; i < n; ++i) {
        ants[i].pos = nests[colony_of(i)];
        ants[i].heading = static_cast<double>(rng.below(360));
    }
    std::vector<std::uint8_t> carrying(n, 0);

    SimulationRun run{c, TrajectoryTensor(1, 1, w, {Point{}}), {}, {}, {}};
    std::vector<Point> positions;
    positions.reserve(n * c.num_steps);
    sim::record(positions, ants, w);
    run.carrying.insert(run.carrying.end(), carrying.begin(), carrying.end());

    auto turn_uphill = [](Mover& m, auto&& scent) {
        const double ahead = scent(0.0), right = scent(45.0), left = scent(-45.0);
        if (right > ahead || left > ahead)
            m.heading = sim::normalize_heading(m.heading + (right > left ? 45.0 : -45.0));
    };

    for (std::size_t tick = 1; tick < c.num_steps; ++tick) {
        for (std::size_t i = 0; i < n; ++i) {
            Mover& ant = ants[i];
            const auto colony = colony_of(i);
            auto& field = chemical[colony];
            const Point nest = nests[colony];
            if (!carrying[i]) {
                Flower* found = nullptr;
                for (auto& f : flowers) {
                    if (f.nectar > 0 && sim::distance(ant.pos, f.pos, w) <= p.flower_radius) {
                        found = &f;
                        break;
                    }
                }
                if (found) {
                    carrying[i] = 1;
                    ant.heading = sim::normalize_heading(ant.heading + 180.0);
                    if (--found->nectar == 0) {
                        run.events.push_back(
                            {tick, "flower_exhausted", "flower " + std::to_string(found - flowers.data())});
                        if (--flowers_left == 0) run.events.push_back({tick, "all_food_taken", ""});
                    }
                } else if (c.organized) {
                    const double here = field.at(ant.pos);
                    if (here >= p.follow_min && here < p.follow_max)
                        turn_uphill(ant, [&](double a) { return field.at(sim::offset(ant.pos, ant.heading + a, 1.0)); });
                }
            } else if (sim::distance(ant.pos, nest, w) < p.nest_radius) {
                carrying[i] = 0;
                ant.heading = sim::normalize_heading(ant.heading + 180.0);
            } else {
                if (c.organized) {
                    const auto cell = field.cell_of(ant.pos);
                    if (cell != PatchField::npos) field[cell] += p.deposit;
                }
                turn_uphill(ant, [&](double a) {
                    const Point q = sim::offset(ant.pos, ant.heading + a, 1.0);
                    const auto cell = field.cell_of(q);
                    return cell == PatchField::npos ? 0.0 : 200.0 - sim::distance(field.center(cell), nest, w);
                });
            }
            sim::wiggle(ant, p.wiggle_deg, rng);
            if (!sim::can_move(ant, 1.0, w)) ant.heading = sim::normalize_heading(ant.heading + 180.0);
            sim::forward(ant, 1.0, w);
        }

        // Opposing ants that meet scare each other off; organized ants mark the
        // spot for their own colony.
        for (std::size_t i = 0; i < p.colony_size; ++i) {
            for (std::size_t j = p.colony_size; j < n; ++j) {
                if (sim::distance(ants[i].pos, ants[j].pos, w) > p.encounter_radius) continue;
                if (c.organized) {
                    for (std::size_t k : {i, j}) {
                        auto& field = chemical[colony_of(k)];
                        const auto cell = field.cell_of(ants[k].pos);
                        if (cell != PatchField::npos) field[cell] += p.fight_deposit;
                    }
                }
                ants[i].heading = sim::bearing(ants[j].pos, ants[i].pos, w);
                ants[j].heading = sim::normalize_heading(ants[i].heading + 180.0);
                for (auto* m : {&ants[i], &ants[j]})
                    if (sim::can_move(*m, p.scare_distance, w)) sim::forward(*m, p.scare_distance, w);
                run.events.push_back({tick, "scare", "ant " + std::to_string(i) + " / ant " + std::to_string(j)});
            }
        }

        for (auto& f : chemical) {
            f.diffuse(p.diffusion_rate);
            f.scale(1.0 - p.evaporation_rate);
        }
        sim::record(positions, ants, w);
        run.carrying.insert(run.carrying.end(), carrying.begin(), carrying.end());
    }
    run.trajectory = TrajectoryTensor(n, c.num_steps, w, std::move(positions));
    return run;
}

}  // namespace comove
