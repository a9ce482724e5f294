#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "comove/keyvalue.hpp"
#include "comove/trajectory.hpp"

namespace comove {

enum class Scenario { ants, wolf_sheep, flocking, ants_adaptation };

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& s);
inline constexpr Scenario kAllScenarios[] = {Scenario::ants, Scenario::wolf_sheep, Scenario::flocking,
                                             Scenario::ants_adaptation};

/// Ant foraging with a shared pheromone field.
struct AntsParams {
    double diffusion_rate = 0.5;     ///< fraction of chemical shared with neighbours per tick
    double evaporation_rate = 0.1;   ///< fraction of chemical lost per tick
    double deposit = 60.0;           ///< chemical dropped per tick by a loaded ant
    double follow_min = 0.05;        ///< chemical band in which searchers turn uphill
    double follow_max = 2.0;
    std::size_t food_piles = 3;
    double food_radius = 5.0;
    int food_per_patch_max = 2;      ///< each food patch holds 1..max units
    double nest_radius = 5.0;
    double wiggle_deg = 40.0;        ///< per-tick turn: +U[0,w) - U[0,w)
    std::size_t departure_interval = 1;  ///< ant i leaves the nest at tick i * interval
};

/// Wolves hunting a sheep population that is not part of the trajectory.
struct WolfSheepParams {
    std::size_t num_sheep = 60;
    double wolf_speed = 1.0;
    double sheep_speed = 1.0;
    double sheep_wiggle_deg = 50.0;
    double wolf_wiggle_deg = 50.0;   ///< wandering turn when not chasing
    double wolf_turn_limit_deg = 180.0;  ///< maximum turn toward a chased sheep per tick
    double flank_angle_deg = 30.0;   ///< pack wings approach this far off the direct bearing
    double wolf_vision = 1.0;        ///< independent hunters only see sheep this close
    double catch_radius = 0.5;
};

/// Boids on a torus.
struct FlockingParams {
    double vision = 3.0;
    double min_separation = 1.0;
    double max_align_turn_deg = 5.0;
    double max_cohere_turn_deg = 3.0;
    double max_separate_turn_deg = 1.5;
    double speed = 1.0;
    double jitter_deg = 15.0;        ///< roaming turn when the flocking rules are off
};

/// Two ant colonies sharing a flower field.
struct AntsAdaptationParams {
    std::size_t colony_size = 10;
    std::size_t flowers = 40;
    int nectar_per_flower = 6;
    double flower_radius = 1.0;
    double diffusion_rate = 0.5;
    double evaporation_rate = 0.1;
    double deposit = 60.0;
    double follow_min = 0.05;
    double follow_max = 2.0;
    double nest_radius = 2.0;
    double wiggle_deg = 40.0;
    double encounter_radius = 1.0;   ///< opposing ants this close scare each other off
    double scare_distance = 2.0;
    double fight_deposit = 60.0;     ///< chemical each organized ant leaves where it was scared
};

struct ScenarioConfig {
    Scenario scenario = Scenario::ants;
    bool organized = true;
    std::size_t num_agents = 150;
    std::size_t num_steps = 500;
    std::uint64_t seed = 1;
    WorldSpec world{71.0, 71.0, Topology::bounded};
    AntsParams ants;
    WolfSheepParams wolf_sheep;
    FlockingParams flocking;
    AntsAdaptationParams ants_adaptation;

    /// Throws std::invalid_argument with a message naming the bad field.
    void validate() const;
};

/// Table defaults for a scenario: agent counts, 500 steps, world size.
ScenarioConfig default_config(Scenario s, bool organized, std::uint64_t seed);

/// Applies `key=value` overrides (keys as written by config_to_key_values).
void apply_overrides(ScenarioConfig& c, const KeyValueFile& kv);
KeyValueFile config_to_key_values(const ScenarioConfig& c);

struct SimEvent {
    std::size_t step = 0;
    std::string event;
    std::string detail;
    friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct SimulationRun {
    ScenarioConfig config;
    TrajectoryTensor trajectory;
    std::vector<SimEvent> events;
    /// Step-major flags, 1 while an agent carries food (ant scenarios only).
    std::vector<std::uint8_t> carrying;
    /// Position of the pack's designated prey at each step (organized wolves only).
    std::vector<std::optional<Point>> pack_target;
};

SimulationRun run_ants(const ScenarioConfig& c);
SimulationRun run_wolf_sheep(const ScenarioConfig& c);
SimulationRun run_flocking(const ScenarioConfig& c);
SimulationRun run_ants_adaptation(const ScenarioConfig& c);

/// Dispatches on c.scenario.
SimulationRun simulate(const ScenarioConfig& c);

/// Event log CSV: `step,event,detail`.
void write_event_log(const std::vector<SimEvent>& events, const std::string& path);

}  // namespace comove
