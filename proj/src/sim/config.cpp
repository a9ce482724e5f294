#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>

#include "comove/simulators.hpp"

namespace comove {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::ants: return "ants";
        case Scenario::wolf_sheep: return "wolf_sheep";
        case Scenario::flocking: return "flocking";
        case Scenario::ants_adaptation: return "ants_adaptation";
    }
    return "unknown";
}

Scenario parse_scenario(const std::string& s) {
    for (auto sc : kAllScenarios)
        if (to_string(sc) == s) return sc;
    throw std::invalid_argument("unknown scenario '" + s +
                                "' (expected ants, wolf_sheep, flocking or ants_adaptation)");
}

ScenarioConfig default_config(Scenario s, bool organized, std::uint64_t seed) {
    ScenarioConfig c;
    c.scenario = s;
    c.organized = organized;
    c.seed = seed;
    c.num_steps = 500;
    switch (s) {
        case Scenario::ants:
            c.num_agents = 150;
            c.world = {71.0, 71.0, Topology::bounded};
            break;
        case Scenario::wolf_sheep:
            c.num_agents = 15;
            c.world = {51.0, 51.0, Topology::bounded};
            break;
        case Scenario::flocking:
            c.num_agents = 300;
            c.world = {71.0, 51.0, Topology::toroidal};
            break;
        case Scenario::ants_adaptation:
            c.num_agents = 2 * c.ants_adaptation.colony_size;
            c.world = {61.0, 61.0, Topology::bounded};
            break;
    }
    return c;
}

namespace {

// Field visitor: f(key, value&) over every scenario parameter.
template <class Config, class F>
void visit_fields(Config& c, F&& f) {
    f("num_agents", c.num_agents);
    f("num_steps", c.num_steps);
    f("seed", c.seed);
    f("world_width", c.world.width);
    f("world_height", c.world.height);

    f("ants.diffusion_rate", c.ants.diffusion_rate);
    f("ants.evaporation_rate", c.ants.evaporation_rate);
    f("ants.deposit", c.ants.deposit);
    f("ants.follow_min", c.ants.follow_min);
    f("ants.follow_max", c.ants.follow_max);
    f("ants.food_piles", c.ants.food_piles);
    f("ants.food_radius", c.ants.food_radius);
    f("ants.food_per_patch_max", c.ants.food_per_patch_max);
    f("ants.nest_radius", c.ants.nest_radius);
    f("ants.wiggle_deg", c.ants.wiggle_deg);
    f("ants.departure_interval", c.ants.departure_interval);

    f("wolf_sheep.num_sheep", c.wolf_sheep.num_sheep);
    f("wolf_sheep.wolf_speed", c.wolf_sheep.wolf_speed);
    f("wolf_sheep.sheep_speed", c.wolf_sheep.sheep_speed);
    f("wolf_sheep.sheep_wiggle_deg", c.wolf_sheep.sheep_wiggle_deg);
    f("wolf_sheep.wolf_wiggle_deg", c.wolf_sheep.wolf_wiggle_deg);
    f("wolf_sheep.wolf_turn_limit_deg", c.wolf_sheep.wolf_turn_limit_deg);
    f("wolf_sheep.flank_angle_deg", c.wolf_sheep.flank_angle_deg);
    f("wolf_sheep.wolf_vision", c.wolf_sheep.wolf_vision);
    f("wolf_sheep.catch_radius", c.wolf_sheep.catch_radius);

    f("flocking.vision", c.flocking.vision);
    f("flocking.min_separation", c.flocking.min_separation);
    f("flocking.max_align_turn_deg", c.flocking.max_align_turn_deg);
    f("flocking.max_cohere_turn_deg", c.flocking.max_cohere_turn_deg);
    f("flocking.max_separate_turn_deg", c.flocking.max_separate_turn_deg);
    f("flocking.speed", c.flocking.speed);
    f("flocking.jitter_deg", c.flocking.jitter_deg);

    f("ants_adaptation.colony_size", c.ants_adaptation.colony_size);
    f("ants_adaptation.flowers", c.ants_adaptation.flowers);
    f("ants_adaptation.nectar_per_flower", c.ants_adaptation.nectar_per_flower);
    f("ants_adaptation.flower_radius", c.ants_adaptation.flower_radius);
    f("ants_adaptation.diffusion_rate", c.ants_adaptation.diffusion_rate);
    f("ants_adaptation.evaporation_rate", c.ants_adaptation.evaporation_rate);
    f("ants_adaptation.deposit", c.ants_adaptation.deposit);
    f("ants_adaptation.follow_min", c.ants_adaptation.follow_min);
    f("ants_adaptation.follow_max", c.ants_adaptation.follow_max);
    f("ants_adaptation.nest_radius", c.ants_adaptation.nest_radius);
    f("ants_adaptation.wiggle_deg", c.ants_adaptation.wiggle_deg);
    f("ants_adaptation.encounter_radius", c.ants_adaptation.encounter_radius);
    f("ants_adaptation.scare_distance", c.ants_adaptation.scare_distance);
    f("ants_adaptation.fight_deposit", c.ants_adaptation.fight_deposit);
}

template <class T>
void assign(T& field, const std::string& key, const std::string& text) {
    if constexpr (std::is_same_v<T, double>) {
        field = parse_double(text, key);
    } else if constexpr (std::is_same_v<T, int>) {
        field = static_cast<int>(parse_int(text, key));
    } else {
        field = static_cast<T>(parse_uint(text, key));
    }
}

template <class T>
std::string render(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, ptr);
    } else {
        return std::to_string(v);
    }
}

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument("invalid scenario config: " + message);
}

void require_rate(double v, const std::string& name) {
    require(v >= 0.0 && v <= 1.0, name + " must lie in [0, 1]");
}

}  // namespace

void apply_overrides(ScenarioConfig& c, const KeyValueFile& kv) {
    if (kv.has("scenario")) c.scenario = parse_scenario(kv.get("scenario"));
    if (kv.has("organized")) c.organized = kv.get_bool("organized");
    if (kv.has("topology")) c.world.topology = parse_topology(kv.get("topology"));
    std::size_t known = kv.has("scenario") + kv.has("organized") + kv.has("topology");
    visit_fields(c, [&](const char* key, auto& field) {
        if (kv.has(key)) {
            assign(field, key, kv.get(key));
            ++known;
        }
    });
    if (known != kv.entries().size()) {
        for (const auto& [key, value] : kv.entries()) {
            bool found = key == "scenario" || key == "organized" || key == "topology";
            visit_fields(c, [&](const char* k, auto&) { found = found || key == k; });
            if (!found) throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
}

KeyValueFile config_to_key_values(const ScenarioConfig& c) {
    KeyValueFile kv;
    kv.set("scenario", to_string(c.scenario));
    kv.set("organized", c.organized ? "true" : "false");
    kv.set("topology", to_string(c.world.topology));
    visit_fields(c, [&](const char* key, const auto& field) { kv.set(key, render(field)); });
    return kv;
}

void ScenarioConfig::validate() const {
    require(num_agents > 0, "num_agents must be positive");
    require(num_steps > 0, "num_steps must be positive");
    require(world.width > 0.0 && world.height > 0.0, "world extents must be positive");
    switch (scenario) {
        case Scenario::ants:
            require(world.topology == Topology::bounded, "ants world must be bounded");
            require_rate(ants.diffusion_rate, "ants.diffusion_rate");
            require_rate(ants.evaporation_rate, "ants.evaporation_rate");
            require(ants.deposit >= 0.0, "ants.deposit must be non-negative");
            require(ants.follow_min < ants.follow_max, "ants.follow_min must be below ants.follow_max");
            require(ants.food_piles <= 3, "ants.food_piles must be 0..3");
            require(ants.food_radius > 0.0, "ants.food_radius must be positive");
            require(ants.food_per_patch_max >= 1, "ants.food_per_patch_max must be at least 1");
            require(ants.nest_radius > 0.0, "ants.nest_radius must be positive");
            require(ants.wiggle_deg >= 0.0 && ants.wiggle_deg <= 180.0, "ants.wiggle_deg must be 0..180");
            break;
        case Scenario::wolf_sheep:
            require(world.topology == Topology::bounded, "wolf_sheep world must be bounded");
            require(wolf_sheep.wolf_speed > 0.0 && wolf_sheep.sheep_speed >= 0.0, "speeds must be positive");
            require(wolf_sheep.wolf_turn_limit_deg > 0.0 && wolf_sheep.wolf_turn_limit_deg <= 180.0,
                    "wolf_sheep.wolf_turn_limit_deg must be in (0, 180]");
            require(wolf_sheep.flank_angle_deg >= 0.0 && wolf_sheep.flank_angle_deg < 90.0,
                    "wolf_sheep.flank_angle_deg must be in [0, 90)");
            require(wolf_sheep.wolf_vision >= 0.0, "wolf_sheep.wolf_vision must be non-negative");
            require(wolf_sheep.catch_radius > 0.0, "wolf_sheep.catch_radius must be positive");
            require(wolf_sheep.sheep_wiggle_deg >= 0.0 && wolf_sheep.wolf_wiggle_deg >= 0.0,
                    "wiggle angles must be non-negative");
            break;
        case Scenario::flocking:
            require(world.topology == Topology::toroidal, "flocking world must be toroidal");
            require(flocking.vision > 0.0, "flocking.vision must be positive");
            require(flocking.min_separation >= 0.0, "flocking.min_separation must be non-negative");
            require(flocking.max_align_turn_deg >= 0.0 && flocking.max_cohere_turn_deg >= 0.0 &&
                        flocking.max_separate_turn_deg >= 0.0,
                    "flocking turn limits must be non-negative");
            require(flocking.speed > 0.0, "flocking.speed must be positive");
            require(flocking.jitter_deg >= 0.0 && flocking.jitter_deg <= 180.0, "flocking.jitter_deg must be 0..180");
            break;
        case Scenario::ants_adaptation:
            require(world.topology == Topology::bounded, "ants_adaptation world must be bounded");
            require(num_agents == 2 * ants_adaptation.colony_size,
                    "num_agents must equal 2 * ants_adaptation.colony_size");
            require(ants_adaptation.nectar_per_flower >= 1, "ants_adaptation.nectar_per_flower must be at least 1");
            require(ants_adaptation.flower_radius > 0.0, "ants_adaptation.flower_radius must be positive");
            require_rate(ants_adaptation.diffusion_rate, "ants_adaptation.diffusion_rate");
            require_rate(ants_adaptation.evaporation_rate, "ants_adaptation.evaporation_rate");
            require(ants_adaptation.follow_min < ants_adaptation.follow_max,
                    "ants_adaptation.follow_min must be below ants_adaptation.follow_max");
            require(ants_adaptation.wiggle_deg >= 0.0 && ants_adaptation.wiggle_deg <= 180.0,
                    "ants_adaptation.wiggle_deg must be 0..180");
            break;
    }
}

SimulationRun simulate(const ScenarioConfig& c) {
    switch (c.scenario) {
        case Scenario::ants: return run_ants(c);
        case Scenario::wolf_sheep: return run_wolf_sheep(c);
        case Scenario::flocking: return run_flocking(c);
        case Scenario::ants_adaptation: return run_ants_adaptation(c);
    }
    throw std::invalid_argument("unknown scenario");
}

void write_event_log(const std::vector<SimEvent>& events, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << "step,event,detail\n";
    for (const auto& e : events) f << e.step << ',' << e.event << ',' << e.detail << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace comove
