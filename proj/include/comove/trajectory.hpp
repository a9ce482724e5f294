#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace comove {

enum class Topology { bounded, toroidal };

std::string to_string(Topology t);
Topology parse_topology(const std::string& s);

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

/// Rectangular world anchored at the origin. Bounded worlds accept the closed
/// box [0, width] x [0, height]; toroidal worlds the half-open [0, width) x [0, height).
struct WorldSpec {
    double width = 1.0;
    double height = 1.0;
    Topology topology = Topology::bounded;

    void validate() const;
    bool contains(Point p) const noexcept;

    friend bool operator==(const WorldSpec&, const WorldSpec&) = default;
};

/// Positions of a fixed agent population over a run, indexed (step, agent).
class TrajectoryTensor {
public:
    /// Throws std::invalid_argument when the dimensions do not match or a
    /// position falls outside the world.
    TrajectoryTensor(std::size_t num_agents, std::size_t num_steps, WorldSpec world,
                     std::vector<Point> positions);

    std::size_t num_agents() const noexcept { return num_agents_; }
    std::size_t num_steps() const noexcept { return num_steps_; }
    const WorldSpec& world() const noexcept { return world_; }

    Point at(std::size_t step, std::size_t agent) const noexcept {
        return positions_[step * num_agents_ + agent];
    }
    std::span<const Point> step(std::size_t s) const noexcept {
        return {positions_.data() + s * num_agents_, num_agents_};
    }
    std::span<const Point> positions() const noexcept { return positions_; }

    friend bool operator==(const TrajectoryTensor&, const TrajectoryTensor&) = default;

private:
    std::size_t num_agents_;
    std::size_t num_steps_;
    WorldSpec world_;
    std::vector<Point> positions_;
};

/// Contents of the `.meta` companion file.
struct RunMetadata {
    std::string scenario = "external";
    bool organized = false;
    std::uint64_t seed = 0;
};

/// Reads the `step,agent,x,y` CSV at `path`. World extents come from the
/// companion `.meta` file when one exists; otherwise a bounded world covering
/// the data is assumed. Throws ParseError on malformed or ragged input.
TrajectoryTensor load_trajectory(const std::filesystem::path& path);

/// Reads the companion `.meta` file, if present.
std::optional<RunMetadata> load_metadata(const std::filesystem::path& trajectory_path);

/// Writes the trajectory CSV (coordinates with 6 fractional digits) and the
/// companion `.meta` file next to it.
void save_trajectory(const TrajectoryTensor& t, const std::filesystem::path& path,
                     const RunMetadata& meta = {});

std::filesystem::path metadata_path(const std::filesystem::path& trajectory_path);

/// Rounds a coordinate to the 6-decimal grid used by the CSV format.
double quantize_coordinate(double v) noexcept;

/// Per-agent feature vectors for steps [start, start + length): the window's
/// x coordinates followed by its y coordinates.
class WindowSlice {
public:
    WindowSlice(std::size_t start, std::size_t length, std::size_t num_agents,
                std::vector<double> features);

    std::size_t start() const noexcept { return start_; }
    std::size_t length() const noexcept { return length_; }
    std::size_t num_agents() const noexcept { return num_agents_; }
    std::size_t dimension() const noexcept { return 2 * length_; }

    std::span<const double> agent(std::size_t i) const noexcept {
        return {features_.data() + i * dimension(), dimension()};
    }

private:
    std::size_t start_;
    std::size_t length_;
    std::size_t num_agents_;
    std::vector<double> features_;
};

/// Throws std::out_of_range when start + length exceeds the run or length < 2.
WindowSlice extract_window(const TrajectoryTensor& t, std::size_t start, std::size_t length);

/// Number of window starts the detectors evaluate for a run of `num_steps`.
inline std::size_t window_count(std::size_t num_steps, std::size_t length) noexcept {
    return num_steps > length ? num_steps - length : 0;
}

}  // namespace comove
