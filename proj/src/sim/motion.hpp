#pragma once

// Shared movement and patch-field machinery for the scenario simulators.
// Headings follow the turtle-graphics convention: degrees, 0 = +y, clockwise.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "comove/rng.hpp"
#include "comove/trajectory.hpp"

namespace comove::sim {

struct Mover {
    Point pos;
    double heading = 0.0;
};

inline double deg_to_rad(double d) { return d * std::numbers::pi / 180.0; }

double normalize_heading(double h);

/// Signed smallest turn from heading `from` to heading `to`, in (-180, 180].
double heading_difference(double to, double from);

Point offset(Point p, double heading, double dist);

/// Shortest displacement from a to b (wrapping on a torus).
Point displacement(Point a, Point b, const WorldSpec& w);
double distance(Point a, Point b, const WorldSpec& w);

/// Heading that points from a toward b; 0 when they coincide.
double bearing(Point a, Point b, const WorldSpec& w);

Point wrap_into(Point p, const WorldSpec& w);
bool can_move(const Mover& m, double dist, const WorldSpec& w);

/// Moves forward; wraps on a torus, stops at the wall in a bounded world.
void forward(Mover& m, double dist, const WorldSpec& w);

/// Turns by `turn` degrees clamped to +-max_turn.
void turn_at_most(Mover& m, double turn, double max_turn);

/// rt U{0..w-1} then lt U{0..w-1}, as integer degrees.
void wiggle(Mover& m, double wiggle_deg, Rng& rng);

/// Unit-cell scalar field over the world (one cell per world unit).
class PatchField {
public:
    explicit PatchField(const WorldSpec& w);

    std::size_t cols() const noexcept { return cols_; }
    std::size_t rows() const noexcept { return rows_; }

    /// Cell containing p, or npos when p lies outside a bounded world.
    std::size_t cell_of(Point p) const noexcept;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    double& operator[](std::size_t c) noexcept { return values_[c]; }
    double operator[](std::size_t c) const noexcept { return values_[c]; }
    double at(Point p) const noexcept {
        const auto c = cell_of(p);
        return c == npos ? 0.0 : values_[c];
    }
    Point center(std::size_t c) const noexcept {
        return {static_cast<double>(c % cols_) + 0.5, static_cast<double>(c / cols_) + 0.5};
    }

    /// Each cell shares `rate` of its value equally among its 8 neighbours;
    /// shares aimed outside a bounded world stay put.
    void diffuse(double rate);
    void scale(double factor);

private:
    WorldSpec world_;
    std::size_t cols_;
    std::size_t rows_;
    std::vector<double> values_;
    std::vector<double> scratch_;
};

/// Appends one step of positions, rounded to the CSV grid.
void record(std::vector<Point>& out, const std::vector<Mover>& movers, const WorldSpec& w);

}  // namespace comove::sim
