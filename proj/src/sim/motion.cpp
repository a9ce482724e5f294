#include "motion.hpp"

#include <algorithm>

namespace comove::sim {

double normalize_heading(double h) {
    h = std::fmod(h, 360.0);
    if (h < 0.0) h += 360.0;
    return h >= 360.0 ? 0.0 : h;
}

double heading_difference(double to, double from) {
    double d = std::fmod(to - from, 360.0);
    if (d <= -180.0) d += 360.0;
    if (d > 180.0) d -= 360.0;
    return d;
}

Point offset(Point p, double heading, double dist) {
    const double r = deg_to_rad(heading);
    return {p.x + dist * std::sin(r), p.y + dist * std::cos(r)};
}

Point displacement(Point a, Point b, const WorldSpec& w) {
    double dx = b.x - a.x;
    double dy = b.y - a.y;
    if (w.topology == Topology::toroidal) {
        if (dx > w.width / 2) dx -= w.width;
        if (dx < -w.width / 2) dx += w.width;
        if (dy > w.height / 2) dy -= w.height;
        if (dy < -w.height / 2) dy += w.height;
    }
    return {dx, dy};
}

double distance(Point a, Point b, const WorldSpec& w) {
    const Point d = displacement(a, b, w);
    return std::hypot(d.x, d.y);
}

double bearing(Point a, Point b, const WorldSpec& w) {
    const Point d = displacement(a, b, w);
    if (d.x == 0.0 && d.y == 0.0) return 0.0;
    return normalize_heading(std::atan2(d.x, d.y) * 180.0 / std::numbers::pi);
}

Point wrap_into(Point p, const WorldSpec& w) {
    if (w.topology == Topology::toroidal) {
        p.x = std::fmod(p.x, w.width);
        if (p.x < 0.0) p.x += w.width;
        if (p.x >= w.width) p.x = 0.0;
        p.y = std::fmod(p.y, w.height);
        if (p.y < 0.0) p.y += w.height;
        if (p.y >= w.height) p.y = 0.0;
        return p;
    }
    return {std::clamp(p.x, 0.0, w.width), std::clamp(p.y, 0.0, w.height)};
}

bool can_move(const Mover& m, double dist, const WorldSpec& w) {
    if (w.topology == Topology::toroidal) return true;
    const Point q = offset(m.pos, m.heading, dist);
    return q.x >= 0.0 && q.x <= w.width && q.y >= 0.0 && q.y <= w.height;
}

void forward(Mover& m, double dist, const WorldSpec& w) { m.pos = wrap_into(offset(m.pos, m.heading, dist), w); }

void turn_at_most(Mover& m, double turn, double max_turn) {
    m.heading = normalize_heading(m.heading + std::clamp(turn, -max_turn, max_turn));
}

void wiggle(Mover& m, double wiggle_deg, Rng& rng) {
    const auto span = static_cast<std::uint64_t>(wiggle_deg);
    if (span == 0) return;
    const double right = static_cast<double>(rng.below(span));
    const double left = static_cast<double>(rng.below(span));
    m.heading = normalize_heading(m.heading + right - left);
}

PatchField::PatchField(const WorldSpec& w)
    : world_(w),
      cols_(static_cast<std::size_t>(std::ceil(w.width))),
      rows_(static_cast<std::size_t>(std::ceil(w.height))),
      values_(cols_ * rows_, 0.0),
      scratch_(cols_ * rows_, 0.0) {}

std::size_t PatchField::cell_of(Point p) const noexcept {
    double x = p.x, y = p.y;
    if (world_.topology == Topology::toroidal) {
        const Point q = wrap_into(p, world_);
        x = q.x;
        y = q.y;
    } else if (x < 0.0 || y < 0.0 || x > world_.width || y > world_.height) {
        return npos;
    }
    const auto cx = std::min(cols_ - 1, static_cast<std::size_t>(x));
    const auto cy = std::min(rows_ - 1, static_cast<std::size_t>(y));
    return cy * cols_ + cx;
}

void PatchField::diffuse(double rate) {
    const bool torus = world_.topology == Topology::toroidal;
    std::fill(scratch_.begin(), scratch_.end(), 0.0);
    const auto cols = static_cast<long>(cols_);
    const auto rows = static_cast<long>(rows_);
    for (long y = 0; y < rows; ++y) {
        for (long x = 0; x < cols; ++x) {
            const double v = values_[static_cast<std::size_t>(y * cols + x)];
            if (v == 0.0) continue;
            const double share = v * rate / 8.0;
            double kept = v - v * rate;
            for (long dy = -1; dy <= 1; ++dy) {
                for (long dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    long nx = x + dx, ny = y + dy;
                    if (torus) {
                        nx = (nx + cols) % cols;
                        ny = (ny + rows) % rows;
                    } else if (nx < 0 || ny < 0 || nx >= cols || ny >= rows) {
                        kept += share;
                        continue;
                    }
                    scratch_[static_cast<std::size_t>(ny * cols + nx)] += share;
                }
            }
            scratch_[static_cast<std::size_t>(y * cols + x)] += kept;
        }
    }
    values_.swap(scratch_);
}

void PatchField::scale(double factor) {
    for (auto& v : values_) v *= factor;
}

void record(std::vector<Point>& out, const std::vector<Mover>& movers, const WorldSpec& w) {
    for (const auto& m : movers) {
        Point p{quantize_coordinate(m.pos.x), quantize_coordinate(m.pos.y)};
        if (w.topology == Topology::toroidal) {
            if (p.x >= w.width) p.x = 0.0;
            if (p.y >= w.height) p.y = 0.0;
        }
        out.push_back(p);
    }
}

}  // namespace comove::sim
