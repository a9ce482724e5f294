#include "comove/baseline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace comove {

void HistogramSpec::validate() const {
    if (num_bins < 2) throw std::invalid_argument("histogram needs at least 2 bins");
    if (!(max > min)) throw std::invalid_argument("histogram range must have max > min");
}

std::size_t HistogramSpec::bin_of(double v) const noexcept {
    const double rel = (v - min) / (max - min);
    if (!(rel > 0.0)) return 0;
    const auto b = static_cast<std::size_t>(rel * static_cast<double>(num_bins));
    return b >= num_bins ? num_bins - 1 : b;
}

HistogramSpec HistogramSpec::for_axis(const WorldSpec& world, Axis axis, std::size_t num_bins) {
    return {num_bins, 0.0, axis == Axis::x ? world.width : world.height};
}

double coordinate_entropy_raw(const TrajectoryTensor& t, std::size_t start, std::size_t length, Axis axis,
                              const HistogramSpec& spec) {
    spec.validate();
    if (length == 0 || start > t.num_steps() || length > t.num_steps() - start)
        throw std::out_of_range("histogram window exceeds the run");
    std::vector<std::size_t> counts(spec.num_bins, 0);
    for (std::size_t s = start; s < start + length; ++s)
        for (const Point& p : t.step(s)) ++counts[spec.bin_of(axis == Axis::x ? p.x : p.y)];
    const double total = static_cast<double>(length * t.num_agents());
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log(p);
    }
    return h;
}

double coordinate_entropy(const TrajectoryTensor& t, std::size_t start, std::size_t length, Axis axis,
                          const HistogramSpec& spec) {
    return coordinate_entropy_raw(t, start, length, axis, spec) / std::log(static_cast<double>(spec.num_bins));
}

std::pair<MetricSeries, MetricSeries> baseline_series(const TrajectoryTensor& t, std::size_t length,
                                                      std::size_t num_bins) {
    if (length == 0 || length >= t.num_steps())
        throw std::out_of_range("window length " + std::to_string(length) + " must be below the run length " +
                                std::to_string(t.num_steps()));
    const auto spec_x = HistogramSpec::for_axis(t.world(), Axis::x, num_bins);
    const auto spec_y = HistogramSpec::for_axis(t.world(), Axis::y, num_bins);
    MetricSeries xs{Method::baseline_x, length, {}, {}, {}};
    MetricSeries ys{Method::baseline_y, length, {}, {}, {}};
    const std::size_t n = window_count(t.num_steps(), length);
    xs.values.reserve(n);
    ys.values.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        xs.values.emplace_back(coordinate_entropy(t, k, length, Axis::x, spec_x));
        ys.values.emplace_back(coordinate_entropy(t, k, length, Axis::y, spec_y));
    }
    return {std::move(xs), std::move(ys)};
}

}  // namespace comove
