#pragma once

#include <cstddef>
#include <utility>

#include "comove/series.hpp"
#include "comove/trajectory.hpp"

namespace comove {

enum class Axis { x, y };

/// Equal-width bins over [min, max]; the top edge belongs to the last bin.
struct HistogramSpec {
    std::size_t num_bins = 32;
    double min = 0.0;
    double max = 1.0;

    void validate() const;
    std::size_t bin_of(double v) const noexcept;

    /// One axis of the world: [0, extent].
    static HistogramSpec for_axis(const WorldSpec& world, Axis axis, std::size_t num_bins = 32);
};

/// Shannon entropy (natural log) of the histogram of every agent's `axis`
/// coordinate over steps [start, start + length).
double coordinate_entropy_raw(const TrajectoryTensor& t, std::size_t start, std::size_t length, Axis axis,
                              const HistogramSpec& spec);

/// coordinate_entropy_raw divided by ln(num_bins), in [0, 1].
double coordinate_entropy(const TrajectoryTensor& t, std::size_t start, std::size_t length, Axis axis,
                          const HistogramSpec& spec);

/// Normalized coordinate entropy for every window start, x then y. Bins span
/// the world extent on each axis.
std::pair<MetricSeries, MetricSeries> baseline_series(const TrajectoryTensor& t, std::size_t length,
                                                      std::size_t num_bins = 32);

}  // namespace comove
