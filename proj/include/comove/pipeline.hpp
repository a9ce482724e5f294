#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "comove/clustering.hpp"
#include "comove/series.hpp"
#include "comove/trajectory.hpp"

namespace comove {

/// Space in which the silhouette measures distance.
enum class SilhouetteSpace { features, msim };

/// Coordinate frame of the window vectors fed to the similarity step: as
/// stored (origin at the world corner), relative to the world centre, or
/// relative to the mean position of all agents over the window.
enum class CoordinateFrame { raw, world_centered, window_centroid };

std::string_view to_string(CoordinateFrame f) noexcept;
CoordinateFrame parse_coordinate_frame(std::string_view text);
std::string_view to_string(SilhouetteSpace s) noexcept;
SilhouetteSpace parse_silhouette_space(std::string_view text);

struct DetectorOptions {
    DbscanParams dbscan;
    double tau = 0.01;
    SilhouetteSpace silhouette_space = SilhouetteSpace::features;
    NoisePolicy noise = NoisePolicy::own_cluster;
    CoordinateFrame frame = CoordinateFrame::world_centered;
    std::size_t histogram_bins = 32;
    std::size_t smooth_span = 11;
    std::size_t threads = 0;  ///< 0: resolve from hardware and COMOVE_THREADS
    std::optional<std::filesystem::path> dump_dir;  ///< per-window M_sim and label dumps
};

/// The window's feature vectors expressed in `frame`.
WindowSlice framed_window(const TrajectoryTensor& t, std::size_t start, std::size_t length, CoordinateFrame frame);

/// Worker count: hardware concurrency, capped by COMOVE_THREADS when set.
std::size_t resolve_thread_count(std::size_t requested = 0);

/// Runs body(k) for k in [0, n) on up to `threads` workers. Exceptions from
/// any worker are rethrown on the calling thread.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

/// Silhouette of the DBSCAN clustering of each window; missing when fewer
/// than two clusters form. Values only; call smooth() for the rest.
MetricSeries run_silhouette_pipeline(const TrajectoryTensor& t, std::size_t window, const DetectorOptions& opts = {});

/// Normalized network entropy of the tau-thresholded M_sim graph per window,
/// or the matrix-sum variant when `literal` is set. Requires >= 3 agents.
MetricSeries run_entropy_pipeline(const TrajectoryTensor& t, std::size_t window, const DetectorOptions& opts = {},
                                  bool literal = false);

/// Runs every requested method for one window length, sharing the per-window
/// similarity work, and smooths each series. Baseline methods are produced as
/// a pair (x and y) when either is requested.
std::vector<MetricSeries> run_detectors(const TrajectoryTensor& t, std::size_t window,
                                        const std::vector<Method>& methods, const DetectorOptions& opts = {});

void write_matrix_csv(const SquareMatrix& m, const std::filesystem::path& path);
void write_labels_csv(const ClusterLabeling& labels, const std::filesystem::path& path);

}  // namespace comove
