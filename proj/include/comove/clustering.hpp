#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "comove/similarity.hpp"
#include "comove/trajectory.hpp"

namespace comove {

struct DbscanParams {
    double eps = 0.01;
    std::size_t min_pts = 5;

    void validate() const;
};

enum class PointRole { core, border, noise };

inline constexpr int kNoise = -1;

struct ClusterLabeling {
    std::vector<int> labels;  ///< cluster id per point, or kNoise
    std::vector<PointRole> roles;

    std::size_t num_clusters() const noexcept;
};

/// DBSCAN over a precomputed dissimilarity matrix.
///
/// A point's neighbourhood is every point (itself included) at dissimilarity
/// <= eps; points with at least min_pts neighbours are core. Clusters are the
/// eps-connected components of core points, numbered from 0 in order of their
/// lowest-indexed core. A border point joins the first cluster, in that order,
/// that has a core within eps of it.
ClusterLabeling dbscan(const DissimilarityMatrix& d, const DbscanParams& p);

struct SilhouetteResult {
    std::optional<double> overall;         ///< missing when fewer than two clusters
    std::vector<std::optional<double>> per_point;  ///< missing for noise points
};

/// Distance between points i and j.
using PointDistance = std::function<double(std::size_t, std::size_t)>;

/// Silhouette over clustered points only; noise is excluded everywhere and
/// members of singleton clusters score 0.
SilhouetteResult silhouette(std::size_t num_points, const PointDistance& dist, const std::vector<int>& labels);

/// Copy of `labels` in which noise points form one extra cluster, numbered
/// after the real ones.
std::vector<int> noise_as_cluster(const std::vector<int>& labels);

/// How noise points enter a labeling's silhouette.
///
/// `exclude` drops them. `own_cluster` scores them as one more group, the way
/// a labeling whose noise marker is an ordinary label would be scored; the
/// score is still missing while DBSCAN found fewer than two real clusters.
enum class NoisePolicy { exclude, own_cluster };

std::string_view to_string(NoisePolicy p) noexcept;
NoisePolicy parse_noise_policy(std::string_view text);

/// Silhouette over a full pairwise distance matrix.
SilhouetteResult silhouette(const SquareMatrix& dist, const ClusterLabeling& labels,
                            NoisePolicy policy = NoisePolicy::exclude);

/// Silhouette with Euclidean distance between the window's feature vectors.
/// The score is scale-free, so the max-normalized distances are used as is.
SilhouetteResult silhouette(const WindowSlice& w, const ClusterLabeling& labels,
                            NoisePolicy policy = NoisePolicy::exclude);

/// Silhouette measured on a precomputed dissimilarity matrix.
SilhouetteResult silhouette(const DissimilarityMatrix& d, const ClusterLabeling& labels,
                            NoisePolicy policy = NoisePolicy::exclude);

}  // namespace comove
