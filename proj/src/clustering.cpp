#include "comove/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace comove {

void DbscanParams::validate() const {
    if (!(eps > 0.0)) throw std::invalid_argument("DBSCAN eps must be positive");
    if (min_pts < 1) throw std::invalid_argument("DBSCAN min_pts must be at least 1");
}

std::size_t ClusterLabeling::num_clusters() const noexcept {
    int top = kNoise;
    for (int l : labels) top = std::max(top, l);
    return static_cast<std::size_t>(top + 1);
}

ClusterLabeling dbscan(const DissimilarityMatrix& d, const DbscanParams& p) {
    p.validate();
    const std::size_t n = d.size();

    std::vector<std::vector<std::size_t>> neighbours(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (d(i, j) <= p.eps) neighbours[i].push_back(j);

    ClusterLabeling out;
    out.labels.assign(n, kNoise);
    out.roles.assign(n, PointRole::noise);
    for (std::size_t i = 0; i < n; ++i)
        if (neighbours[i].size() >= p.min_pts) out.roles[i] = PointRole::core;

    int next_id = 0;
    std::vector<std::size_t> frontier;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (out.roles[seed] != PointRole::core || out.labels[seed] != kNoise) continue;
        const int id = next_id++;
        out.labels[seed] = id;
        frontier.assign(1, seed);
        // Every core reachable from seed is expanded before the next seed is
        // considered, so borders go to the cluster with the lowest-indexed core.
        while (!frontier.empty()) {
            const std::size_t q = frontier.back();
            frontier.pop_back();
            for (std::size_t r : neighbours[q]) {
                if (out.labels[r] != kNoise) continue;
                out.labels[r] = id;
                if (out.roles[r] == PointRole::core)
                    frontier.push_back(r);
                else
                    out.roles[r] = PointRole::border;
            }
        }
    }
    return out;
}

SilhouetteResult silhouette(std::size_t num_points, const PointDistance& dist, const std::vector<int>& labels) {
    if (labels.size() != num_points) throw std::invalid_argument("label count does not match point count");
    SilhouetteResult out;
    out.per_point.assign(num_points, std::nullopt);

    int num_clusters = 0;
    for (int l : labels) num_clusters = std::max(num_clusters, l + 1);
    std::vector<std::size_t> sizes(static_cast<std::size_t>(num_clusters), 0);
    for (int l : labels)
        if (l != kNoise) ++sizes[static_cast<std::size_t>(l)];
    const auto populated = std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; });
    if (populated < 2) return out;

    std::vector<double> sums(sizes.size());
    double total = 0.0;
    std::size_t counted = 0;
    for (std::size_t i = 0; i < num_points; ++i) {
        if (labels[i] == kNoise) continue;
        const auto own = static_cast<std::size_t>(labels[i]);
        double s = 0.0;
        if (sizes[own] > 1) {
            std::fill(sums.begin(), sums.end(), 0.0);
            for (std::size_t j = 0; j < num_points; ++j) {
                if (j == i || labels[j] == kNoise) continue;
                sums[static_cast<std::size_t>(labels[j])] += dist(i, j);
            }
            const double a = sums[own] / static_cast<double>(sizes[own] - 1);
            double b = INFINITY;
            for (std::size_t c = 0; c < sizes.size(); ++c)
                if (c != own && sizes[c] > 0) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
            const double denom = std::max(a, b);
            s = denom > 0.0 ? (b - a) / denom : 0.0;
        }
        out.per_point[i] = s;
        total += s;
        ++counted;
    }
    out.overall = total / static_cast<double>(counted);
    return out;
}

std::vector<int> noise_as_cluster(const std::vector<int>& labels) {
    int next = 0;
    for (int l : labels) next = std::max(next, l + 1);
    std::vector<int> out(labels);
    for (int& l : out)
        if (l == kNoise) l = next;
    return out;
}

std::string_view to_string(NoisePolicy p) noexcept {
    return p == NoisePolicy::exclude ? "exclude" : "own-cluster";
}

NoisePolicy parse_noise_policy(std::string_view text) {
    if (text == "exclude") return NoisePolicy::exclude;
    if (text == "own-cluster") return NoisePolicy::own_cluster;
    throw std::invalid_argument("unknown noise policy '" + std::string(text) + "' (expected exclude or own-cluster)");
}

namespace {

// Labels to score, or nothing when the window has fewer than two real clusters.
std::optional<std::vector<int>> scored_labels(const ClusterLabeling& labeling, NoisePolicy policy) {
    if (labeling.num_clusters() < 2) return std::nullopt;
    return policy == NoisePolicy::own_cluster ? noise_as_cluster(labeling.labels) : labeling.labels;
}

SilhouetteResult missing_for(std::size_t n) {
    SilhouetteResult out;
    out.per_point.assign(n, std::nullopt);
    return out;
}

}  // namespace

SilhouetteResult silhouette(const SquareMatrix& dist, const ClusterLabeling& labeling, NoisePolicy policy) {
    const auto labels = scored_labels(labeling, policy);
    if (!labels) return missing_for(dist.size());
    return silhouette(dist.size(), [&dist](std::size_t i, std::size_t j) { return dist(i, j); }, *labels);
}

SilhouetteResult silhouette(const WindowSlice& w, const ClusterLabeling& labeling, NoisePolicy policy) {
    if (!scored_labels(labeling, policy)) return missing_for(w.num_agents());
    return silhouette(distance_matrix(w), labeling, policy);
}

SilhouetteResult silhouette(const DissimilarityMatrix& d, const ClusterLabeling& labeling, NoisePolicy policy) {
    return silhouette(d.matrix(), labeling, policy);
}

}  // namespace comove
