#include "comove/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace comove {

namespace {

// Four partial sums let the compiler keep several multiplies in flight; the
// summation order is fixed, so results stay reproducible.
double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t k = 0;
    for (; k + 4 <= a.size(); k += 4) {
        s0 += a[k] * b[k];
        s1 += a[k + 1] * b[k + 1];
        s2 += a[k + 2] * b[k + 2];
        s3 += a[k + 3] * b[k + 3];
    }
    for (; k < a.size(); ++k) s0 += a[k] * b[k];
    return (s0 + s1) + (s2 + s3);
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t k = 0;
    for (; k + 4 <= a.size(); k += 4) {
        const double d0 = a[k] - b[k], d1 = a[k + 1] - b[k + 1], d2 = a[k + 2] - b[k + 2], d3 = a[k + 3] - b[k + 3];
        s0 += d0 * d0;
        s1 += d1 * d1;
        s2 += d2 * d2;
        s3 += d3 * d3;
    }
    for (; k < a.size(); ++k) s0 += (a[k] - b[k]) * (a[k] - b[k]);
    return (s0 + s1) + (s2 + s3);
}

}  // namespace

SquareMatrix cosine_matrix(const WindowSlice& w) {
    const std::size_t n = w.num_agents();
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) norms[i] = std::sqrt(dot(w.agent(i), w.agent(i)));

    SquareMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double c = 0.0;
            if (norms[i] > 0.0 && norms[j] > 0.0) {
                c = i == j ? 1.0 : dot(w.agent(i), w.agent(j)) / (norms[i] * norms[j]);
                c = std::clamp(c, -1.0, 1.0);
            }
            out(i, j) = c;
            out(j, i) = c;
        }
    }
    return out;
}

SquareMatrix distance_matrix(const WindowSlice& w) {
    const std::size_t n = w.num_agents();
    SquareMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = w.agent(i);
        for (std::size_t j = i + 1; j < n; ++j) out(i, j) = out(j, i) = std::sqrt(squared_distance(a, w.agent(j)));
    }
    const double max = out.max_entry();
    if (max > 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) /= max;
    }
    return out;
}

SimilarityPair similarity_pair(const WindowSlice& w) { return {cosine_matrix(w), distance_matrix(w)}; }

DissimilarityMatrix::DissimilarityMatrix(SquareMatrix values) : values_(std::move(values)) {
    const std::size_t n = values_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (values_(i, i) != 0.0)
            throw std::invalid_argument("dissimilarity diagonal must be zero (row " + std::to_string(i) + ")");
        for (std::size_t j = 0; j < n; ++j) {
            const double v = values_(i, j);
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("dissimilarity entries must lie in [0, 1]");
            if (v != values_(j, i)) throw std::invalid_argument("dissimilarity matrix must be symmetric");
        }
    }
}

DissimilarityMatrix combine(const SimilarityPair& p) {
    const std::size_t n = p.cosine.size();
    if (p.distance.size() != n) throw std::invalid_argument("cosine and distance matrices differ in shape");
    SquareMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double cos_ij = std::clamp(std::abs(p.cosine(i, j)), 0.0, 1.0);
            const double d_ij = std::clamp(p.distance(i, j), 0.0, 1.0);
            out(i, j) = out(j, i) = (1.0 - cos_ij) * d_ij;
        }
    }
    return DissimilarityMatrix(std::move(out));
}

}  // namespace comove
