#pragma once

#include "comove/matrix.hpp"
#include "comove/trajectory.hpp"

namespace comove {

/// Cosine similarity of every pair of window vectors. A zero-norm vector has
/// cosine 0 with everything, itself included.
SquareMatrix cosine_matrix(const WindowSlice& w);

/// Euclidean distance between window vectors, divided by the largest entry.
/// An all-zero matrix is returned unchanged.
SquareMatrix distance_matrix(const WindowSlice& w);

struct SimilarityPair {
    SquareMatrix cosine;
    SquareMatrix distance;
};

SimilarityPair similarity_pair(const WindowSlice& w);

/// Pairwise dissimilarity in [0, 1]: symmetric with a zero diagonal.
class DissimilarityMatrix {
public:
    /// Validates shape, symmetry, zero diagonal and range.
    explicit DissimilarityMatrix(SquareMatrix values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }
    const SquareMatrix& matrix() const noexcept { return values_; }

private:
    SquareMatrix values_;
};

/// Entry-wise (1 - |cosine|) * distance with the diagonal forced to zero.
/// Throws std::invalid_argument on shape mismatch.
DissimilarityMatrix combine(const SimilarityPair& p);

}  // namespace comove
