#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace comove {

/// Dense row-major n x n matrix of doubles.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }
    std::span<const double> values() const noexcept { return data_; }

    bool is_symmetric(double tol = 0.0) const noexcept;
    double max_entry() const noexcept;

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace comove
