#include "comove/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace comove {

bool SquareMatrix::is_symmetric(double tol) const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
}

double SquareMatrix::max_entry() const noexcept {
    if (data_.empty()) return 0.0;
    return *std::max_element(data_.begin(), data_.end());
}

}  // namespace comove
