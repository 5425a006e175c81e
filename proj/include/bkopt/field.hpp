#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bkopt/model.hpp"

namespace bkopt {

/// Samples of a space-time function on a Grid: (n+1) x (m+1) values.
///
/// Storage is time-major so each time level is one contiguous span of n+1
/// values, which is what the marching schemes touch.
class Field {
 public:
  explicit Field(const Grid& grid)
      : grid_(grid),
        values_(static_cast<std::size_t>(grid.n() + 1) * static_cast<std::size_t>(grid.m() + 1), 0.0) {}

  const Grid& grid() const noexcept { return grid_; }
  int rows() const noexcept { return grid_.n() + 1; }
  int cols() const noexcept { return grid_.m() + 1; }

  double& operator()(int i, int j) noexcept { return values_[offset(i, j)]; }
  double operator()(int i, int j) const noexcept { return values_[offset(i, j)]; }

  std::span<double> level(int j) noexcept {
    return {values_.data() + offset(0, j), static_cast<std::size_t>(rows())};
  }
  std::span<const double> level(int j) const noexcept {
    return {values_.data() + offset(0, j), static_cast<std::size_t>(rows())};
  }

  std::span<const double> data() const noexcept { return values_; }

 private:
  std::size_t offset(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(rows()) + static_cast<std::size_t>(i);
  }

  Grid grid_;
  std::vector<double> values_;
};

}  // namespace bkopt
