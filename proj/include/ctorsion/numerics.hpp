#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ctorsion/frames.hpp"

namespace ctorsion::numerics {

/// Finite-difference weights on an arbitrary grid (Fornberg's recursion).
/// Returns w[k][j]: weight of x[j] in the k-th derivative at z, k = 0..maxOrder.
std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, int maxOrder);

/// Precomputed derivative stencils (orders 1..3) over a fixed sample grid.
///
/// Periodic grids treat the last sample as a repeat of the first and wrap
/// stencils across the seam. Open grids shift stencils inward near the ends,
/// which costs accuracy there; callers exclude `edge_width()` samples at each
/// end when that matters. `stride` spaces stencil points `stride` samples
/// apart, trading truncation error for round-off when high derivatives of
/// finely sampled data are needed.
class Differentiator {
 public:
  Differentiator(std::span<const double> params, bool periodic, int halfWidth = 4, std::size_t stride = 1);

  std::size_t size() const { return n_; }
  bool periodic() const { return periodic_; }
  std::size_t edge_width() const { return periodic_ ? 0 : static_cast<std::size_t>(half_) * stride_; }

  std::vector<double> derivative(std::span<const double> values, int order) const;
  std::vector<Vec3> derivative(std::span<const Vec3> values, int order) const;

  /// Sample indices used by the stencil at sample i.
  std::span<const std::size_t> stencil(std::size_t i) const { return {&index_[i * width_], width_}; }

 private:
  template <class T>
  std::vector<T> apply(std::span<const T> values, int order) const;

  std::size_t n_ = 0;
  bool periodic_ = false;
  int half_ = 4;
  std::size_t stride_ = 1;
  std::size_t width_ = 0;
  std::vector<std::size_t> index_;  // n_ * width_
  std::vector<double> weights_;     // 3 * n_ * width_
};

/// Cumulative trapezoid of samples f over grid x, starting at zero.
std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> f);
std::vector<Vec3> cumulative_trapezoid(std::span<const double> x, std::span<const Vec3> f);

/// Trapezoid total of f over x.
double trapezoid(std::span<const double> x, std::span<const double> f);

}  // namespace ctorsion::numerics
