#include "ctorsion/numerics.hpp"

#include <algorithm>
#include <utility>
#include <string>

#include "ctorsion/error.hpp"

namespace ctorsion::numerics {

std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, int maxOrder) {
  const std::size_t n = x.size();
  const auto m = static_cast<std::size_t>(maxOrder);
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

Differentiator::Differentiator(std::span<const double> params, bool periodic, int halfWidth, std::size_t stride)
    : n_(params.size()), periodic_(periodic), half_(halfWidth), stride_(std::max<std::size_t>(stride, 1)) {
  const std::size_t unique = periodic_ ? n_ - 1 : n_;
  if (n_ < 3) throw ValidationError("differentiation needs at least 3 samples");
  // Shrink the stencil until it fits the grid.
  while (half_ > 1 && static_cast<std::size_t>(2 * half_) * stride_ >= unique) {
    if (stride_ > 1)
      stride_ = std::max<std::size_t>(1, stride_ / 2);
    else
      --half_;
  }
  if (static_cast<std::size_t>(2 * half_) * stride_ >= unique)
    throw ValidationError("too few samples (" + std::to_string(n_) + ") for a derivative stencil");
  width_ = static_cast<std::size_t>(2 * half_ + 1);
  index_.resize(n_ * width_);
  weights_.resize(3 * n_ * width_);

  const double period = periodic_ ? params[n_ - 1] - params[0] : 0.0;
  std::vector<double> local(width_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t center = (periodic_ && i == n_ - 1) ? 0 : i;
    const double z = periodic_ && i == n_ - 1 ? params[0] : params[i];
    for (std::size_t k = 0; k < width_; ++k) {
      const long offset = (static_cast<long>(k) - half_) * static_cast<long>(stride_);
      std::size_t j;
      double xj;
      if (periodic_) {
        const long u = static_cast<long>(unique);
        long raw = static_cast<long>(center) + offset;
        long wraps = 0;
        while (raw < 0) {
          raw += u;
          --wraps;
        }
        while (raw >= u) {
          raw -= u;
          ++wraps;
        }
        j = static_cast<std::size_t>(raw);
        xj = params[j] + static_cast<double>(wraps) * period;
      } else {
        const long span = static_cast<long>(half_) * static_cast<long>(stride_);
        long start = static_cast<long>(i) - span;
        start = std::clamp(start, 0L, static_cast<long>(n_) - 1 - 2 * span);
        j = static_cast<std::size_t>(start + static_cast<long>(k) * static_cast<long>(stride_));
        xj = params[j];
      }
      index_[i * width_ + k] = j;
      local[k] = xj;
    }
    const auto w = fd_weights(z, local, 3);
    for (int order = 1; order <= 3; ++order)
      for (std::size_t k = 0; k < width_; ++k)
        weights_[(static_cast<std::size_t>(order - 1) * n_ + i) * width_ + k] = w[order][k];
  }
}

template <class T>
std::vector<T> Differentiator::apply(std::span<const T> values, int order) const {
  if (values.size() != n_) throw ValidationError("derivative: value count does not match the grid");
  if (order < 1 || order > 3) throw ValidationError("derivative: order must be 1, 2 or 3");
  std::vector<T> out(n_);
  const double* w = &weights_[static_cast<std::size_t>(order - 1) * n_ * width_];
  for (std::size_t i = 0; i < n_; ++i) {
    T acc{};
    for (std::size_t k = 0; k < width_; ++k) acc += values[index_[i * width_ + k]] * w[i * width_ + k];
    out[i] = acc;
  }
  return out;
}

std::vector<double> Differentiator::derivative(std::span<const double> values, int order) const {
  return apply<double>(values, order);
}

std::vector<Vec3> Differentiator::derivative(std::span<const Vec3> values, int order) const {
  return apply<Vec3>(values, order);
}

std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> f) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  return out;
}

std::vector<Vec3> cumulative_trapezoid(std::span<const double> x, std::span<const Vec3> f) {
  std::vector<Vec3> out(f.size());
  for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + (0.5 * (x[i] - x[i - 1])) * (f[i] + f[i - 1]);
  return out;
}

double trapezoid(std::span<const double> x, std::span<const double> f) {
  double total = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) total += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  return total;
}

}  // namespace ctorsion::numerics
