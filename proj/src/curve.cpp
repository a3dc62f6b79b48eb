#include "ctorsion/curve.hpp"

#include <algorithm>
#include <cmath>

#include "ctorsion/error.hpp"

namespace ctorsion {

bool Polyline::is_closed(double tol) const {
  if (points.size() < 2) return false;
  double extent = 0.0;
  for (const auto& p : points) extent = std::max(extent, norm(p - points.front()));
  return norm(points.back() - points.front()) <= tol * std::max(1.0, extent);
}

void Polyline::validate() const {
  if (points.size() < 2) throw ValidationError("polyline needs at least 2 samples");
  if (params.size() != points.size()) throw ValidationError("polyline params and points differ in length");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z) || !std::isfinite(params[i]))
      throw ValidationError("polyline has a non-finite sample at index " + std::to_string(i));
    if (i > 0 && !(params[i] > params[i - 1]))
      throw ValidationError("polyline parameters must be strictly increasing (index " + std::to_string(i) + ")");
  }
  if (invariants) {
    const auto n = points.size();
    if (invariants->kappa.size() != n || invariants->tau.size() != n || invariants->kappa_g.size() != n)
      throw ValidationError("polyline invariant columns differ in length from the samples");
  }
}

}  // namespace ctorsion
