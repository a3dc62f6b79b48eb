#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ctorsion/frames.hpp"

namespace ctorsion {

/// Optional per-sample invariants carried alongside a sampled curve (the
/// extra CSV columns kappa, tau, kappa_g).
struct CurveInvariants {
  std::vector<double> kappa;
  std::vector<double> tau;
  std::vector<double> kappa_g;
};

/// A sampled space curve: the exchange type between every module.
struct Polyline {
  std::vector<double> params;
  std::vector<Vec3> points;
  std::optional<CurveInvariants> invariants;
  /// Intended constant torsion; NaN when the curve carries none.
  double torsion_target = std::numeric_limits<double>::quiet_NaN();
  std::string provenance;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  /// First and last sample coincide within tol (relative to the curve's extent).
  bool is_closed(double tol = 1e-10) const;

  /// Throws ValidationError unless there are at least two finite samples with
  /// strictly increasing params and matching column lengths.
  void validate() const;
};

/// Polyline with a moving frame attached to each sample.
struct FramedPolyline {
  Polyline curve;
  std::vector<Frame> frames;
};

}  // namespace ctorsion
