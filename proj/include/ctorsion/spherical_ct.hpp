#pragma once

#include <string>
#include <vector>

#include "ctorsion/curve.hpp"
#include "ctorsion/frames.hpp"

namespace ctorsion {

/// A constant-torsion curve on the unit sphere is found by integrating the
/// Darboux system F' = F A with A = (0 -kg -1; kg 0 0; 1 0 0) and
/// kg = tan(tau s); the curve is the third frame column. It only exists for
/// |s| < pi / (2 |tau|), where the geodesic curvature blows up.
struct SphericalCTParams {
  double tau = 0.5;
  /// Distance kept from each singular end of the arclength domain.
  double epsilon = 1e-3;
  /// Baseline resolution: the step away from the singular ends is at most
  /// (pi / |tau|) / steps.
  int steps = 4096;
  /// Upper bound on the frame rotation per step, in radians.
  double max_turn = 2e-3;
  /// Darboux frame (t, u, nu) at s = 0; the starting point is its third column.
  Frame initial_frame{};
};

struct SphericalCTCurve {
  FramedPolyline curve;  // params = arclength s, frames = (t, u, nu)
  std::vector<double> kappa_g;
  double s_min = 0.0;
  double s_max = 0.0;
  double max_abs_kappa_g = 0.0;
  std::size_t origin_index = 0;  // sample at s = 0
};

/// Half-length pi / (2 |tau|) of the maximal arclength domain.
double spherical_ct_half_length(double tau);

/// Integrates outward from s = 0 in both directions with RK4 on a mesh graded
/// by 1 / (1 + |kg|), projecting the frame onto SO(3) after each step.
/// Throws ValidationError for tau = 0 or epsilon outside (0, pi/(2|tau|)).
/// An epsilon so small that |kg| would pass 1e12 is rejected the same way.
SphericalCTCurve integrate_spherical_ct(const SphericalCTParams& params);

struct ZetaSample {
  double tau = 0.0;
  double zeta = 0.0;  // central angle between the two limit points (rad)
  double extrapolation_error = 0.0;
};

struct CentralAngleOptions {
  /// Endpoint distances, as fractions of the half-length, at which the limit
  /// points are estimated. Must be decreasing.
  std::vector<double> epsilon_fractions{1e-2, 1e-3, 1e-4, 1e-5};
  int steps = 4096;
  double max_turn = 2e-3;
  /// Largest change between the last two estimates accepted as converged.
  double max_error = 1e-6;
  Frame initial_frame{};
};

struct LimitPoints {
  Vec3 backward;  // limit as s -> -pi/(2|tau|)
  Vec3 forward;   // limit as s -> +pi/(2|tau|)
  double error = 0.0;  // change of the forward and backward points over the last refinement
};

/// Limit points of the maximal curve. At distance d from a singular end the
/// curve is close to a logarithmic spiral, whose remaining displacement
/// d (tau^2 T + tau u) / (1 + tau^2) (unit tangent T toward the end, u the
/// tangent normal) is added before projecting back to the sphere.
LimitPoints limit_points(double tau, const CentralAngleOptions& options = {});

/// Central angle between the two limit points. Throws ConvergenceError when
/// the last refinement moves zeta by more than options.max_error.
ZetaSample central_angle(double tau, const CentralAngleOptions& options = {});

struct ZetaSweep {
  std::vector<ZetaSample> samples;
  std::vector<std::string> warnings;
};

/// central_angle over a grid, dropping repeated values (with a warning) and
/// keeping the input order otherwise.
ZetaSweep zeta_sweep(const std::vector<double>& taus, const CentralAngleOptions& options = {});

/// Trace of the forward limit point as tau varies with the initial frame
/// held fixed. Params of the returned polyline are the tau values, which must
/// be strictly increasing.
Polyline limit_point_locus(const std::vector<double>& taus, const CentralAngleOptions& options = {});

}  // namespace ctorsion
