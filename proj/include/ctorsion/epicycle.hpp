#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ctorsion/frames.hpp"

namespace ctorsion {

/// rho(t) = (a cos t + b cos(-2t), a sin t + b sin(-2t)): a point circling at
/// radius b clockwise about a point circling at radius a counterclockwise.
struct PlanarEpicycleParams {
  double a = 1.0;  // outer radius
  double b = 0.0;  // inner radius
};

std::array<double, 2> planar_epicycle(const PlanarEpicycleParams& p, double t);

/// 1/2 \oint (x dy - y dx) over one period by the trapezoid rule on
/// `samples` points with the analytic velocity. The exact value is
/// pi (a^2 - 2 b^2).
double planar_signed_area(const PlanarEpicycleParams& p, int samples = 1024);

/// Turning number of rho' over one period (discrete turning-angle sum).
/// For b > a/2 this is -2, three full turns away from the +1 of the circle
/// t -> (cos t, sin t); for b < a/2 it is +1.
int planar_turning_number(const PlanarEpicycleParams& p, int samples = 4096);

/// Spherical (m, n)-epicycle: a circle of geodesic radius beta carried around
/// a circle of geodesic radius alpha centered at U = (1,1,1)/sqrt3.
struct EpicycleParams {
  int m = 1;           // windings of the carrier circle about U
  int n = -3;          // windings of the epicycle
  double alpha = 0.0;  // geodesic radius of the carrier circle (rad)
  double beta = 0.0;   // geodesic radius of the epicycle (rad)

  /// True when the trace is invariant under a 2*pi/3 turn about U (3 | n).
  bool symmetric() const { return n % 3 == 0; }
};

/// Throws ValidationError unless 0 <= alpha <= pi and 0 <= beta <= pi.
void validate(const EpicycleParams& p);

/// B(t) = (Q_{mt} C S_alpha R_{nt} S_beta) e1.
Vec3 spherical_epicycle(const EpicycleParams& p, double t);

/// Analytic dB/dt by the product rule over the rotation factors.
Vec3 spherical_epicycle_velocity(const EpicycleParams& p, double t);

/// A sampled curve on the unit sphere, with velocities dB/dt when known.
struct SphericalCurve {
  std::optional<EpicycleParams> params;  // nullopt for externally supplied data
  std::vector<double> t;
  std::vector<Vec3> points;
  std::vector<Vec3> velocities;  // empty when unknown

  std::size_t size() const { return points.size(); }
  bool has_velocities() const { return velocities.size() == points.size() && !points.empty(); }
  bool is_closed(double tol = 1e-10) const;
};

inline constexpr int kMinEpicycleSamples = 16;

/// Uniform grid t_i = 2 pi i / (samples - 1), i = 0..samples-1, so the first
/// and last samples coincide. Throws ValidationError for samples < 16.
SphericalCurve sample_epicycle(const EpicycleParams& p, int samples);

}  // namespace ctorsion
