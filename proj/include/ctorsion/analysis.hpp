#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ctorsion/curve.hpp"
#include "ctorsion/epicycle.hpp"

namespace ctorsion {

struct EstimatorOptions {
  /// Torsion is left undefined where |kappa| < kappa_floor * max |kappa|.
  double kappa_floor = 1e-6;
  /// Stencil half-width (9-point stencils by default).
  int half_width = 4;
  /// Spacing between stencil points in samples; 0 picks max(1, n / 1024).
  std::size_t stride = 0;
};

/// Per-sample discrete Frenet data of a polyline. The curve is treated as
/// periodic when its first and last samples coincide; open curves lose
/// `edge` samples at each end (`interior` is false there).
struct DiscreteFrenet {
  bool periodic = false;
  std::vector<double> params;
  std::vector<double> speed;      // |d gamma / d param|
  std::vector<double> arclength;  // cumulative, from the first sample
  std::vector<Vec3> tangent;
  std::vector<Vec3> normal;  // signed by continuity
  std::vector<Vec3> binormal;
  std::vector<double> kappa;  // signed curvature
  std::vector<double> tau;    // NaN where curvature is below the floor
  std::vector<char> interior;
  std::size_t degenerate = 0;  // samples below the curvature floor

  std::size_t size() const { return params.size(); }
  /// Flip the sign of curvature and of the normal/binormal fields.
  void flip_orientation();
};

DiscreteFrenet discrete_frenet(const Polyline& curve, const EstimatorOptions& options = {});

struct AnalysisReport {
  std::size_t samples = 0;
  std::size_t retained = 0;  // samples with a defined torsion estimate
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  std::vector<std::pair<double, double>> tau_samples;  // (arclength, tau)
  double tau_mean = 0.0;
  double tau_max_dev = 0.0;  // max |tau - tau_mean| over retained samples
  int inflection_count = 0;
  double length = 0.0;
  std::map<std::string, double> identity_residuals;
};

/// kappa = |g' x g''| / |g'|^3 signed by continuity of the normal (oriented
/// so that the mean signed curvature is nonnegative),
/// tau = <g' x g'', g'''> / |g' x g''|^2.
AnalysisReport estimate_curvature_torsion(const Polyline& curve, const EstimatorOptions& options = {});

/// Number of strict sign changes, ignoring |v| <= deadband. Wraps around
/// when cyclic is set (the last sample is taken as distinct from the first).
int count_sign_changes(const std::vector<double>& values, bool cyclic, double deadband = 1e-8);

/// Signed geodesic curvature <B'', B x B'> / |B'|^3 of a unit-sphere curve,
/// measured against the outward normal. Uses the stored velocities when
/// present. Throws ValidationError when a sample is off the sphere by more
/// than 1e-6.
std::vector<double> geodesic_curvature_sphere(const SphericalCurve& curve);

struct BinormalCurvatureCheck {
  double residual = 0.0;  // max |kappa_g^B - tau kappa|
  std::size_t compared = 0;
  std::vector<double> lhs;  // kappa_g^B = <B'', T> in gamma's arclength = tau |tau| kappa_g
  std::vector<double> rhs;  // tau kappa
};

/// Checks that the geodesic curvature of B, <B'', T> with T = B x B'/tau and
/// derivatives in gamma's arclength, equals tau times the curvature of
/// gamma. kappa is estimated from gamma alone and signed in the framing whose
/// binormal is B. Throws ValidationError when the two samplings differ.
BinormalCurvatureCheck check_binormal_curvature(const SphericalCurve& binormal, const Polyline& gamma, double tau,
                                     const EstimatorOptions& options = {});

struct OdeResidual {
  double max_residual = 0.0;
  std::size_t evaluated = 0;
  std::size_t flagged = 0;  // excluded because kappa or tau was near zero
  std::vector<double> residual;  // NaN where excluded
};

struct OdeResidualOptions {
  bool periodic = false;
  /// Samples with |tau| < tau_floor * max |tau| are excluded along with every
  /// sample whose stencil reaches them.
  double tau_floor = 1e-2;
  double kappa_floor = 1e-6;
  /// Stencil stride; 0 picks max(1, n / 1024) to keep nested derivatives
  /// above round-off.
  std::size_t stride = 0;
};

/// Max of |tau/kappa - (kappa' / (kappa^2 tau))'| over the grid s. Zero for
/// spherical curves.
OdeResidual spherical_ode_residual(const std::vector<double>& kappa, const std::vector<double>& tau,
                                   const std::vector<double>& s, const OdeResidualOptions& options = {});

/// I_n = \oint kappa^n tau ds for each n. Requires a closed curve; negative n
/// require curvature bounded away from zero.
std::vector<std::pair<int, double>> integral_identities(const Polyline& curve, const std::vector<int>& exponents,
                                                         const EstimatorOptions& options = {});

struct WongFit {
  double A = 0.0;
  double B = 0.0;
  double radius = 0.0;    // sqrt(A^2 + B^2)
  double residual = 0.0;  // max |(A cos phi + B sin phi) kappa - 1|
};

/// Least-squares fit of 1/kappa = A cos phi + B sin phi, phi = \int_0^s tau,
/// over every interior sample, with s measured from the first sample.
/// Throws ValidationError for a rank-deficient fit.
WongFit check_wong(const Polyline& curve, const EstimatorOptions& options = {});

struct DarbouxQuantities {
  std::vector<double> kappa_g;
  std::vector<double> kappa_n;
  std::vector<double> tau_g;
  std::vector<double> phi;  // directed angle from N to nu about T, unwrapped
  std::size_t excluded = 0;
};

/// Darboux-frame invariants of a curve on a surface with unit normals nu:
/// kappa_g = <g'', nu x g'>/|g'|^3, kappa_n = <g'', nu>/|g'|^2 and
/// tau_g = tau + phi'. Entries are NaN where the Frenet normal is undefined.
DarbouxQuantities geodesic_torsion(const Polyline& curve, const std::vector<Vec3>& normals,
                                   const EstimatorOptions& options = {});

struct SurfaceCurvatureBounds {
  std::vector<double> kappa1;  // smaller principal curvature per sample point
  std::vector<double> kappa2;  // larger principal curvature per sample point
  double mu = 0.0;             // max (kappa2 - kappa1)
};

SurfaceCurvatureBounds sphere_curvature_bounds(double radius);

/// Principal curvatures of the ellipsoid x^2/a^2 + y^2/b^2 + z^2/c^2 = 1 from
/// its parametric shape operator, sampled on a grid x grid (polar, azimuth)
/// lattice.
SurfaceCurvatureBounds ellipsoid_curvature_bounds(double a, double b, double c, int grid = 64);

/// mu / 2: a closed curve of constant torsion tau on the surface needs
/// |tau| < mu / 2.
double torsion_bound(const SurfaceCurvatureBounds& bounds);

/// False when |tau| >= mu / 2.
bool admits_closed_constant_torsion(double tau, const SurfaceCurvatureBounds& bounds);

}  // namespace ctorsion
