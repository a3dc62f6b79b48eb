#pragma once

#include "ctorsion/curve.hpp"
#include "ctorsion/epicycle.hpp"

namespace ctorsion {

/// The three projected-area integrals of a closed spherical curve, i.e. the
/// components of \oint B x dB:
///   Iyz = \oint y dz - z dy,  Izx = \oint z dx - x dz,  Ixy = \oint x dy - y dx.
struct AreaIntegralTriple {
  double Ixy = 0.0;
  double Iyz = 0.0;
  double Izx = 0.0;

  Vec3 as_vector() const { return {Iyz, Izx, Ixy}; }
  /// Largest pairwise spread among the three integrals.
  double symmetry_residual() const;
};

struct ClosureReport {
  AreaIntegralTriple integrals;
  double closure_gap = 0.0;  // |gamma(end) - gamma(start)|
  double symmetry_residual = 0.0;
  double quadrature_tolerance = 0.0;  // |full - half resolution| of \oint B x dB / |tau|
};

/// Returns a copy of `curve` with points projected to the unit sphere and
/// velocities made consistent with the projection. Missing velocities are
/// estimated by finite differences (periodic when the curve is closed).
SphericalCurve normalized_binormal(const SphericalCurve& curve);

/// gamma(t) = (1/tau) \int_0^t B x B' dt, cumulative trapezoid from the
/// origin. The result has constant torsion tau wherever its curvature is
/// nonzero, and B as its binormal.
Polyline gamma_from_binormal(const SphericalCurve& binormal, double tau);

/// Trapezoid quadrature of \oint B x B' dt. Throws ValidationError for an
/// open curve.
AreaIntegralTriple area_integrals(const SphericalCurve& binormal);

/// Closed forms of the normalized Ixy for the (1,-3) and (2,-3) epicycles:
///   (1,-3): (sqrt3/pi)  Ixy = 2 sin^2a cos^2b + (cos^2a - 6 cos a + 1) sin^2b
///   (2,-3): (sqrt3/2pi) Ixy = 2 sin^2a cos^2b + (1 - 3 cos a + cos^2a) sin^2b
/// Throws ValidationError for any other (m, n).
double closed_form_area(int m, int n, double alpha, double beta);

bool has_closed_form_area(int m, int n);

/// Normalization factor sqrt3 / (|m| pi) applied to Ixy in the closed forms.
double area_normalization(int m);

ClosureReport closure_report(const SphericalCurve& binormal, double tau);

}  // namespace ctorsion
