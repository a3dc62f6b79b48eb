#include "ctorsion/darboux_rep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ctorsion/error.hpp"
#include "ctorsion/numerics.hpp"

namespace ctorsion {

namespace {

void require_ordered(const SphericalCurve& c) {
  if (c.size() < 2) throw ValidationError("spherical curve needs at least 2 samples");
  if (c.t.size() != c.points.size()) throw ValidationError("spherical curve parameter and point counts differ");
  for (std::size_t i = 1; i < c.t.size(); ++i)
    if (!(c.t[i] > c.t[i - 1]))
      throw ValidationError("spherical curve parameters must be strictly increasing (index " + std::to_string(i) +
                            ")");
}

void require_tau(double tau) {
  if (!std::isfinite(tau) || tau == 0.0) throw ValidationError("torsion must be a nonzero finite number");
}

// Trapezoid of B x B' over every `stride`-th sample; the final step is
// shortened when the sample count does not divide evenly.
Vec3 loop_integral(const SphericalCurve& b, std::size_t stride) {
  Vec3 total{};
  const std::size_t last = b.size() - 1;
  std::size_t prev = 0;
  Vec3 fprev = cross(b.points[0], b.velocities[0]);
  for (std::size_t i = std::min(stride, last); prev < last; i = std::min(i + stride, last)) {
    const Vec3 f = cross(b.points[i], b.velocities[i]);
    total += (0.5 * (b.t[i] - b.t[prev])) * (f + fprev);
    fprev = f;
    prev = i;
  }
  return total;
}

}  // namespace

double AreaIntegralTriple::symmetry_residual() const {
  return std::max({std::abs(Ixy - Iyz), std::abs(Iyz - Izx), std::abs(Izx - Ixy)});
}

SphericalCurve normalized_binormal(const SphericalCurve& curve) {
  require_ordered(curve);
  SphericalCurve out = curve;
  const bool haveVel = curve.has_velocities();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec3 p = curve.points[i];
    const double len = norm(p);
    if (!(len > 0.0) || !std::isfinite(len)) throw ValidationError("spherical curve has a zero or non-finite sample");
    out.points[i] = p / len;
    if (haveVel) {
      const Vec3 v = curve.velocities[i];
      out.velocities[i] = (v - p * (dot(p, v) / (len * len))) / len;
    }
  }
  if (!haveVel) {
    const bool periodic = out.is_closed(1e-10);
    const numerics::Differentiator diff(out.t, periodic);
    out.velocities = diff.derivative(std::span<const Vec3>(out.points), 1);
  }
  return out;
}

Polyline gamma_from_binormal(const SphericalCurve& binormal, double tau) {
  require_tau(tau);
  const SphericalCurve b = normalized_binormal(binormal);
  std::vector<Vec3> integrand(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) integrand[i] = cross(b.points[i], b.velocities[i]) / tau;
  Polyline out;
  out.params = b.t;
  out.points = numerics::cumulative_trapezoid(b.t, integrand);
  out.torsion_target = tau;
  out.provenance = "darboux";
  return out;
}

AreaIntegralTriple area_integrals(const SphericalCurve& binormal) {
  const SphericalCurve b = normalized_binormal(binormal);
  if (!b.is_closed(1e-10)) throw ValidationError("area_integrals: the spherical curve is not closed");
  const Vec3 v = loop_integral(b, 1);
  return {v.z, v.x, v.y};
}

bool has_closed_form_area(int m, int n) { return n == -3 && (m == 1 || m == 2); }

double area_normalization(int m) {
  if (m == 0) throw ValidationError("area normalization undefined for m = 0");
  return std::sqrt(3.0) / (std::abs(m) * std::numbers::pi);
}

double closed_form_area(int m, int n, double alpha, double beta) {
  if (!has_closed_form_area(m, n))
    throw ValidationError("closed_form_area: no closed form for (m, n) = (" + std::to_string(m) + ", " +
                          std::to_string(n) + "); use area_integrals");
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  const double lead = 2.0 * sa * sa * cb * cb;
  const double coeff = m == 1 ? ca * ca - 6.0 * ca + 1.0 : 1.0 - 3.0 * ca + ca * ca;
  return lead + coeff * sb * sb;
}

ClosureReport closure_report(const SphericalCurve& binormal, double tau) {
  require_tau(tau);
  const SphericalCurve b = normalized_binormal(binormal);
  if (!b.is_closed(1e-10)) throw ValidationError("closure_report: the spherical curve is not closed");
  ClosureReport r;
  const Vec3 full = loop_integral(b, 1);
  r.integrals = {full.z, full.x, full.y};
  const Polyline gamma = gamma_from_binormal(b, tau);
  r.closure_gap = norm(gamma.points.back() - gamma.points.front());
  r.symmetry_residual = r.integrals.symmetry_residual();
  r.quadrature_tolerance = norm(full - loop_integral(b, 2)) / std::abs(tau);
  return r;
}

}  // namespace ctorsion
