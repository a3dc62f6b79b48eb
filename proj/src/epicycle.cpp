#include "ctorsion/epicycle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ctorsion/error.hpp"

namespace ctorsion {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const Vec3& central_axis() {
  static const Vec3 u = central_frame().f1;
  return u;
}

// Generator of rot_x: d/dt R_t = R_t X.
constexpr Mat3 kRotXGenerator = Mat3({0, 0, 0, 0, 0, -1, 0, 1, 0});

}  // namespace

std::array<double, 2> planar_epicycle(const PlanarEpicycleParams& p, double t) {
  return {p.a * std::cos(t) + p.b * std::cos(-2.0 * t), p.a * std::sin(t) + p.b * std::sin(-2.0 * t)};
}

double planar_signed_area(const PlanarEpicycleParams& p, int samples) {
  if (samples < kMinEpicycleSamples) throw ValidationError("planar_signed_area: too few samples");
  const double h = kTwoPi / samples;
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = h * i;
    const auto [x, y] = planar_epicycle(p, t);
    const double dx = -p.a * std::sin(t) + 2.0 * p.b * std::sin(-2.0 * t);
    const double dy = p.a * std::cos(t) - 2.0 * p.b * std::cos(-2.0 * t);
    sum += x * dy - y * dx;
  }
  return 0.5 * sum * h;
}

int planar_turning_number(const PlanarEpicycleParams& p, int samples) {
  double total = 0.0;
  double prev = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = kTwoPi * i / samples;
    const double dx = -p.a * std::sin(t) + 2.0 * p.b * std::sin(-2.0 * t);
    const double dy = p.a * std::cos(t) - 2.0 * p.b * std::cos(-2.0 * t);
    const double angle = std::atan2(dy, dx);
    if (i > 0) {
      double d = angle - prev;
      if (d > std::numbers::pi) d -= kTwoPi;
      if (d < -std::numbers::pi) d += kTwoPi;
      total += d;
    }
    prev = angle;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

void validate(const EpicycleParams& p) {
  const auto in_range = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= std::numbers::pi; };
  if (!in_range(p.alpha)) throw ValidationError("epicycle: alpha must lie in [0, pi] radians");
  if (!in_range(p.beta)) throw ValidationError("epicycle: beta must lie in [0, pi] radians");
}

Vec3 spherical_epicycle(const EpicycleParams& p, double t) {
  static const Mat3 c = central_frame().matrix();
  const Mat3 m = rodrigues(central_axis(), p.m * t) * c * rot_z(p.alpha) * rot_x(p.n * t) * rot_z(p.beta);
  return m.column(0);
}

Vec3 spherical_epicycle_velocity(const EpicycleParams& p, double t) {
  // B = Q C S_a R S_b e1, Q' = m [U]x Q, R' = n R X.
  static const Mat3 c = central_frame().matrix();
  const Mat3 q = rodrigues(central_axis(), p.m * t);
  const Mat3 carrier = q * c * rot_z(p.alpha);
  const Mat3 r = rot_x(p.n * t);
  const Vec3 tail = rot_z(p.beta).column(0);
  const Vec3 b = carrier * (r * tail);
  const Vec3 orbit = static_cast<double>(p.m) * cross(central_axis(), b);
  const Vec3 spin = static_cast<double>(p.n) * (carrier * (r * (kRotXGenerator * tail)));
  return orbit + spin;
}

bool SphericalCurve::is_closed(double tol) const {
  if (points.size() < 2) return false;
  return norm(points.back() - points.front()) <= tol;
}

SphericalCurve sample_epicycle(const EpicycleParams& p, int samples) {
  if (samples < kMinEpicycleSamples)
    throw ValidationError("sample_epicycle: need at least " + std::to_string(kMinEpicycleSamples) +
                          " samples, got " + std::to_string(samples));
  validate(p);
  SphericalCurve curve;
  curve.params = p;
  const auto n = static_cast<std::size_t>(samples);
  curve.t.resize(n);
  curve.points.resize(n);
  curve.velocities.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i + 1 == n ? kTwoPi : kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1);
    curve.t[i] = t;
    curve.points[i] = spherical_epicycle(p, t);
    curve.velocities[i] = spherical_epicycle_velocity(p, t);
  }
  return curve;
}

}  // namespace ctorsion
