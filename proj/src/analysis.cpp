#include "ctorsion/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ctorsion/error.hpp"
#include "ctorsion/numerics.hpp"

namespace ctorsion {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Nested finite differences lose digits as h^-k; keep the stencil spacing
// near 1/1024 of the curve unless the caller fixes it.
std::size_t auto_stride(std::size_t requested, std::size_t n) {
  return requested > 0 ? requested : std::max<std::size_t>(1, n / 1024);
}

std::size_t effective_stride(const EstimatorOptions& o, std::size_t n) { return auto_stride(o.stride, n); }

void require_on_sphere(const std::vector<Vec3>& points, double tol) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double dev = std::abs(norm(points[i]) - 1.0);
    if (!(dev <= tol)) {
      std::ostringstream msg;
      msg << "sample " << i << " is off the unit sphere by " << dev;
      throw ValidationError(msg.str());
    }
  }
}

}  // namespace

void DiscreteFrenet::flip_orientation() {
  for (auto& k : kappa) k = -k;
  for (auto& v : normal) v = -v;
  for (auto& v : binormal) v = -v;
}

DiscreteFrenet discrete_frenet(const Polyline& curve, const EstimatorOptions& options) {
  curve.validate();
  if (curve.size() < 7) throw ValidationError("curvature estimation needs at least 7 samples");
  DiscreteFrenet f;
  f.periodic = curve.is_closed(1e-10);
  f.params = curve.params;
  const std::size_t n = curve.size();
  const numerics::Differentiator diff(curve.params, f.periodic, options.half_width, effective_stride(options, curve.size()));
  const std::span<const Vec3> pts(curve.points);
  const auto d1 = diff.derivative(pts, 1);
  const auto d2 = diff.derivative(pts, 2);
  const auto d3 = diff.derivative(pts, 3);

  f.speed.resize(n);
  f.tangent.resize(n);
  f.normal.resize(n);
  f.binormal.resize(n);
  f.kappa.resize(n);
  f.tau.assign(n, kNaN);
  f.interior.assign(n, 1);
  std::vector<double> magnitude(n);
  std::vector<Vec3> rawNormal(n);
  double kmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    f.speed[i] = norm(d1[i]);
    if (!(f.speed[i] > 0.0)) throw ValidationError("curve is stationary at sample " + std::to_string(i));
    f.tangent[i] = d1[i] / f.speed[i];
    const Vec3 c = cross(d1[i], d2[i]);
    magnitude[i] = norm(c) / (f.speed[i] * f.speed[i] * f.speed[i]);
    const Vec3 perp = d2[i] - f.tangent[i] * dot(f.tangent[i], d2[i]);
    const double plen = norm(perp);
    rawNormal[i] = plen > 0.0 ? perp / plen : Vec3{};
    kmax = std::max(kmax, magnitude[i]);
  }
  const double floor = options.kappa_floor * kmax;
  for (std::size_t i = 0; i < n; ++i) {
    if (magnitude[i] < floor || !(magnitude[i] > 0.0)) {
      ++f.degenerate;
      continue;
    }
    const Vec3 c = cross(d1[i], d2[i]);
    f.tau[i] = dot(c, d3[i]) / dot(c, c);
  }

  // Transport the sign of the normal across samples.
  const std::size_t distinct = f.periodic ? n - 1 : n;
  Vec3 carried{};
  double sign = 1.0;
  bool haveCarried = false;
  for (std::size_t i = 0; i < distinct; ++i) {
    if (magnitude[i] >= floor && magnitude[i] > 0.0) {
      if (haveCarried && dot(rawNormal[i], carried) < 0.0)
        sign = -1.0;
      else
        sign = 1.0;
      carried = sign * rawNormal[i];
      haveCarried = true;
    }
    f.normal[i] = haveCarried ? carried : rawNormal[i];
    f.kappa[i] = (haveCarried ? sign : 1.0) * magnitude[i];
    f.binormal[i] = cross(f.tangent[i], f.normal[i]);
  }
  if (f.periodic) {
    f.normal[n - 1] = f.normal[0];
    f.kappa[n - 1] = f.kappa[0];
    f.binormal[n - 1] = f.binormal[0];
    f.interior[n - 1] = 0;
  } else {
    const std::size_t edge = std::min(diff.edge_width(), n / 2);
    for (std::size_t i = 0; i < edge; ++i) {
      f.interior[i] = 0;
      f.interior[n - 1 - i] = 0;
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < distinct; ++i) total += f.kappa[i];
  if (total < 0.0) f.flip_orientation();

  f.arclength = numerics::cumulative_trapezoid(f.params, f.speed);
  return f;
}

int count_sign_changes(const std::vector<double>& values, bool cyclic, double deadband) {
  int first = 0;
  int prev = 0;
  int changes = 0;
  for (double v : values) {
    if (!(std::abs(v) > deadband)) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (first == 0) first = s;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  if (cyclic && prev != 0 && prev != first) ++changes;
  return changes;
}

AnalysisReport estimate_curvature_torsion(const Polyline& curve, const EstimatorOptions& options) {
  const DiscreteFrenet f = discrete_frenet(curve, options);
  AnalysisReport r;
  r.samples = curve.size();
  r.length = f.arclength.back();
  r.kappa_min = std::numeric_limits<double>::infinity();
  r.kappa_max = -std::numeric_limits<double>::infinity();
  std::vector<double> interiorKappa;
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f.interior[i]) continue;
    interiorKappa.push_back(f.kappa[i]);
    r.kappa_min = std::min(r.kappa_min, f.kappa[i]);
    r.kappa_max = std::max(r.kappa_max, f.kappa[i]);
    if (std::isfinite(f.tau[i])) {
      r.tau_samples.emplace_back(f.arclength[i], f.tau[i]);
      sum += f.tau[i];
    }
  }
  r.retained = r.tau_samples.size();
  if (r.retained > 0) {
    r.tau_mean = sum / static_cast<double>(r.retained);
    for (const auto& [s, t] : r.tau_samples) r.tau_max_dev = std::max(r.tau_max_dev, std::abs(t - r.tau_mean));
  }
  r.inflection_count = count_sign_changes(interiorKappa, f.periodic);
  r.identity_residuals["degenerate_samples"] = static_cast<double>(f.degenerate);
  if (std::isfinite(curve.torsion_target)) {
    double dev = 0.0;
    for (const auto& [s, t] : r.tau_samples) dev = std::max(dev, std::abs(t - curve.torsion_target));
    r.identity_residuals["torsion_target_deviation"] = dev;
  }
  return r;
}

std::vector<double> geodesic_curvature_sphere(const SphericalCurve& curve) {
  if (curve.size() < 7) throw ValidationError("geodesic curvature needs at least 7 samples");
  if (curve.t.size() != curve.size()) throw ValidationError("spherical curve parameter and point counts differ");
  require_on_sphere(curve.points, 1e-6);
  const bool periodic = curve.is_closed(1e-10);
  const numerics::Differentiator diff(curve.t, periodic);
  std::vector<Vec3> v1;
  std::vector<Vec3> v2;
  if (curve.has_velocities()) {
    v1 = curve.velocities;
    v2 = diff.derivative(std::span<const Vec3>(v1), 1);
  } else {
    v1 = diff.derivative(std::span<const Vec3>(curve.points), 1);
    v2 = diff.derivative(std::span<const Vec3>(curve.points), 2);
  }
  std::vector<double> kg(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double sp = norm(v1[i]);
    kg[i] = dot(v2[i], cross(curve.points[i], v1[i])) / (sp * sp * sp);
  }
  return kg;
}

BinormalCurvatureCheck check_binormal_curvature(const SphericalCurve& binormal, const Polyline& gamma, double tau,
                                     const EstimatorOptions& options) {
  if (!std::isfinite(tau) || tau == 0.0) throw ValidationError("torsion must be a nonzero finite number");
  if (binormal.size() != gamma.size()) throw ValidationError("binormal and curve are sampled differently");
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (std::abs(binormal.t[i] - gamma.params[i]) > 1e-12 * std::max(1.0, std::abs(gamma.params[i])))
      throw ValidationError("binormal and curve parameters are misaligned at sample " + std::to_string(i));

  DiscreteFrenet f = discrete_frenet(gamma, options);
  double align = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::isfinite(f.tau[i])) align += dot(f.binormal[i], binormal.points[i]);
  if (align < 0.0) f.flip_orientation();

  const auto kg = geodesic_curvature_sphere(binormal);
  BinormalCurvatureCheck out;
  out.lhs.resize(f.size());
  out.rhs.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.lhs[i] = tau * std::abs(tau) * kg[i];
    out.rhs[i] = tau * f.kappa[i];
    if (!f.interior[i]) continue;
    out.residual = std::max(out.residual, std::abs(out.lhs[i] - out.rhs[i]));
    ++out.compared;
  }
  return out;
}

OdeResidual spherical_ode_residual(const std::vector<double>& kappa, const std::vector<double>& tau,
                                   const std::vector<double>& s, const OdeResidualOptions& options) {
  const std::size_t n = s.size();
  if (kappa.size() != n || tau.size() != n) throw ValidationError("kappa, tau and s must have equal length");
  if (n < 7) throw ValidationError("spherical_ode_residual needs at least 7 samples");
  const std::size_t stride = auto_stride(options.stride, n);
  const numerics::Differentiator diff(s, options.periodic, 4, stride);

  double kmax = 0.0;
  double tmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    kmax = std::max(kmax, std::abs(kappa[i]));
    if (std::isfinite(tau[i])) tmax = std::max(tmax, std::abs(tau[i]));
  }
  std::vector<char> usable(n);
  for (std::size_t i = 0; i < n; ++i)
    usable[i] = std::isfinite(tau[i]) && std::abs(tau[i]) >= options.tau_floor * tmax &&
                std::abs(kappa[i]) >= options.kappa_floor * kmax && std::abs(tau[i]) > 0.0;

  const auto dk = diff.derivative(std::span<const double>(kappa), 1);
  std::vector<double> q(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (usable[i]) q[i] = dk[i] / (kappa[i] * kappa[i] * tau[i]);
  const auto dq = diff.derivative(std::span<const double>(q), 1);

  OdeResidual out;
  out.residual.assign(n, kNaN);
  const std::size_t last = options.periodic ? n - 1 : n;
  const std::size_t edge = diff.edge_width();
  for (std::size_t i = 0; i < last; ++i) {
    bool ok = usable[i] && i >= edge && i + edge < n;
    for (std::size_t j : diff.stencil(i)) ok = ok && usable[j];
    if (!ok) {
      ++out.flagged;
      continue;
    }
    out.residual[i] = tau[i] / kappa[i] - dq[i];
    out.max_residual = std::max(out.max_residual, std::abs(out.residual[i]));
    ++out.evaluated;
  }
  return out;
}

std::vector<std::pair<int, double>> integral_identities(const Polyline& curve, const std::vector<int>& exponents,
                                                         const EstimatorOptions& options) {
  const DiscreteFrenet f = discrete_frenet(curve, options);
  if (!f.periodic) throw ValidationError("integral_identities: the curve is not closed");
  double kmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f.tau[i])) throw ValidationError("integral_identities: torsion undefined where curvature vanishes");
    kmin = std::min(kmin, std::abs(f.kappa[i]));
  }
  std::vector<std::pair<int, double>> out;
  std::vector<double> integrand(f.size());
  for (int e : exponents) {
    if (e < 0 && !(kmin > 1e-8)) throw ValidationError("integral_identities: negative powers need nonvanishing curvature");
    for (std::size_t i = 0; i < f.size(); ++i) integrand[i] = std::pow(f.kappa[i], e) * f.tau[i] * f.speed[i];
    out.emplace_back(e, numerics::trapezoid(f.params, integrand));
  }
  return out;
}

WongFit check_wong(const Polyline& curve, const EstimatorOptions& options) {
  const DiscreteFrenet f = discrete_frenet(curve, options);
  std::vector<double> rate(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f.tau[i])) throw ValidationError("check_wong: torsion undefined where curvature vanishes");
    rate[i] = f.tau[i] * f.speed[i];
  }
  const auto phase = numerics::cumulative_trapezoid(f.params, rate);
  double scc = 0.0, scs = 0.0, sss = 0.0, sc = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f.interior[i]) continue;
    const double c = std::cos(phase[i]);
    const double s = std::sin(phase[i]);
    const double r = 1.0 / f.kappa[i];
    scc += c * c;
    scs += c * s;
    sss += s * s;
    sc += c * r;
    ss += s * r;
  }
  const double det = scc * sss - scs * scs;
  const double scale = (scc + sss) * (scc + sss);
  if (!(scale > 0.0) || det < 1e-12 * scale)
    throw ValidationError("check_wong: rank-deficient fit (curvature phase does not vary)");
  WongFit w;
  w.A = (sss * sc - scs * ss) / det;
  w.B = (scc * ss - scs * sc) / det;
  w.radius = std::hypot(w.A, w.B);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f.interior[i]) continue;
    const double v = (w.A * std::cos(phase[i]) + w.B * std::sin(phase[i])) * f.kappa[i] - 1.0;
    w.residual = std::max(w.residual, std::abs(v));
  }
  return w;
}

DarbouxQuantities geodesic_torsion(const Polyline& curve, const std::vector<Vec3>& normals,
                                   const EstimatorOptions& options) {
  if (normals.size() != curve.size()) throw ValidationError("geodesic_torsion: one surface normal per sample required");
  const DiscreteFrenet f = discrete_frenet(curve, options);
  const numerics::Differentiator diff(curve.params, f.periodic, options.half_width, effective_stride(options, curve.size()));
  const auto d1 = diff.derivative(std::span<const Vec3>(curve.points), 1);
  const auto d2 = diff.derivative(std::span<const Vec3>(curve.points), 2);
  const std::size_t n = f.size();

  DarbouxQuantities q;
  q.kappa_g.resize(n);
  q.kappa_n.resize(n);
  q.tau_g.assign(n, kNaN);
  q.phi.assign(n, kNaN);
  std::vector<double> c(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 nu = normalized(normals[i]);
    const double sp = f.speed[i];
    q.kappa_g[i] = dot(d2[i], cross(nu, d1[i])) / (sp * sp * sp);
    q.kappa_n[i] = dot(d2[i], nu) / (sp * sp);
    c[i] = dot(f.normal[i], nu);
    s[i] = dot(cross(f.normal[i], nu), f.tangent[i]);
  }
  // phi' = (c s' - s c') / (c^2 + s^2): no unwrapping across the seam needed.
  const auto dc = diff.derivative(std::span<const double>(c), 1);
  const auto ds = diff.derivative(std::span<const double>(s), 1);
  double unwrapped = 0.0;
  double prev = 0.0;
  bool started = false;
  for (std::size_t i = 0; i < n; ++i) {
    bool ok = std::isfinite(f.tau[i]);
    for (std::size_t j : diff.stencil(i)) ok = ok && std::isfinite(f.tau[j]);
    if (!ok) {
      ++q.excluded;
      continue;
    }
    const double angle = std::atan2(s[i], c[i]);
    if (!started) {
      unwrapped = angle;
      started = true;
    } else {
      double d = angle - prev;
      d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
      unwrapped += d;
    }
    prev = angle;
    q.phi[i] = unwrapped;
    const double dphi = (c[i] * ds[i] - s[i] * dc[i]) / (c[i] * c[i] + s[i] * s[i]);
    q.tau_g[i] = f.tau[i] + dphi / f.speed[i];
  }
  return q;
}

SurfaceCurvatureBounds sphere_curvature_bounds(double radius) {
  if (!(radius > 0.0)) throw ValidationError("sphere radius must be positive");
  SurfaceCurvatureBounds b;
  b.kappa1 = {1.0 / radius};
  b.kappa2 = {1.0 / radius};
  b.mu = 0.0;
  return b;
}

SurfaceCurvatureBounds ellipsoid_curvature_bounds(double a, double b, double c, int grid) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw ValidationError("ellipsoid semi-axes must be positive");
  if (grid < 4) throw ValidationError("ellipsoid grid must have at least 4 points per direction");
  SurfaceCurvatureBounds out;
  for (int i = 0; i < grid; ++i) {
    const double th = std::numbers::pi * (i + 0.5) / grid;
    const double st = std::sin(th), ct = std::cos(th);
    for (int j = 0; j < grid; ++j) {
      const double ph = 2.0 * std::numbers::pi * j / grid;
      const double sp = std::sin(ph), cp = std::cos(ph);
      const Vec3 xt{a * ct * cp, b * ct * sp, -c * st};
      const Vec3 xp{-a * st * sp, b * st * cp, 0.0};
      const Vec3 xtt{-a * st * cp, -b * st * sp, -c * ct};
      const Vec3 xtp{-a * ct * sp, b * ct * cp, 0.0};
      const Vec3 xpp{-a * st * cp, -b * st * sp, 0.0};
      // Inward normal so that curvatures of the convex surface are positive.
      const Vec3 nu = -normalized(cross(xt, xp));
      const double E = dot(xt, xt), F = dot(xt, xp), G = dot(xp, xp);
      const double L = dot(xtt, nu), M = dot(xtp, nu), N = dot(xpp, nu);
      const double det = E * G - F * F;
      const double H = (E * N - 2.0 * F * M + G * L) / (2.0 * det);
      const double K = (L * N - M * M) / det;
      const double disc = std::sqrt(std::max(0.0, H * H - K));
      out.kappa1.push_back(H - disc);
      out.kappa2.push_back(H + disc);
      out.mu = std::max(out.mu, 2.0 * disc);
    }
  }
  return out;
}

double torsion_bound(const SurfaceCurvatureBounds& bounds) {
  if (!(bounds.mu >= 0.0)) throw ValidationError("mu must be nonnegative");
  return 0.5 * bounds.mu;
}

bool admits_closed_constant_torsion(double tau, const SurfaceCurvatureBounds& bounds) {
  return std::abs(tau) < torsion_bound(bounds);
}

}  // namespace ctorsion
