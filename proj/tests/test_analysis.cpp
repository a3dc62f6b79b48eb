#include <gtest/gtest.h>

#include <cmath>

#include "ctorsion/analysis.hpp"
#include "ctorsion/closure_solver.hpp"
#include "ctorsion/error.hpp"
#include "ctorsion/io.hpp"
#include "test_support.hpp"

using namespace ctorsion;
using test::kPi;

namespace {

Polyline helix(double a, double b, int n, double turns) {
  Polyline p;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * turns * i / (n - 1);
    p.params.push_back(t);
    p.points.push_back({a * std::cos(t), a * std::sin(t), b * t});
  }
  return p;
}

SphericalCurve small_circle(double theta, int n) {
  SphericalCurve c;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * i / (n - 1);
    c.t.push_back(t);
    c.points.push_back({std::sin(theta) * std::cos(t), std::sin(theta) * std::sin(t), std::cos(theta)});
  }
  return c;
}

}  // namespace

TEST(Analysis, HelixCurvatureAndTorsion) {
  const double a = 2.0, b = 0.5;
  const AnalysisReport r = estimate_curvature_torsion(helix(a, b, 2001, 3));
  EXPECT_NEAR(r.kappa_min, a / (a * a + b * b), 1e-8);
  EXPECT_NEAR(r.kappa_max, a / (a * a + b * b), 1e-8);
  EXPECT_NEAR(r.tau_mean, b / (a * a + b * b), 1e-8);
  EXPECT_LT(r.tau_max_dev, 1e-7);
  EXPECT_NEAR(r.length, 3 * 2 * kPi * std::hypot(a, b), 1e-9);
  EXPECT_EQ(r.inflection_count, 0);
}

TEST(Analysis, PlanarCircleHasZeroTorsion) {
  const SphericalCurve c = small_circle(0.7, 1025);
  const AnalysisReport r = estimate_curvature_torsion(to_polyline(c));
  EXPECT_NEAR(r.kappa_min, 1 / std::sin(0.7), 1e-9);
  EXPECT_LT(std::abs(r.tau_mean), 1e-8);  // third-derivative round-off ~ eps / h^3
  EXPECT_EQ(r.retained, 1024u);  // the repeated closing sample is not counted
}

TEST(Analysis, SignChanges) {
  EXPECT_EQ(count_sign_changes({1, -1, 1, -1}, false), 3);
  EXPECT_EQ(count_sign_changes({1, -1, 1, -1}, true), 4);
  EXPECT_EQ(count_sign_changes({1, 0, 0, 2}, false), 0);
  EXPECT_EQ(count_sign_changes({1, 1e-12, -1}, false, 1e-8), 1);
  EXPECT_EQ(count_sign_changes({}, true), 0);
}

TEST(Analysis, GeodesicCurvatureOfSmallCircle) {
  const auto kg = geodesic_curvature_sphere(small_circle(0.7, 513));
  for (double v : kg) EXPECT_NEAR(v, 1 / std::tan(0.7), 1e-9);
  SphericalCurve off = small_circle(0.7, 64);
  off.points[3] = 1.01 * off.points[3];
  EXPECT_THROW(geodesic_curvature_sphere(off), ValidationError);
}

TEST(Analysis, BinormalCurvatureOnExample1) {
  const ClosedCurve c = build_closed_ct_curve(1, -3, kPi / 4, 1.0, 8192);
  const BinormalCurvatureCheck p = check_binormal_curvature(c.binormal, c.gamma, 1.0);
  EXPECT_LT(p.residual, 1e-4);
  EXPECT_EQ(p.compared, 8191u);
}

TEST(Analysis, BinormalCurvatureWithNonUnitTorsion) {
  const double tau = 2.5;
  const ClosedCurve c = build_closed_ct_curve(2, -3, kPi / 3, tau, 8192);
  EXPECT_LT(check_binormal_curvature(c.binormal, c.gamma, tau).residual, 1e-4);
}

TEST(Analysis, SphericalOdeResidual) {
  const SphericalCurve B = sample_epicycle({1, -3, kPi / 4, test::kBeta1}, 8193);
  const DiscreteFrenet f = discrete_frenet(to_polyline(B));
  OdeResidualOptions o;
  o.periodic = true;
  const OdeResidual r = spherical_ode_residual(f.kappa, f.tau, f.arclength, o);
  EXPECT_LT(r.max_residual, 1e-4);
  EXPECT_GT(r.evaluated, 4000u);

  // A helix is not spherical.
  const DiscreteFrenet h = discrete_frenet(helix(1.0, 1.0, 2001, 2));
  EXPECT_GT(spherical_ode_residual(h.kappa, h.tau, h.arclength).max_residual, 0.4);
}

TEST(Analysis, IntegralIdentitiesVanishOnSphere) {
  const SphericalCurve B = sample_epicycle({2, -3, kPi / 3, test::kBeta2}, 8193);
  for (const auto& [n, v] : integral_identities(to_polyline(B), {-2, -1, 0, 1, 2})) EXPECT_LT(std::abs(v), 1e-6) << n;
  EXPECT_THROW(integral_identities(helix(1, 1, 200, 1), {0}), ValidationError);
}

TEST(Analysis, WongRecoversRadius) {
  Polyline p = to_polyline(sample_epicycle({1, -3, kPi / 4, test::kBeta1}, 8193));
  for (auto& x : p.points) x = 2.0 * x;
  const WongFit w = check_wong(p);
  EXPECT_NEAR(w.radius, 2.0, 1e-5);
  EXPECT_LT(w.residual, 1e-4);
}

TEST(Analysis, GeodesicTorsionVanishesOnSphere) {
  const SphericalCurve B = sample_epicycle({1, -3, kPi / 4, test::kBeta1}, 8193);
  const DarbouxQuantities d = geodesic_torsion(to_polyline(B), B.points);
  std::size_t used = 0;
  for (std::size_t i = 0; i < d.tau_g.size(); ++i) {
    if (std::isnan(d.tau_g[i])) continue;
    ++used;
    EXPECT_LT(std::abs(d.tau_g[i]), 1e-4);
    EXPECT_NEAR(d.kappa_n[i], -1.0, 1e-8);
  }
  EXPECT_GT(used, 8000u);
}

TEST(Analysis, SphereHasNoTorsionRoom) {
  const auto s = sphere_curvature_bounds(1.0);
  EXPECT_EQ(s.mu, 0.0);
  EXPECT_EQ(torsion_bound(s), 0.0);
  EXPECT_FALSE(admits_closed_constant_torsion(1e-9, s));
}

TEST(Analysis, EllipsoidCurvaturesMatchImplicitForm) {
  const double a = 1.0, b = 1.5, c = 2.0;
  const int grid = 16;
  const auto e = ellipsoid_curvature_bounds(a, b, c, grid);
  ASSERT_EQ(e.kappa1.size(), static_cast<std::size_t>(grid * grid));
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double th = kPi * (i + 0.5) / grid, ph = 2 * kPi * j / grid;
      const double x = a * std::sin(th) * std::cos(ph), y = b * std::sin(th) * std::sin(ph), z = c * std::cos(th);
      const double q = x * x / std::pow(a, 4) + y * y / std::pow(b, 4) + z * z / std::pow(c, 4);
      const double K = 1.0 / (a * a * b * b * c * c * q * q);
      const double H = (x * x + y * y + z * z - a * a - b * b - c * c) / (-2.0 * a * a * b * b * c * c * std::pow(q, 1.5));
      const std::size_t k = static_cast<std::size_t>(i * grid + j);
      EXPECT_NEAR(e.kappa1[k] * e.kappa2[k], K, 1e-12);
      EXPECT_NEAR(0.5 * (e.kappa1[k] + e.kappa2[k]), H, 1e-12);
      EXPECT_GT(e.kappa1[k], 0.0);
    }
  }
}

TEST(Analysis, SpheroidBound) {
  // Prolate spheroid (1,1,2): the largest principal-curvature gap sits off the
  // equator, at polar angle ~0.9553, where it is 0.76980036 (from the meridian
  // ellipse on a fine grid).
  const auto e = ellipsoid_curvature_bounds(1.0, 1.0, 2.0, 256);
  EXPECT_NEAR(e.mu, 0.76980036, 1e-4);
  EXPECT_TRUE(admits_closed_constant_torsion(0.3, e));
  EXPECT_FALSE(admits_closed_constant_torsion(0.4, e));
}
