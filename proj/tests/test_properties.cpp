// Randomized invariants with fixed seeds.
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ctorsion/analysis.hpp"
#include "ctorsion/closure_solver.hpp"
#include "ctorsion/darboux_rep.hpp"
#include "ctorsion/frenet.hpp"
#include "ctorsion/io.hpp"
#include "ctorsion/spherical_ct.hpp"
#include "test_support.hpp"

using namespace ctorsion;
using test::kPi;

namespace {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  Vec3 unit() {
    std::normal_distribution<double> g;
    return normalized(Vec3{g(gen), g(gen), g(gen)});
  }
  Frame frame() { return Frame::from_matrix(rodrigues(unit(), uniform(-kPi, kPi))); }
};

}  // namespace

TEST(Properties, RodriguesIsARotationGroup) {
  Rng r(1);
  for (int k = 0; k < 200; ++k) {
    const Vec3 u = r.unit();
    const double a = r.uniform(-10, 10), b = r.uniform(-10, 10);
    const Mat3 q = rodrigues(u, a);
    ASSERT_LT(orthogonality_error(q), 1e-14);
    ASSERT_NEAR(q.det(), 1.0, 1e-14);
    ASSERT_LT(max_abs_diff(q * rodrigues(u, -a), Mat3::identity()), 1e-14);
    ASSERT_LT(max_abs_diff(q * rodrigues(u, b), rodrigues(u, a + b)), 1e-13);
  }
}

TEST(Properties, EpicyclesLieOnSphereWithTangentVelocity) {
  Rng r(2);
  for (int k = 0; k < 50; ++k) {
    const EpicycleParams p{static_cast<int>(r.uniform(1, 4)), -3 * static_cast<int>(r.uniform(1, 3)), r.uniform(0, kPi),
                           r.uniform(0, kPi)};
    for (int i = 0; i < 20; ++i) {
      const double t = r.uniform(0, 2 * kPi);
      const Vec3 b = spherical_epicycle(p, t);
      ASSERT_NEAR(norm(b), 1.0, 1e-14);
      ASSERT_NEAR(dot(b, spherical_epicycle_velocity(p, t)), 0.0, 1e-12);
    }
  }
}

TEST(Properties, ClosedFormAgreesWithQuadrature) {
  Rng r(3);
  for (int k = 0; k < 60; ++k) {
    const int m = k % 2 == 0 ? 1 : 2;
    const double alpha = r.uniform(0.01, kPi - 0.01), beta = r.uniform(0, kPi);
    const double q = area_normalization(m) * area_integrals(sample_epicycle({m, -3, alpha, beta}, 1024)).Ixy;
    ASSERT_NEAR(q, closed_form_area(m, -3, alpha, beta), 1e-10) << m << ' ' << alpha << ' ' << beta;
  }
}

TEST(Properties, GammaVelocityIsPerpendicularToBinormal) {
  Rng r(4);
  for (int k = 0; k < 10; ++k) {
    const SphericalCurve B = sample_epicycle({1, -3, r.uniform(0.2, 1.2), r.uniform(0.1, 1.0)}, 2048);
    const double tau = r.uniform(0.2, 3.0) * (k % 2 ? 1 : -1);
    const Polyline g = gamma_from_binormal(B, tau);
    const double h = B.t[1] - B.t[0];
    for (std::size_t i = 1; i < g.size(); i += 37) {
      const Vec3 step = g.points[i] - g.points[i - 1];
      const Vec3 mid = normalized(B.points[i] + B.points[i - 1]);
      // The trapezoid step leaves the tangent plane only at second order.
      ASSERT_LT(std::abs(dot(step, mid)), 10 * h * h * norm(step));
    }
  }
}

TEST(Properties, SolvedBetaClosesTheCurve) {
  Rng r(5);
  for (int k = 0; k < 25; ++k) {
    const double alpha = r.uniform(0.05, 1.35);
    const ClosureSolution s = solve_beta(1, -3, alpha);
    ASSERT_LT(std::abs(closed_form_area(1, -3, alpha, s.params.beta)), 1e-10);
    const ClosureReport rep = closure_report(sample_epicycle(s.params, 2048), 1.0);
    ASSERT_LT(rep.closure_gap, 1e-9);
  }
}

TEST(Properties, CsvRoundTripOnExtremeValues) {
  const double vals[] = {0.0,
                         -0.0,
                         std::numeric_limits<double>::min(),
                         std::numeric_limits<double>::denorm_min(),
                         std::numeric_limits<double>::max(),
                         -std::numeric_limits<double>::max(),
                         1.0 / 3.0,
                         std::nextafter(1.0, 2.0)};
  Polyline p;
  for (std::size_t i = 0; i < std::size(vals); ++i) {
    p.params.push_back(static_cast<double>(i));
    p.points.push_back({vals[i], -vals[i], vals[(i + 1) % std::size(vals)]});
  }
  const Polyline q = from_csv(to_csv(p));
  for (std::size_t i = 0; i < p.size(); ++i) {
    ASSERT_EQ(std::signbit(q.points[i].x), std::signbit(p.points[i].x));
    ASSERT_EQ(q.points[i], p.points[i]);
  }
}

TEST(Properties, FrenetFramesStayOrthonormal) {
  Rng r(6);
  for (int k = 0; k < 10; ++k) {
    const double a = r.uniform(-3, 3), b = r.uniform(-3, 3), w = r.uniform(0.5, 5);
    FrenetCoefficients c{[=](double s) { return a * std::sin(w * s); }, [=](double s) { return b + std::cos(s); }, 20.0};
    const auto out = integrate_frenet(c, {0.0, {}, r.frame()}, 4000);
    for (const auto& f : out.frames) ASSERT_LT(orthogonality_error(f.matrix()), 1e-13);
  }
}

TEST(Properties, CentralAngleIgnoresInitialFrame) {
  Rng r(7);
  for (int k = 0; k < 6; ++k) {
    const double tau = std::exp(r.uniform(std::log(0.05), std::log(50.0)));
    CentralAngleOptions o;
    const double base = central_angle(tau, o).zeta;
    o.initial_frame = r.frame();
    const ZetaSample z = central_angle(tau, o);
    ASSERT_NEAR(z.zeta, base, 1e-9) << tau;
    ASSERT_GT(z.zeta, 0.0);
    ASSERT_LE(z.zeta, kPi);
  }
}

TEST(Properties, CentralAngleDecreasesWithTorsion) {
  Rng r(8);
  std::vector<double> taus;
  for (int k = 0; k < 12; ++k) taus.push_back(std::exp(r.uniform(std::log(0.2), std::log(80.0))));
  std::sort(taus.begin(), taus.end());
  const ZetaSweep s = zeta_sweep(taus);
  for (std::size_t i = 1; i < s.samples.size(); ++i) ASSERT_LT(s.samples[i].zeta, s.samples[i - 1].zeta);
}

TEST(Properties, SphericalCurvesHaveVanishingIdentities) {
  Rng r(9);
  for (int k = 0; k < 4; ++k) {
    EpicycleParams p{1, -3, r.uniform(0.3, 1.2), 0.0};
    p.beta = solve_beta(p.m, p.n, p.alpha).params.beta;
    const Polyline b = to_polyline(sample_epicycle(p, 8193));
    for (const auto& [n, v] : integral_identities(b, {-1, 0, 1})) ASSERT_LT(std::abs(v), 1e-5) << p.alpha << ' ' << n;
    ASSERT_NEAR(check_wong(b).radius, 1.0, 1e-4);
  }
}
