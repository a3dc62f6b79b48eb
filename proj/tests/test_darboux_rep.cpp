#include <gtest/gtest.h>

#include "ctorsion/darboux_rep.hpp"
#include "ctorsion/error.hpp"
#include "test_support.hpp"

using namespace ctorsion;
using test::kPi;

TEST(DarbouxRep, ClosedFormOracles) {
  EXPECT_NEAR(closed_form_area(1, -3, kPi / 4, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(closed_form_area(1, -3, kPi / 4, 0.3), 0.6731469828851452, 1e-15);
  EXPECT_NEAR(closed_form_area(2, -3, kPi / 3, 0.3), 1.3471686630459683, 1e-15);
  EXPECT_NEAR(closed_form_area(1, -3, kPi / 4, test::kBeta1), 0.0, 1e-15);
  EXPECT_NEAR(closed_form_area(2, -3, kPi / 3, test::kBeta2), 0.0, 1e-15);
  EXPECT_THROW(closed_form_area(1, 3, 0.5, 0.5), ValidationError);
}

TEST(DarbouxRep, QuadratureMatchesClosedForm) {
  for (auto [m, alpha] : {std::pair{1, kPi / 4}, {2, kPi / 3}}) {
    for (double beta : {0.2, 0.9, 1.4}) {
      const auto I = area_integrals(sample_epicycle({m, -3, alpha, beta}, 1024));
      EXPECT_NEAR(area_normalization(m) * I.Ixy, closed_form_area(m, -3, alpha, beta), 1e-10);
    }
  }
}

TEST(DarbouxRep, SymmetricEpicycleHasEqualIntegrals) {
  const auto I = area_integrals(sample_epicycle({1, -3, 0.8, 0.4}, 1024));
  EXPECT_LT(I.symmetry_residual(), 1e-12);
}

TEST(DarbouxRep, ClosingEpicycleGivesClosedGamma) {
  const SphericalCurve B = sample_epicycle({1, -3, kPi / 4, test::kBeta1}, 4096);
  const ClosureReport r = closure_report(B, 1.0);
  EXPECT_LT(r.closure_gap, 1e-10);
  EXPECT_LT(r.quadrature_tolerance, 1e-8);
  const Polyline g = gamma_from_binormal(B, 1.0);
  EXPECT_EQ(g.size(), B.size());
  EXPECT_TRUE(g.is_closed(1e-10));
  EXPECT_EQ(g.torsion_target, 1.0);
}

TEST(DarbouxRep, NonClosingEpicycleLeavesGap) {
  const ClosureReport r = closure_report(sample_epicycle({1, -3, kPi / 4, 0.3}, 1024), 1.0);
  EXPECT_GT(r.closure_gap, 0.1);
}

TEST(DarbouxRep, GreatCircleGivesStraightLine) {
  // B x B' is constant along a great circle, so gamma is a straight line.
  SphericalCurve B;
  for (int i = 0; i < 65; ++i) {
    const double t = 2 * kPi * i / 64;
    B.t.push_back(t);
    B.points.push_back({std::cos(t), std::sin(t), 0.0});
    B.velocities.push_back({-std::sin(t), std::cos(t), 0.0});
  }
  const Polyline g = gamma_from_binormal(B, 2.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(g.points[i].x, 0.0, 1e-15);
    EXPECT_NEAR(g.points[i].y, 0.0, 1e-15);
    EXPECT_NEAR(g.points[i].z, B.t[i] / 2.0, 1e-12);
  }
}

TEST(DarbouxRep, Validation) {
  EXPECT_THROW(gamma_from_binormal(sample_epicycle({1, -3, 0.5, 0.5}, 64), 0.0), ValidationError);
  SphericalCurve open = sample_epicycle({1, -3, 0.5, 0.5}, 64);
  open.points.pop_back();
  open.t.pop_back();
  open.velocities.pop_back();
  EXPECT_THROW(area_integrals(open), ValidationError);
}
