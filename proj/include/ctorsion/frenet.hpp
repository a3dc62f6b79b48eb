#pragma once

#include <functional>

#include "ctorsion/curve.hpp"
#include "ctorsion/frames.hpp"

namespace ctorsion {

/// Curvature and torsion as functions of arclength on [0, length]. Curvature
/// is signed: it may cross zero, and no absolute value is taken.
struct FrenetCoefficients {
  std::function<double(double)> kappa;
  std::function<double(double)> tau;
  double length = 0.0;
};

struct FramedCurveState {
  double s = 0.0;
  Vec3 point{};
  Frame frame{};  // (T, N, B)
};

/// A = (0 -k 0; k 0 -t; 0 t 0), so that F' = F A reproduces
/// T' = k N, N' = -k T + t B, B' = -t N.
Mat3 frenet_generator(double kappa, double tau);

inline constexpr int kMinFrenetSteps = 64;

/// Classical RK4 on gamma' = T, F' = F A(s) with `steps` uniform steps over
/// [init.s, init.s + length], projecting F back onto SO(3) after each step.
/// Returns steps + 1 samples with frames. Throws ValidationError for fewer
/// than 64 steps or any invalid input.
FramedPolyline integrate_frenet(const FrenetCoefficients& coefficients, const FramedCurveState& init, int steps);

/// Change of gauge F -> F g^{-1}.
Frame gauge_transform(const Frame& frame, const Rotation& g);

/// Connection after a change of gauge: -g' g^{-1} + g A g^{-1}.
Mat3 gauge_connection(const Rotation& g, const Mat3& gDerivative, const Mat3& connection);

}  // namespace ctorsion
