#include "ctorsion/frenet.hpp"

#include <cmath>
#include <sstream>

#include "ctorsion/error.hpp"

namespace ctorsion {

namespace {

struct State {
  Vec3 point;
  Mat3 frame;
};

State derivative(const FrenetCoefficients& c, double s, const State& y) {
  const double k = c.kappa(s);
  const double t = c.tau(s);
  if (!std::isfinite(k) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << "integrate_frenet: non-finite coefficients at s = " << s;
    throw ValidationError(msg.str());
  }
  return {y.frame.column(0), y.frame * frenet_generator(k, t)};
}

State axpy(const State& y, double h, const State& d) { return {y.point + h * d.point, y.frame + h * d.frame}; }

}  // namespace

Mat3 frenet_generator(double kappa, double tau) { return Mat3({0, -kappa, 0, kappa, 0, -tau, 0, tau, 0}); }

FramedPolyline integrate_frenet(const FrenetCoefficients& c, const FramedCurveState& init, int steps) {
  if (steps < kMinFrenetSteps)
    throw ValidationError("integrate_frenet: need at least " + std::to_string(kMinFrenetSteps) + " steps");
  if (!c.kappa || !c.tau) throw ValidationError("integrate_frenet: missing coefficient functions");
  if (!(c.length > 0.0) || !std::isfinite(c.length)) throw ValidationError("integrate_frenet: length must be positive");
  if (!init.frame.is_valid(1e-9)) throw ValidationError("integrate_frenet: initial frame is not a rotation");

  const double h = c.length / steps;
  FramedPolyline out;
  out.curve.provenance = "frenet";
  out.curve.params.reserve(static_cast<std::size_t>(steps) + 1);
  out.curve.points.reserve(static_cast<std::size_t>(steps) + 1);
  out.frames.reserve(static_cast<std::size_t>(steps) + 1);

  State y{init.point, init.frame.matrix()};
  out.curve.params.push_back(init.s);
  out.curve.points.push_back(y.point);
  out.frames.push_back(init.frame);
  for (int i = 0; i < steps; ++i) {
    const double s = init.s + h * i;
    const State k1 = derivative(c, s, y);
    const State k2 = derivative(c, s + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State k3 = derivative(c, s + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State k4 = derivative(c, s + h, axpy(y, h, k3));
    y.point += (h / 6.0) * (k1.point + 2.0 * k2.point + 2.0 * k3.point + k4.point);
    y.frame += (h / 6.0) * (k1.frame + 2.0 * k2.frame + 2.0 * k3.frame + k4.frame);
    y.frame = project_to_rotation(y.frame);
    out.curve.params.push_back(init.s + h * (i + 1));
    out.curve.points.push_back(y.point);
    out.frames.push_back(Frame::from_matrix(y.frame));
  }
  return out;
}

Frame gauge_transform(const Frame& frame, const Rotation& g) {
  return Frame::from_matrix(frame.matrix() * g.transpose());
}

Mat3 gauge_connection(const Rotation& g, const Mat3& gDerivative, const Mat3& connection) {
  const Mat3 gInv = g.transpose();
  return -1.0 * (gDerivative * gInv) + g * connection * gInv;
}

}  // namespace ctorsion
