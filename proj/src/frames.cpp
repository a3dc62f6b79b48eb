#include "ctorsion/frames.hpp"

#include <algorithm>
#include <sstream>

#include "ctorsion/error.hpp"

namespace ctorsion {

double orthogonality_error(const Mat3& m) {
  const Mat3 d = m.transpose() * m - Mat3::identity();
  double worst = 0.0;
  for (double v : d.data()) worst = std::max(worst, std::abs(v));
  return worst;
}

double max_abs_diff(const Mat3& a, const Mat3& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 9; ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

Mat3 project_to_rotation(const Mat3& m) {
  // X <- X (3I - X^T X) / 2 converges quadratically to the polar factor when
  // X is close to orthogonal; two sweeps reach round-off from O(1e-8) drift.
  Mat3 x = m;
  for (int it = 0; it < 3; ++it) {
    const Mat3 gram = x.transpose() * x;
    if (orthogonality_error(x) < 4e-16) break;
    x = 0.5 * (x * (3.0 * Mat3::identity() - gram));
  }
  return x;
}

bool Frame::is_valid(double tol) const {
  const Mat3 m = matrix();
  return orthogonality_error(m) <= tol && std::abs(m.det() - 1.0) <= tol;
}

Rotation rot_x(double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return Mat3({1, 0, 0, 0, c, -s, 0, s, c});
}

Rotation rot_z(double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return Mat3({c, -s, 0, s, c, 0, 0, 0, 1});
}

Rotation rodrigues(const Vec3& axis, double t) {
  const double len = norm(axis);
  if (!(std::abs(len - 1.0) <= 1e-9)) {
    std::ostringstream msg;
    msg << "rodrigues: rotation axis must be a unit vector (|u| = " << len << "); normalize the axis first";
    throw ValidationError(msg.str());
  }
  const Mat3 k = Mat3::skew(axis);
  return Mat3::identity() + std::sin(t) * k + (1.0 - std::cos(t)) * (k * k);
}

Frame central_frame() {
  const double r3 = 1.0 / std::sqrt(3.0);
  const double r6 = 1.0 / std::sqrt(6.0);
  const double r2 = 1.0 / std::sqrt(2.0);
  return {Vec3{r3, r3, r3}, Vec3{-r6, -r6, 2.0 * r6}, Vec3{r2, -r2, 0.0}};
}

}  // namespace ctorsion
