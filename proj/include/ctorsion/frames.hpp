#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace ctorsion {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

inline constexpr Vec3 e1{1.0, 0.0, 0.0};
inline constexpr Vec3 e2{0.0, 1.0, 0.0};
inline constexpr Vec3 e3{0.0, 0.0, 1.0};

/// 3x3 real matrix, row-major. Used for rotations and for the skew
/// generators that appear in frame equations; "Rotation" documents intent
/// at call sites where the matrix is known to be proper orthogonal.
class Mat3 {
 public:
  constexpr Mat3() = default;
  constexpr explicit Mat3(const std::array<double, 9>& rowMajor) : m_(rowMajor) {}

  static constexpr Mat3 identity() { return Mat3({1, 0, 0, 0, 1, 0, 0, 0, 1}); }
  static constexpr Mat3 zero() { return Mat3(); }
  static constexpr Mat3 from_columns(const Vec3& c1, const Vec3& c2, const Vec3& c3) {
    return Mat3({c1.x, c2.x, c3.x, c1.y, c2.y, c3.y, c1.z, c2.z, c3.z});
  }
  /// Skew matrix [v]x with [v]x w = v x w.
  static constexpr Mat3 skew(const Vec3& v) { return Mat3({0, -v.z, v.y, v.z, 0, -v.x, -v.y, v.x, 0}); }

  constexpr double operator()(std::size_t r, std::size_t c) const { return m_[3 * r + c]; }
  constexpr double& operator()(std::size_t r, std::size_t c) { return m_[3 * r + c]; }

  /// Zero-based column index.
  constexpr Vec3 column(std::size_t c) const { return {m_[c], m_[3 + c], m_[6 + c]}; }
  constexpr Vec3 row(std::size_t r) const { return {m_[3 * r], m_[3 * r + 1], m_[3 * r + 2]}; }

  constexpr Mat3 transpose() const {
    return Mat3({m_[0], m_[3], m_[6], m_[1], m_[4], m_[7], m_[2], m_[5], m_[8]});
  }

  constexpr double det() const {
    return m_[0] * (m_[4] * m_[8] - m_[5] * m_[7]) - m_[1] * (m_[3] * m_[8] - m_[5] * m_[6]) +
           m_[2] * (m_[3] * m_[7] - m_[4] * m_[6]);
  }

  constexpr Mat3& operator+=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) m_[i] += o.m_[i];
    return *this;
  }
  constexpr Mat3& operator-=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) m_[i] -= o.m_[i];
    return *this;
  }
  constexpr Mat3& operator*=(double s) {
    for (auto& v : m_) v *= s;
    return *this;
  }

  friend constexpr Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
  friend constexpr Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
  friend constexpr Mat3 operator*(Mat3 a, double s) { return a *= s; }
  friend constexpr Mat3 operator*(double s, Mat3 a) { return a *= s; }

  friend constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return r;
  }

  friend constexpr Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z, a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
            a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
  }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;

  const std::array<double, 9>& data() const { return m_; }

 private:
  std::array<double, 9> m_{};
};

using Rotation = Mat3;

/// Largest entry of |M^T M - I|.
double orthogonality_error(const Mat3& m);

/// Max-entry distance between two matrices.
double max_abs_diff(const Mat3& a, const Mat3& b);

/// Nearest rotation to a nearly orthogonal matrix (Newton iteration for the
/// polar factor). Used to strip drift from integrated frames.
Mat3 project_to_rotation(const Mat3& m);

/// Moving frame given by its columns. The Frenet frame stores (T, N, B) and
/// the sphere's Darboux frame stores (t, u, nu).
struct Frame {
  Vec3 f1 = e1;
  Vec3 f2 = e2;
  Vec3 f3 = e3;

  static Frame from_matrix(const Mat3& m) { return {m.column(0), m.column(1), m.column(2)}; }
  Mat3 matrix() const { return Mat3::from_columns(f1, f2, f3); }

  /// True when orthonormal and right-handed within tol.
  bool is_valid(double tol = 1e-12) const;
};

// R_t: right-handed rotation by t about the first coordinate axis.
Rotation rot_x(double t);
// S_t: right-handed rotation by t about the third coordinate axis.
Rotation rot_z(double t);

/// Q_t = I + sin t [u]x + (1 - cos t) [u]x^2, rotation by t about the unit
/// axis u. Throws ValidationError when |u| differs from 1 by more than 1e-9;
/// callers should normalize first.
Rotation rodrigues(const Vec3& axis, double t);

/// C = (U, V, W) with U = (1,1,1)/sqrt3, V = (-1,-1,2)/sqrt6, W = U x V.
Frame central_frame();

}  // namespace ctorsion
